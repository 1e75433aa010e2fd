#include "mixvote/hash.hpp"

#include <openssl/evp.h>

#include "mixvote/errors.hpp"

namespace mixvote {

static const EVP_MD* lookup_md(std::string_view algo) {
  if (algo == "sha256") return EVP_get_digestbyname("SHA256");
  if (algo == "sha3-256") return EVP_get_digestbyname("SHA3-256");
  return nullptr;
}

bool hash_algo_available(std::string_view algo) {
  return lookup_md(algo) != nullptr;
}

Hasher::Hasher(std::string_view algo) {
  const EVP_MD* md = lookup_md(algo);
  if (!md) throw Error(errc::config_error, "unknown hash algorithm: " + std::string(algo));
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, md, nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(errc::config_error, "digest init failed");
  }
  ctx_ = ctx;
}

Hasher::~Hasher() {
  if (ctx_) EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

Hasher& Hasher::update(const Bytes& data) {
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
  return *this;
}

Hasher& Hasher::update(std::string_view data) {
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
  return *this;
}

Bytes Hasher::finish() {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned len = 0;
  EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &len);
  out.resize(len);
  return out;
}

Bytes tagged_hash(std::string_view algo, std::string_view tag, const Bytes& data) {
  Enc enc;
  enc.put_str(tag);
  enc.put_bytes(data);
  Hasher h(algo);
  h.update(enc.bytes());
  return h.finish();
}

mpz_class hash_to_mod(std::string_view algo, std::string_view tag, const Bytes& data,
                      const mpz_class& mod) {
  if (mod <= 1) throw Error(errc::config_error, "hash_to_mod needs modulus > 1");
  std::size_t bits = mpz_sizeinbase(mod.get_mpz_t(), 2);
  std::size_t nbytes = (bits + 7) / 8;
  unsigned top_mask = bits % 8 == 0 ? 0xff : static_cast<unsigned>((1u << (bits % 8)) - 1);
  for (std::uint32_t ctr = 0;; ++ctr) {
    Bytes block;
    for (std::uint32_t i = 0; block.size() < nbytes; ++i) {
      Enc enc;
      enc.put_str(tag);
      enc.put_bytes(data);
      enc.put_u32(ctr);
      enc.put_u32(i);
      Hasher h(algo);
      h.update(enc.bytes());
      Bytes d = h.finish();
      block.insert(block.end(), d.begin(), d.end());
    }
    block.resize(nbytes);
    block[0] = static_cast<std::uint8_t>(block[0] & top_mask);
    mpz_class v;
    mpz_import(v.get_mpz_t(), block.size(), 1, 1, 1, 0, block.data());
    if (v < mod) return v;
  }
}

}  // namespace mixvote
