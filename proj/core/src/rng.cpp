#include "mixvote/rng.hpp"

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

HashDrbg::HashDrbg(std::string algo, const Bytes& seed, std::string_view label)
    : algo_(std::move(algo)) {
  Enc enc;
  enc.put_bytes(seed);
  enc.put_str(label);
  key_ = tagged_hash(algo_, tag::drbg, enc.bytes());
}

HashDrbg HashDrbg::fork(std::string_view label) const {
  return HashDrbg(algo_, key_, label);
}

void HashDrbg::refill() {
  Enc enc;
  enc.put_bytes(key_);
  enc.put_u64(counter_++);
  block_ = tagged_hash(algo_, tag::drbg, enc.bytes());
  byte_pos_ = 0;
  bit_pos_ = 0;
}

std::uint8_t HashDrbg::next_byte() {
  if (bit_pos_ != 0) {  // discard the partially consumed byte
    ++byte_pos_;
    bit_pos_ = 0;
  }
  if (byte_pos_ >= block_.size()) refill();
  return block_[byte_pos_++];
}

Bytes HashDrbg::bytes(std::size_t count) {
  Bytes out;
  out.reserve(count);
  while (out.size() < count) out.push_back(next_byte());
  return out;
}

bool HashDrbg::bit() {
  if (byte_pos_ >= block_.size()) refill();
  std::uint8_t cur = block_[byte_pos_];
  bool v = (cur >> (7 - bit_pos_)) & 1;
  if (++bit_pos_ == 8) {
    bit_pos_ = 0;
    ++byte_pos_;
  }
  return v;
}

std::uint64_t HashDrbg::uniform_u64(std::uint64_t bound) {
  if (bound == 0) throw Error(errc::config_error, "uniform_u64 bound must be positive");
  if (bound == 1) return 0;
  std::uint64_t max = bound - 1;
  int bits = 0;
  for (std::uint64_t v = max; v != 0; v >>= 1) ++bits;
  for (;;) {
    std::uint64_t v = 0;
    for (int i = 0; i < (bits + 7) / 8; ++i) v = (v << 8) | next_byte();
    v &= bits == 64 ? ~0ull : ((1ull << bits) - 1);
    if (v < bound) return v;
  }
}

mpz_class HashDrbg::uniform_below(const mpz_class& bound) {
  if (bound <= 0) throw Error(errc::config_error, "uniform_below bound must be positive");
  if (bound == 1) return 0;
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t nbytes = (bits + 7) / 8;
  unsigned top_mask = bits % 8 == 0 ? 0xff : static_cast<unsigned>((1u << (bits % 8)) - 1);
  for (;;) {
    Bytes buf = bytes(nbytes);
    buf[0] = static_cast<std::uint8_t>(buf[0] & top_mask);
    mpz_class v;
    mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (v < bound) return v;
  }
}

mpz_class HashDrbg::uniform_unit(const mpz_class& bound) {
  if (bound <= 1) throw Error(errc::config_error, "uniform_unit bound must exceed 1");
  return uniform_below(bound - 1) + 1;
}

}  // namespace mixvote
