#include "mixvote/mixnet.hpp"

#include "mixvote/errors.hpp"

namespace mixvote {

MixServerSecret make_server_secret(const GroupParams& gp, std::uint32_t index,
                                   std::uint32_t n, HashDrbg& rng) {
  MixServerSecret s;
  s.index = index;
  s.enc_key = keygen(gp, rng);
  s.perm.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) s.perm[j] = j;
  for (std::uint32_t j = n; j > 1; --j) {  // Fisher-Yates over the slot array
    std::uint32_t r = static_cast<std::uint32_t>(rng.uniform_u64(j));
    std::swap(s.perm[j - 1], s.perm[r]);
  }
  s.rotations.resize(n);
  for (std::uint32_t j = 0; j < n; ++j)
    s.rotations[j] = static_cast<std::uint32_t>(rng.uniform_u64(gp.c));
  s.k_rec.resize(n);
  return s;
}

OnionPair build_initial_pair(const GroupParams& gp, const mpz_class& joint_key,
                             std::uint32_t id, std::uint32_t n, const mpz_class& k_id) {
  if (id >= n) throw Error(errc::invalid_message, "identifier out of range");
  OnionPair pair;
  pair.id_onion = encrypt(gp, joint_key, encode_id(gp, id), k_id);
  pair.rot_onion = {1, 1};  // h^0 with zero randomness; servers layer it up
  return pair;
}

Ciphertext transform_decrypting(const GroupParams& gp, const mpz_class& x,
                                const mpz_class& remaining, const Ciphertext& in,
                                const mpz_class& k) {
  Ciphertext out;
  // a' = a·R^k / b^x
  out.a = mod_mul(in.a, mod_pow(remaining, k, gp.p), gp.p);
  out.a = mod_mul(out.a, mod_inv(mod_pow(in.b, x, gp.p), gp.p), gp.p);
  out.b = mod_mul(in.b, mod_pow(gp.g, k, gp.p), gp.p);
  return out;
}

Ciphertext transform_computing(const GroupParams& gp, const mpz_class& x,
                               const mpz_class& remaining, const Ciphertext& in,
                               const mpz_class& k, std::int64_t l) {
  Ciphertext out = transform_decrypting(gp, x, remaining, in, k);
  std::int64_t c = gp.c;
  std::int64_t lm = ((l % c) + c) % c;  // h^l with negative l folded mod c
  out.a = mod_mul(out.a, mod_pow(gp.h, mpz_class(static_cast<unsigned long>(lm)), gp.p), gp.p);
  return out;
}

PairList server_process_creation(const GroupParams& gp, MixServerSecret& secret,
                                 const mpz_class& remaining, const PairList& in,
                                 HashDrbg& rng) {
  std::uint32_t n = static_cast<std::uint32_t>(secret.perm.size());
  if (in.slots.size() != n) throw Error(errc::malformed_list, "creation list size mismatch");
  secret.k_id.assign(n, 0);
  secret.k_rot.assign(n, 0);
  PairList out;
  out.stage = in.stage + 1;
  out.slots.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    mpz_class k_id = rng.uniform_unit(gp.q);
    mpz_class k_rot = rng.uniform_unit(gp.q);
    secret.k_id[j] = k_id;
    secret.k_rot[j] = k_rot;
    OnionPair& dst = out.slots[secret.perm[j]];
    dst.id_onion = transform_decrypting(gp, secret.enc_key.x, remaining, in.slots[j].id_onion, k_id);
    dst.rot_onion = transform_computing(gp, secret.enc_key.x, remaining, in.slots[j].rot_onion,
                                        k_rot, secret.rotations[j]);
  }
  return out;
}

VoteList server_process_recovery(const GroupParams& gp, MixServerSecret& secret,
                                 const mpz_class& remaining, const VoteList& in,
                                 HashDrbg& rng) {
  std::uint32_t n = static_cast<std::uint32_t>(secret.perm.size());
  if (in.slots.size() != n) throw Error(errc::malformed_list, "recovery list size mismatch");
  secret.k_rec.assign(n, std::nullopt);
  VoteList out;
  out.stage = in.stage + 1;
  out.slots.resize(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    if (!in.slots[j]) continue;
    mpz_class k = rng.uniform_unit(gp.q);
    secret.k_rec[j] = k;
    // The offset added on the way out is taken back on the way in.
    out.slots[secret.perm[j]] = transform_computing(
        gp, secret.enc_key.x, remaining, *in.slots[j], k,
        -static_cast<std::int64_t>(secret.rotations[j]));
  }
  return out;
}

Ciphertext build_vote_onion(const GroupParams& gp, const mpz_class& mix_joint_key,
                            std::uint32_t ev, const mpz_class& k) {
  if (ev >= gp.c) throw Error(errc::invalid_message, "marked position out of range");
  return exp_encrypt(gp, mix_joint_key, ev, k);
}

OpenedPair ec2_open_pair(const GroupParams& gp, const KeyPair& key, const OnionPair& pair,
                         const DecodeTable& table, HashDrbg& nonce_rng) {
  mpz_class id_plain = decrypt(gp, key.x, pair.id_onion);
  mpz_class rot_plain = decrypt(gp, key.x, pair.rot_onion);
  auto id = decode_id(table, id_plain);
  auto sh = decode_h_power(table, rot_plain);
  if (!id) throw Error(errc::decode_failure, "identifier outside table");
  if (!sh) throw Error(errc::decode_failure, "rotation outside table");
  OpenedPair opened;
  opened.id = *id;
  opened.sh = *sh;
  opened.id_proof = prove_eq_dlog(gp, key.x, id_plain, pair.id_onion,
                                  nonce_rng.uniform_unit(gp.q));
  opened.rot_proof = prove_eq_dlog(gp, key.x, rot_plain, pair.rot_onion,
                                   nonce_rng.uniform_unit(gp.q));
  return opened;
}

}  // namespace mixvote
