#include "mixvote/sign.hpp"

#include "mixvote/hash.hpp"

namespace mixvote {

static mpz_class sig_challenge(const GroupParams& gp, const mpz_class& y, const mpz_class& t,
                               const Bytes& msg) {
  Enc enc;
  enc.put_mpz(gp.p);
  enc.put_mpz(gp.g);
  enc.put_mpz(y);
  enc.put_mpz(t);
  enc.put_bytes(msg);
  return hash_to_mod(gp.hash_algo, tag::fs_sig, enc.bytes(), gp.q);
}

Signature sign_message(const GroupParams& gp, const KeyPair& key, const Bytes& msg) {
  Enc nonce_in;
  nonce_in.put_mpz(key.x);
  nonce_in.put_bytes(msg);
  mpz_class w =
      hash_to_mod(gp.hash_algo, "fs-sig-nonce", nonce_in.bytes(), gp.q - 1) + 1;
  mpz_class t = mod_pow(gp.g, w, gp.p);
  Signature sig;
  sig.e = sig_challenge(gp, key.y, t, msg);
  sig.s = (w + sig.e * key.x) % gp.q;
  return sig;
}

bool verify_signature(const GroupParams& gp, const mpz_class& y, const Bytes& msg,
                      const Signature& sig) {
  if (y <= 0 || y >= gp.p) return false;
  if (sig.e < 0 || sig.e >= gp.q || sig.s < 0 || sig.s >= gp.q) return false;
  // t = g^s·y^{-e}; accept iff e = H(..., t, msg)
  mpz_class t = mod_mul(mod_pow(gp.g, sig.s, gp.p),
                        mod_inv(mod_pow(y, sig.e, gp.p), gp.p), gp.p);
  return sig.e == sig_challenge(gp, y, t, msg);
}

}  // namespace mixvote
