#include "mixvote/nizk.hpp"

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

static mpz_class challenge(const GroupParams& gp, const mpz_class& y, const mpz_class& m,
                           const Ciphertext& ct, const mpz_class& t1, const mpz_class& t2) {
  Enc enc;
  enc.put_mpz(gp.p);
  enc.put_mpz(gp.g);
  enc.put_mpz(y);
  enc.put_mpz(m);
  enc.put_mpz(ct.a);
  enc.put_mpz(ct.b);
  enc.put_mpz(t1);
  enc.put_mpz(t2);
  return hash_to_mod(gp.hash_algo, tag::fs_nizk, enc.bytes(), gp.q);
}

EqDlogProof prove_eq_dlog(const GroupParams& gp, const mpz_class& x, const mpz_class& m,
                          const Ciphertext& ct, const mpz_class& w) {
  if (w <= 0 || w >= gp.q) throw Error(errc::invalid_message, "prover nonce outside [1,q)");
  mpz_class y = mod_pow(gp.g, x, gp.p);
  EqDlogProof pf;
  pf.t1 = mod_pow(gp.g, w, gp.p);
  pf.t2 = mod_pow(ct.b, w, gp.p);
  pf.e = challenge(gp, y, m, ct, pf.t1, pf.t2);
  pf.s = (w + pf.e * x) % gp.q;
  return pf;
}

bool verify_eq_dlog(const GroupParams& gp, const mpz_class& y, const mpz_class& m,
                    const Ciphertext& ct, const EqDlogProof& proof) {
  auto in_group = [&](const mpz_class& v) { return v > 0 && v < gp.p; };
  if (!in_group(y) || !in_group(m) || !in_group(ct.a) || !in_group(ct.b)) return false;
  if (!in_group(proof.t1) || !in_group(proof.t2)) return false;
  if (proof.s < 0 || proof.s >= gp.q || proof.e < 0 || proof.e >= gp.q) return false;
  if (proof.e != challenge(gp, y, m, ct, proof.t1, proof.t2)) return false;
  // g^s = t1·y^e  and  b^s = t2·(a/m)^e
  if (mod_pow(gp.g, proof.s, gp.p) != mod_mul(proof.t1, mod_pow(y, proof.e, gp.p), gp.p))
    return false;
  mpz_class am = mod_mul(ct.a, mod_inv(m, gp.p), gp.p);
  return mod_pow(ct.b, proof.s, gp.p) ==
         mod_mul(proof.t2, mod_pow(am, proof.e, gp.p), gp.p);
}

}  // namespace mixvote
