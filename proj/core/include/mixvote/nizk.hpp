#pragma once

#include <gmpxx.h>

#include "mixvote/group.hpp"

namespace mixvote {

// Non-interactive proof of discrete-log equality: for ciphertext (a, b) and
// claimed plaintext m, proves log_b(a/m) = log_g(y) without revealing x.
//   t1 = g^w, t2 = b^w, e = H("fs-nizk" ‖ statement ‖ t1 ‖ t2) mod q, s = w + e·x mod q
struct EqDlogProof {
  mpz_class t1, t2, e, s;
  bool operator==(const EqDlogProof&) const = default;
};

// w is the prover nonce; drawing it from a deterministic stream makes the
// whole proof replayable. Callers must never reuse a (w, x) pair across
// distinct statements.
EqDlogProof prove_eq_dlog(const GroupParams& gp, const mpz_class& x, const mpz_class& m,
                          const Ciphertext& ct, const mpz_class& w);

bool verify_eq_dlog(const GroupParams& gp, const mpz_class& y, const mpz_class& m,
                    const Ciphertext& ct, const EqDlogProof& proof);

}  // namespace mixvote
