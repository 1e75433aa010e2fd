#pragma once

#include <gmpxx.h>

#include "mixvote/bytes.hpp"
#include "mixvote/group.hpp"

namespace mixvote {

// Schnorr signature over the q-order subgroup. The nonce is derived from
// (x, msg), so signing is deterministic and transcripts replay byte-exact.
struct Signature {
  mpz_class e, s;
  bool operator==(const Signature&) const = default;
};

Signature sign_message(const GroupParams& gp, const KeyPair& key, const Bytes& msg);
bool verify_signature(const GroupParams& gp, const mpz_class& y, const Bytes& msg,
                      const Signature& sig);

}  // namespace mixvote
