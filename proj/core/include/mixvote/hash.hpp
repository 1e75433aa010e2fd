#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mixvote/bytes.hpp"

namespace mixvote {

// Domain-separation tags. Exactly one tag per artifact kind so a digest from
// one context can never be replayed in another.
namespace tag {
inline constexpr std::string_view perm = "perm";        // permutation-entry commitments
inline constexpr std::string_view lval = "lval";        // rotation-value commitments
inline constexpr std::string_view rnd = "rnd";          // audit-randomness commitments
inline constexpr std::string_view fs_nizk = "fs-nizk";  // proof challenges
inline constexpr std::string_view fs_sig = "fs-sig";    // signature challenges
inline constexpr std::string_view chal = "chal";        // audit-challenge derivation
inline constexpr std::string_view board = "bb";         // board content hashing
inline constexpr std::string_view drbg = "drbg";        // deterministic random streams
inline constexpr std::string_view code = "vcode";       // voter verification codes
}  // namespace tag

bool hash_algo_available(std::string_view algo);  // "sha256" or "sha3-256"

// Streaming digest over the named algorithm; finish() yields 32 bytes.
class Hasher {
 public:
  explicit Hasher(std::string_view algo);
  Hasher(const Hasher&) = delete;
  Hasher& operator=(const Hasher&) = delete;
  ~Hasher();

  Hasher& update(const Bytes& data);
  Hasher& update(std::string_view data);
  Bytes finish();

 private:
  void* ctx_ = nullptr;
};

// H(tag ‖ data); the tag is length-prefixed so distinct tags can never collide
// by concatenation.
Bytes tagged_hash(std::string_view algo, std::string_view tag, const Bytes& data);

// tagged_hash reduced into [0, mod). Digest blocks are drawn counter-mode until
// one falls below the rejection bound, so the result is unbiased.
mpz_class hash_to_mod(std::string_view algo, std::string_view tag, const Bytes& data,
                      const mpz_class& mod);

}  // namespace mixvote
