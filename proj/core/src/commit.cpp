#include "mixvote/commit.hpp"

#include "mixvote/hash.hpp"

namespace mixvote {

Bytes fresh_salt(HashDrbg& rng) {
  return rng.bytes(32);
}

Commitment commit(std::string_view algo, std::string_view tag, const Bytes& payload,
                  const Bytes& salt) {
  Enc enc;
  enc.put_bytes(salt);
  enc.put_bytes(payload);
  return {tagged_hash(algo, tag, enc.bytes())};
}

bool open_commitment(std::string_view algo, std::string_view tag, const Commitment& com,
                     const Bytes& payload, const Bytes& salt) {
  return commit(algo, tag, payload, salt).digest == com.digest;
}

}  // namespace mixvote
