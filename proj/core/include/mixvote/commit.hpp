#pragma once

#include <string_view>

#include "mixvote/bytes.hpp"
#include "mixvote/rng.hpp"

namespace mixvote {

// Hash commitment: digest = H(tag ‖ salt ‖ payload) with a 32-byte salt.
struct Commitment {
  Bytes digest;
  bool operator==(const Commitment&) const = default;
};

Bytes fresh_salt(HashDrbg& rng);

Commitment commit(std::string_view algo, std::string_view tag, const Bytes& payload,
                  const Bytes& salt);
bool open_commitment(std::string_view algo, std::string_view tag, const Commitment& com,
                     const Bytes& payload, const Bytes& salt);

}  // namespace mixvote
