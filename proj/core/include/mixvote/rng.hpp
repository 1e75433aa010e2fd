#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "mixvote/bytes.hpp"

namespace mixvote {

// Deterministic byte stream: block i = H("drbg" ‖ key ‖ u64(i)), with
// key = H("drbg" ‖ parent-key ‖ label) under fork(). Everything random in the
// simulator flows through one of these so a seed fixes the whole transcript.
class HashDrbg {
 public:
  HashDrbg(std::string algo, const Bytes& seed, std::string_view label);

  Bytes bytes(std::size_t count);
  bool bit();                                        // MSB-first within each byte
  std::uint64_t uniform_u64(std::uint64_t bound);    // [0, bound), rejection sampled
  mpz_class uniform_below(const mpz_class& bound);   // [0, bound), rejection sampled
  mpz_class uniform_unit(const mpz_class& bound);    // [1, bound)

  // Independent child stream; safe to draw from parent and child in any order.
  HashDrbg fork(std::string_view label) const;

  const std::string& algo() const { return algo_; }

 private:
  std::string algo_;
  Bytes key_;
  std::uint64_t counter_ = 0;
  Bytes block_;
  std::size_t byte_pos_ = 0;
  int bit_pos_ = 0;  // bits already taken from block_[byte_pos_]

  void refill();
  std::uint8_t next_byte();
};

}  // namespace mixvote
