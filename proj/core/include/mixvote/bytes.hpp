#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mixvote {

using Bytes = std::vector<std::uint8_t>;

std::string to_hex(const Bytes& data);
Bytes from_hex(std::string_view hex);  // throws transcript-malformed on bad input

// Big integers travel as lowercase big-endian hex with no leading zeros ("0" for zero).
std::string mpz_to_hex(const mpz_class& v);
mpz_class mpz_from_hex(std::string_view hex);

Bytes u64_be(std::uint64_t v);

// Canonical field encoder. Every hashed or signed structure is serialized
// through this so two implementations of the same record agree byte for byte.
// Integers are fixed-width big-endian; variable fields carry a u32 length.
class Enc {
 public:
  Enc& put_u8(std::uint8_t v);
  Enc& put_u32(std::uint32_t v);
  Enc& put_u64(std::uint64_t v);
  Enc& put_bytes(const Bytes& v);
  Enc& put_str(std::string_view v);
  Enc& put_mpz(const mpz_class& v);

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

// Schema-driven decoder matching Enc. Any overrun or trailing garbage throws
// transcript-malformed.
class Dec {
 public:
  explicit Dec(const Bytes& data) : data_(data) {}

  std::uint8_t get_u8();
  std::uint32_t get_u32();
  std::uint64_t get_u64();
  Bytes get_bytes();
  std::string get_str();
  mpz_class get_mpz();

  bool at_end() const { return pos_ == data_.size(); }
  void expect_end() const;

 private:
  const Bytes& data_;
  std::size_t pos_ = 0;

  void need(std::size_t count) const;
};

}  // namespace mixvote
