#include "mixvote/bytes.hpp"

#include <cstring>

#include "mixvote/errors.hpp"

namespace mixvote {

static const char* kHexDigits = "0123456789abcdef";

std::string to_hex(const Bytes& data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

static int hex_nibble(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0)
    throw Error(errc::transcript_malformed, "odd-length hex string");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_nibble(hex[i]);
    int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0)
      throw Error(errc::transcript_malformed, "non-hex character");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

std::string mpz_to_hex(const mpz_class& v) {
  if (sgn(v) < 0)
    throw Error(errc::transcript_malformed, "negative integer not encodable");
  return v.get_str(16);  // gmp emits lowercase, no leading zeros, "0" for zero
}

mpz_class mpz_from_hex(std::string_view hex) {
  if (hex.empty())
    throw Error(errc::transcript_malformed, "empty integer field");
  for (char ch : hex)
    if (hex_nibble(ch) < 0)
      throw Error(errc::transcript_malformed, "non-hex digit in integer");
  if (hex.size() > 1 && hex[0] == '0')
    throw Error(errc::transcript_malformed, "leading zero in integer");
  mpz_class v;
  if (mpz_set_str(v.get_mpz_t(), std::string(hex).c_str(), 16) != 0)
    throw Error(errc::transcript_malformed, "unparsable integer");
  return v;
}

Bytes u64_be(std::uint64_t v) {
  Bytes out(8);
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

Enc& Enc::put_u8(std::uint8_t v) {
  out_.push_back(v);
  return *this;
}

Enc& Enc::put_u32(std::uint32_t v) {
  for (int i = 3; i >= 0; --i)
    out_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  return *this;
}

Enc& Enc::put_u64(std::uint64_t v) {
  for (int i = 7; i >= 0; --i)
    out_.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
  return *this;
}

Enc& Enc::put_bytes(const Bytes& v) {
  put_u32(static_cast<std::uint32_t>(v.size()));
  out_.insert(out_.end(), v.begin(), v.end());
  return *this;
}

Enc& Enc::put_str(std::string_view v) {
  put_u32(static_cast<std::uint32_t>(v.size()));
  out_.insert(out_.end(), v.begin(), v.end());
  return *this;
}

Enc& Enc::put_mpz(const mpz_class& v) {
  return put_str(mpz_to_hex(v));
}

void Dec::need(std::size_t count) const {
  if (pos_ + count > data_.size())
    throw Error(errc::transcript_malformed, "truncated record");
}

std::uint8_t Dec::get_u8() {
  need(1);
  return data_[pos_++];
}

std::uint32_t Dec::get_u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

std::uint64_t Dec::get_u64() {
  need(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
  return v;
}

Bytes Dec::get_bytes() {
  std::uint32_t len = get_u32();
  need(len);
  Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
            data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
  pos_ += len;
  return out;
}

std::string Dec::get_str() {
  std::uint32_t len = get_u32();
  need(len);
  std::string out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
  pos_ += len;
  return out;
}

mpz_class Dec::get_mpz() {
  return mpz_from_hex(get_str());
}

void Dec::expect_end() const {
  if (!at_end())
    throw Error(errc::transcript_malformed, "trailing bytes in record");
}

}  // namespace mixvote
