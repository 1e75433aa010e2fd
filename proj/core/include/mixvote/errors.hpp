#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mixvote {

// Failure with a stable machine-readable code plus a human detail string.
// The code is what CLI output and tests key on; the detail is free-form.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* parameter_search_exhausted = "parameter-search-exhausted";
inline constexpr const char* invalid_message = "invalid-message";
inline constexpr const char* decode_failure = "decode-failure";
inline constexpr const char* malformed_list = "malformed-list";
inline constexpr const char* randomness_abort = "randomness-abort";
inline constexpr const char* config_error = "config-error";
inline constexpr const char* rejected_post = "rejected-post";
inline constexpr const char* unknown_actor = "unknown-actor";
inline constexpr const char* ballot_corrupt = "ballot-corrupt";
inline constexpr const char* supply_exhausted = "supply-exhausted";
inline constexpr const char* transcript_malformed = "transcript-malformed";
inline constexpr const char* over_reveal = "over-reveal";
inline constexpr const char* phase_violation = "phase-violation";
inline constexpr const char* double_cast = "double-cast";
inline constexpr const char* double_print = "double-print";
inline constexpr const char* unknown_strategy = "unknown-strategy";
}  // namespace errc

}  // namespace mixvote
