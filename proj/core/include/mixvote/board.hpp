#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/payload.hpp"
#include "mixvote/sign.hpp"

namespace mixvote {

// Protocol phases in board order. Posts may never step backwards.
enum class Phase : std::uint32_t {
  setup = 0,
  creation = 1,
  challenge1 = 2,
  reveal1 = 3,
  distribution = 4,
  casting = 5,
  recovery = 6,
  challenge2 = 7,
  reveal2 = 8,
  tally = 9,
  trace = 10,
};

const char* phase_name(Phase phase);

struct BBEntry {
  std::uint64_t seq = 0;
  std::string author;
  Phase phase = Phase::setup;
  Bytes payload;
  Signature sig;
};

// Append-only signed sequence of entries. The board enforces only transport
// rules — author registration, signatures, phase monotonicity; semantic
// validation of payloads is the verifier's job.
class Board {
 public:
  explicit Board(GroupParams gp);

  // Content an author signs: everything in the entry except the signature.
  static Bytes signing_bytes(std::uint64_t seq, const std::string& author, Phase phase,
                             const Bytes& payload);

  std::uint64_t next_seq() const { return entries_.size(); }

  // Appends after checking the signature (self-signed "key" entries register
  // new authors). Throws rejected-post / unknown-actor / phase-violation.
  std::uint64_t post(const std::string& author, Phase phase, const Bytes& payload,
                     const Signature& sig);
  std::uint64_t sign_and_post(const std::string& author, Phase phase, const Bytes& payload,
                              const KeyPair& key);

  const std::vector<BBEntry>& entries() const { return entries_; }
  const GroupParams& params() const { return gp_; }
  Phase phase() const { return phase_; }
  const std::map<std::string, mpz_class>& signers() const { return signers_; }

  // Chained digest over entries [0, up_to]: the challenge freeze point.
  Bytes content_hash(std::uint64_t up_to) const;

  // Full transport re-check (signatures, chaining, phases) from scratch.
  bool verify_board() const;

 private:
  GroupParams gp_;
  std::vector<BBEntry> entries_;
  std::vector<Bytes> chain_;
  std::map<std::string, mpz_class> signers_;
  Phase phase_ = Phase::setup;
};

// A complete election record: the group, the announced dimensions, and every
// board entry. This is the unit the verifier consumes and files carry.
struct Transcript {
  GroupParams gp;
  std::uint32_t n = 0;
  std::uint32_t lambda = 0;
  std::vector<BBEntry> entries;
};

// Line-delimited text form. Header lines carry the group and dimensions; each
// entry line is seq, author, phase, payload hex, and signature, tab-separated.
// import(export(t)) reproduces the transcript bit for bit.
std::string export_transcript(const Transcript& transcript);
Transcript import_transcript(const std::string& text);  // throws transcript-malformed

// Replays a transcript through a fresh Board, re-running all transport checks.
Board replay_transcript(const Transcript& transcript);

}  // namespace mixvote
