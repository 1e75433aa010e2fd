#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mixvote/commit.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/nizk.hpp"

namespace mixvote {

// ---------------------------------------------------------------------------
// Audit randomness
// ---------------------------------------------------------------------------

// Joint challenge seed r = r_1 ⊕ … ⊕ r_λ, each contribution bound by a prior
// commitment so nobody can steer the result.
Bytes xor_randomness(const std::vector<Bytes>& contributions);

// q = H("chal" ‖ r ‖ board-content-hash). Freezing the board hash into the
// challenge pins every commitment that must precede the reveal.
Bytes derive_challenge(const std::string& algo, const Bytes& r, const Bytes& board_hash);

// Per-pair / per-server subchallenges q_i = H("chal" ‖ q ‖ i).
Bytes subchallenge(const std::string& algo, const Bytes& q, std::uint32_t index);

// ---------------------------------------------------------------------------
// Reveal plans
// ---------------------------------------------------------------------------
// Servers are grouped into pairs (A1,A2), (A3,A4), … and pairs into 4-tuples.
// The middle slots of pair t are the outputs of its left server (= inputs of
// its right server).

enum : std::uint8_t { kRevealLeft = 0, kRevealRight = 1, kRevealNone = 2 };

// Stage 1 (after ballot creation): per middle slot of every pair, two
// challenge bits pick: 00 -> reveal left edge, 01 -> reveal right edge,
// 1x -> reveal neither. A quarter of each server's transitions opens and no
// middle slot ever shows both incident edges.
struct Stage1Plan {
  std::uint32_t n = 0;
  std::uint32_t lambda = 0;
  std::vector<std::vector<std::uint8_t>> decisions;  // [pair][middle slot]
  bool operator==(const Stage1Plan&) const = default;
};

// Stage 2 (after vote recovery): each 4-tuple selects one pair to finish the
// classic half-open: every middle slot still undecided gets exactly one side.
// Each server of the other pair opens its own still-hidden transitions
// independently, one coin per slot. Transitions from stage 1 re-open with
// their recovery randomizers, so both passes of every audited edge are shown.
struct Stage2Plan {
  std::uint32_t n = 0;
  std::uint32_t lambda = 0;
  std::vector<std::uint8_t> completing;               // [tuple] -> 0|1 (pair within tuple)
  std::vector<std::vector<std::uint8_t>> completion;  // [pair][middle slot]
  std::vector<std::vector<std::uint8_t>> independent; // [server-1][input slot] -> 0|1
  bool operator==(const Stage2Plan&) const = default;
};

Stage1Plan plan_stage1(const std::string& algo, std::uint32_t n, std::uint32_t lambda,
                       const Bytes& q);
Stage2Plan plan_stage2(const std::string& algo, std::uint32_t n, std::uint32_t lambda,
                       const Bytes& q, const Stage1Plan& stage1);

Bytes encode_stage1_plan(const Stage1Plan& plan);
Stage1Plan decode_stage1_plan(const Bytes& data);
Bytes encode_stage2_plan(const Stage2Plan& plan);
Stage2Plan decode_stage2_plan(const Bytes& data);

// What one server owes for one stage: transitions named by its own input slot
// and transitions named by the output slot they land on.
struct RevealSet {
  std::set<std::uint32_t> inputs;
  std::set<std::uint32_t> outputs;
  bool empty() const { return inputs.empty() && outputs.empty(); }
};

// New edges a server must open in each stage. Stage 2 excludes what stage 1
// already covered (`stage1_input_slots` = input slots of the transitions that
// server actually opened in stage 1); those re-open separately with their
// recovery randomizers.
RevealSet stage1_reveals(const Stage1Plan& plan, std::uint32_t server);
RevealSet stage2_new_reveals(const Stage2Plan& plan, const Stage1Plan& stage1,
                             std::uint32_t server,
                             const std::set<std::uint32_t>& stage1_input_slots);

// ---------------------------------------------------------------------------
// Validators
// ---------------------------------------------------------------------------

// Everything needed to publicly re-execute one server transition: openings of
// the committed permutation entry and rotation value, the randomizers, and a
// decryption share b^x per onion with a proof it matches the server's key.
struct Validator {
  std::uint32_t server = 0;  // 1-based cascade position
  std::uint32_t input_slot = 0;
  std::uint32_t perm_value = 0;
  Bytes perm_salt;
  std::uint32_t l_value = 0;
  Bytes l_salt;

  bool has_creation = false;
  mpz_class k_id, k_rot;
  mpz_class share_id, share_rot;
  EqDlogProof proof_id, proof_rot;

  bool has_recovery = false;
  bool rec_occupied = false;
  mpz_class k_rec, share_rec;
  EqDlogProof proof_rec;

  bool operator==(const Validator&) const = default;
};

Bytes encode_validator(const Validator& v);
Validator decode_validator(const Bytes& data);
void enc_validator(Enc& enc, const Validator& v);
Validator dec_validator(Dec& dec);

// Commitment payloads for per-slot permutation entries and rotation values.
Bytes perm_entry_payload(std::uint32_t server, std::uint32_t slot, std::uint32_t value);
Bytes rot_entry_payload(std::uint32_t server, std::uint32_t slot, std::uint32_t value);
Bytes full_perm_payload(const std::vector<std::uint32_t>& perm);

// Build the validator for one input slot. `allowed` is the server's reveal
// obligation for the stage; anything outside it throws over-reveal, so a
// buggy or coerced caller cannot leak extra transitions.
Validator make_validator(const GroupParams& gp, const MixServerSecret& secret,
                         std::uint32_t input_slot, bool include_creation,
                         bool include_recovery, const PairList* creation_in,
                         const VoteList* recovery_in, const RevealSet& allowed,
                         HashDrbg& nonce_rng);

// Public data an edge check runs against.
struct EdgeContext {
  const GroupParams* gp = nullptr;
  mpz_class server_pub;           // y_i
  mpz_class remaining_creation;   // Π_{j>i} y_j · y_dec
  mpz_class remaining_recovery;   // Π_{j>i} y_j
  const PairList* creation_in = nullptr;
  const PairList* creation_out = nullptr;
  const VoteList* recovery_in = nullptr;
  const VoteList* recovery_out = nullptr;
  const std::vector<Bytes>* perm_digests = nullptr;  // per input slot
  const std::vector<Bytes>* rot_digests = nullptr;
};

// Re-execute the opened transition against the published lists. True iff the
// commitment openings, the decryption-share proofs, and the recomputed output
// slots all match.
bool verify_edge(const EdgeContext& ctx, const Validator& v);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct AuditReport {
  bool overall = true;
  std::vector<Check> checks;
  std::vector<std::string> complaints;  // complaint codes seen on the board
};

}  // namespace mixvote
