#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mixvote/board.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/payload.hpp"
#include "mixvote/rpc.hpp"

namespace mixvote {

struct ElectionConfig {
  std::string name = "election";
  std::uint32_t n = 16;      // paper ballots / mixnet width
  std::uint32_t c = 3;       // candidates
  std::uint32_t lambda = 4;  // mix servers, a multiple of four
  unsigned q_bits = 64;      // subgroup size; p is about twice this
  std::uint64_t seed = 1;
  std::vector<std::string> voters;
  std::vector<std::uint32_t> votes;  // intended candidate per voter; drawn from seed if empty
  std::uint32_t test_casts = 0;      // this many voters also cast their audited ballot
  bool codes = true;                 // print verification code sheets
  std::string hash_algo = "sha256";
};

void validate_config(const ElectionConfig& cfg);  // throws config-error

// What a voter physically holds: the identifier, the rotation offset, the
// final creation slot it came from, and (optionally) a confirmation code the
// cast response must echo.
struct Ballot {
  std::uint32_t id = 0;
  std::uint32_t sh = 0;
  std::uint32_t output_slot = 0;
  std::string code;
};

struct CastRecord {
  std::uint64_t seq = 0;       // board entry
  std::uint32_t position = 0;  // input-list slot
  std::string voter;
  std::uint32_t id = 0;
  std::uint32_t ev = 0;
};

struct Tally {
  std::vector<std::uint64_t> counts;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counted;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> test_hits;
  std::vector<std::uint32_t> undecodable;
};

struct TraceResult {
  std::uint32_t final_slot = 0;
  std::vector<std::uint32_t> path;  // slot before server 1, …, slot after server λ
  std::uint64_t cast_seq = 0;
  std::string voter;
};

// ev = v + sh mod c: the position the voter marks on the rotated ballot.
std::uint32_t encrypt_vote(std::uint32_t v, std::uint32_t sh, std::uint32_t c);

// Interception points for fault injection. Every hook sees (and may mutate)
// exactly what is about to reach the bulletin board.
struct ServerPassCtx {
  const GroupParams& gp;
  std::uint32_t server;     // 1-based
  const mpz_class& remaining;
  MixServerSecret& secret;
  HashDrbg& rng;
};

struct Hooks {
  std::function<void(ServerPassCtx&, const PairList& in, PairList& out)> creation_output;
  std::function<void(ServerPassCtx&, const VoteList& in, VoteList& out)> recovery_output;
  std::function<void(std::uint32_t server, std::vector<Validator>&)> validators1;
  std::function<void(std::uint32_t server, std::vector<Validator>&)> validators2;
  std::function<void(AuditPayload&)> audit_entry;
  std::function<void(std::uint32_t& id, std::uint32_t& ev)> cast_channel;  // voter -> EC1 wire
};

// Drives one election end to end over an in-memory bulletin board. All
// randomness stems from the config seed, so a rerun reproduces the transcript
// byte for byte.
class Election {
 public:
  explicit Election(ElectionConfig cfg, Hooks hooks = {});

  void run();  // all phases below, in order

  void setup();            // params, keys, permutation and rotation commitments
  void create_ballots();   // onion pairs through the cascade
  void audit_stage1();     // joint randomness, challenge, quarter reveal
  void distribute();       // print pairs, voters audit one each
  void cast_votes();       // votes in, cast records out
  void recover_votes();    // vote onions back through the cascade
  void audit_stage2();     // completion reveal plus independent openings
  void publish_tally();    // decode final list, post counts
  void trace_invalid();    // walk test hits back to their cast records

  // Granular steps, exposed for tests and driven by the phases above.
  std::pair<Ballot, Ballot> offer_ballot_pair();
  std::optional<Ballot> print_ballot(std::uint32_t output_slot);
  void audit_ballot(std::uint32_t output_slot);
  std::uint64_t cast_vote(const std::string& voter, std::uint32_t id, std::uint32_t ev);
  std::string issue_verification_code(std::uint32_t id) const;

  Transcript transcript() const;
  const Board& board() const { return *board_; }
  const GroupParams& params() const { return gp_; }
  const ElectionConfig& config() const { return cfg_; }

  const std::vector<std::uint32_t>& intended_votes() const { return votes_; }
  const std::vector<std::uint32_t>& test_votes() const { return test_votes_; }
  const std::vector<Ballot>& kept_ballots() const { return kept_; }
  const std::vector<Ballot>& audited_ballots() const { return audited_; }
  const std::map<std::uint32_t, CastRecord>& casts() const { return casts_by_position_; }
  const Tally& tally() const { return tally_; }
  const std::vector<TraceResult>& traces() const { return traces_; }
  bool code_mismatch_reported() const { return code_mismatch_; }
  std::uint32_t complaints_posted() const { return complaints_; }

  // Ground truth for analyses that compare public reveals against the real
  // paths. Nothing in the protocol itself reads these back out.
  const std::vector<MixServerSecret>& server_secrets() const { return servers_; }
  const std::vector<std::uint32_t>& sender_perm() const { return perm0_; }

 private:
  ElectionConfig cfg_;
  Hooks hooks_;
  GroupParams gp_;
  HashDrbg root_;
  std::optional<Board> board_;
  int next_step_ = 0;

  // actors
  KeyPair ec1_sign_, ec2_sign_, ec2_enc_;
  std::vector<KeyPair> server_sign_;
  std::vector<MixServerSecret> servers_;
  std::vector<HashDrbg> server_rng_;
  HashDrbg ec1_rng_, ec2_rng_, voter_rng_;
  std::vector<std::uint32_t> perm0_, perm0_inv_;
  Bytes perm0_salt_;
  DecodeTable table_;

  // published lists (as posted, tampering included)
  std::vector<PairList> creation_lists_;
  std::vector<VoteList> recovery_lists_;

  // audit state
  std::vector<Bytes> rand_value_[2], rand_salt_[2];
  Bytes q_[2];
  Stage1Plan plan1_;
  Stage2Plan plan2_;
  std::vector<std::set<std::uint32_t>> stage1_inputs_;

  // distribution / casting
  std::uint32_t next_offer_slot_ = 0;
  std::set<std::uint32_t> printed_slots_;
  std::set<std::uint32_t> printed_ids_;
  std::set<std::uint32_t> compromised_;
  std::vector<Ballot> kept_, audited_;
  std::vector<std::uint32_t> votes_, test_votes_;
  std::map<std::uint32_t, CastRecord> casts_by_position_;
  std::set<std::uint32_t> cast_ids_;
  std::set<std::string> cast_voters_;
  bool code_mismatch_ = false;
  std::uint32_t complaints_ = 0;

  Tally tally_;
  std::vector<TraceResult> traces_;

  void expect_step(int step, const char* what);
  mpz_class remaining_creation(std::uint32_t server) const;  // keys past `server`, with EC2
  mpz_class remaining_recovery(std::uint32_t server) const;
  mpz_class mix_joint_key() const;
  void post_complaint(const std::string& author, const KeyPair& key, Phase phase,
                      const std::string& code, const std::string& detail,
                      std::uint64_t about_seq);
  void run_rpc_round(int round);  // shared commit/open/challenge/plan sequence
  std::vector<Validator> build_validator_batch(std::uint32_t server, int round);
  std::uint64_t do_cast(const std::string& voter, std::uint32_t id, std::uint32_t ev);
};

}  // namespace mixvote
