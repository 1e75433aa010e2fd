#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "mixvote/errors.hpp"
#include "mixvote/protocol.hpp"
#include "mixvote/verifier.hpp"

using namespace mixvote;

namespace {

ElectionConfig small(std::uint64_t seed = 1) {
  ElectionConfig cfg;
  cfg.name = "small";
  cfg.n = 12;
  cfg.c = 3;
  cfg.lambda = 4;
  cfg.q_bits = 32;
  cfg.seed = seed;
  cfg.voters = {"ann", "ben", "cat"};
  cfg.test_casts = 1;
  return cfg;
}

std::vector<std::uint64_t> histogram(const std::vector<std::uint32_t>& votes, std::uint32_t c) {
  std::vector<std::uint64_t> h(c, 0);
  for (std::uint32_t v : votes) ++h[v];
  return h;
}

}  // namespace

TEST_CASE("config validation rejects every malformed dimension") {
  CHECK_NOTHROW(validate_config(small()));

  ElectionConfig cfg = small();
  cfg.lambda = 6;
  CHECK_THROWS_WITH_AS(validate_config(cfg), doctest::Contains("config-error"), Error);
  cfg = small();
  cfg.lambda = 0;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.n = 1;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.c = 1;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.voters = {"a", "b", "c", "d", "e", "f", "g"};  // 2·7 > 12 ballots
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.voters = {"dup", "dup"};
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.votes = {0, 1};  // three voters
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.votes = {0, 1, 3};  // candidate out of range
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.test_casts = 4;
  CHECK_THROWS_AS(validate_config(cfg), Error);
  cfg = small();
  cfg.hash_algo = "md5";
  CHECK_THROWS_AS(validate_config(cfg), Error);
}

TEST_CASE("an honest election counts exactly the intended votes") {
  ElectionConfig cfg = small(3);
  cfg.votes = {2, 0, 2};
  Election e(cfg);
  e.run();

  const Tally& tally = e.tally();
  CHECK(tally.counts == histogram(cfg.votes, cfg.c));
  CHECK(tally.counted.size() == 3);
  CHECK(tally.test_hits.size() == 1);
  CHECK(tally.undecodable.empty());
  CHECK(e.complaints_posted() == 0);
  CHECK(e.traces().size() == 1);
}

TEST_CASE("the marked position is vote plus rotation modulo candidates") {
  CHECK(encrypt_vote(2, 2, 3) == 1);
  CHECK(encrypt_vote(0, 0, 3) == 0);
  CHECK(encrypt_vote(4, 15, 16) == 3);
  CHECK_THROWS_AS(encrypt_vote(3, 0, 3), Error);
  CHECK_THROWS_AS(encrypt_vote(0, 3, 3), Error);
}

TEST_CASE("setup posts one commitment entry per actor plus params and keys") {
  ElectionConfig cfg = small(4);
  Election e(cfg);
  e.setup();

  std::map<std::string, int> kinds;
  for (const BBEntry& entry : e.board().entries())
    ++kinds[payload_kind(decode_payload(entry.payload))];
  CHECK(kinds["key"] == 6);  // ec1, ec2, four servers
  CHECK(kinds["params"] == 1);
  CHECK(kinds["commitments"] == 5);  // sender + four servers
  CHECK(e.board().entries().size() == 12);
}

TEST_CASE("verification codes are deterministic per identifier") {
  ElectionConfig cfg = small(5);
  Election e(cfg);
  e.setup();
  std::set<std::string> codes;
  for (std::uint32_t id = 0; id < cfg.n; ++id) {
    std::string code = e.issue_verification_code(id);
    CHECK(code.size() == 16);  // eight bytes, hex
    CHECK(code == e.issue_verification_code(id));
    codes.insert(code);
  }
  CHECK(codes.size() == cfg.n);
}

TEST_CASE("phases refuse to run out of order") {
  Election e(small(6));
  e.setup();
  CHECK_THROWS_WITH_AS(e.cast_votes(), doctest::Contains("phase-violation"), Error);
  CHECK_THROWS_AS(e.recover_votes(), Error);
  e.create_ballots();
  CHECK_THROWS_AS(e.publish_tally(), Error);
  CHECK_THROWS_AS(e.setup(), Error);  // no going back either
}

TEST_CASE("a ballot slot can be printed once and only once") {
  Election e(small(7));
  e.setup();
  e.create_ballots();
  e.audit_stage1();
  auto ballot = e.print_ballot(0);
  REQUIRE(ballot.has_value());
  CHECK(ballot->output_slot == 0);
  CHECK(ballot->sh < 3);
  CHECK_THROWS_WITH_AS(e.print_ballot(0), doctest::Contains("double-print"), Error);
}

TEST_CASE("ballot supply runs out after n prints") {
  ElectionConfig cfg = small(8);
  cfg.voters = {"solo"};
  cfg.test_casts = 0;
  Election e(cfg);
  e.setup();
  e.create_ballots();
  e.audit_stage1();
  // Each offer prints two fresh ballots; 12 slots support 6 offers.
  for (int i = 0; i < 6; ++i) CHECK_NOTHROW(e.offer_ballot_pair());
  CHECK_THROWS_WITH_AS(e.offer_ballot_pair(), doctest::Contains("supply-exhausted"), Error);
}

TEST_CASE("casting twice is refused for both voters and identifiers") {
  ElectionConfig cfg = small(9);
  cfg.test_casts = 0;
  Election e(cfg);
  e.setup();
  e.create_ballots();
  e.audit_stage1();
  e.distribute();

  const Ballot& b0 = e.kept_ballots()[0];
  const Ballot& b1 = e.kept_ballots()[1];
  std::uint32_t ev0 = encrypt_vote(1, b0.sh, cfg.c);
  std::uint32_t ev1 = encrypt_vote(1, b1.sh, cfg.c);

  CHECK_NOTHROW(e.cast_vote("ann", b0.id, ev0));
  CHECK_THROWS_WITH_AS(e.cast_vote("ann", b1.id, ev1), doctest::Contains("double-cast"),
                       Error);  // same voter again
  CHECK_THROWS_WITH_AS(e.cast_vote("ben", b0.id, ev0), doctest::Contains("double-cast"),
                       Error);  // same ballot again
  CHECK_THROWS_WITH_AS(e.cast_vote("zoe", b1.id, ev1), doctest::Contains("unknown-actor"),
                       Error);  // not on the roster
  CHECK_THROWS_AS(e.cast_vote("ben", cfg.n + 3, ev1), Error);  // no such identifier
  CHECK_THROWS_AS(e.cast_vote("ben", b1.id, cfg.c), Error);    // marked position range
}

TEST_CASE("voters audit one ballot of each pair and never cast it normally") {
  ElectionConfig cfg = small(10);
  Election e(cfg);
  e.run();
  CHECK(e.kept_ballots().size() == cfg.voters.size());
  CHECK(e.audited_ballots().size() == cfg.voters.size());
  for (std::size_t i = 0; i < e.kept_ballots().size(); ++i)
    CHECK(e.kept_ballots()[i].id != e.audited_ballots()[i].id);
}

TEST_CASE("a rewritten identifier on the cast wire raises a code mismatch") {
  ElectionConfig cfg = small(11);
  cfg.test_casts = 0;
  REQUIRE(cfg.codes);
  Hooks hooks;
  bool armed = true;
  hooks.cast_channel = [&armed, &cfg](std::uint32_t& id, std::uint32_t&) {
    if (armed) {
      id = (id + 1) % cfg.n;
      armed = false;
    }
  };
  Election e(cfg, hooks);
  try {
    e.run();
    CHECK(e.code_mismatch_reported());
    CHECK(e.complaints_posted() > 0);
    CHECK_FALSE(all_passed(verify_transcript(e.transcript())));
  } catch (const Error& err) {
    // The rewritten identifier collided with another ballot mid-run.
    CHECK(err.code() == errc::double_cast);
  }
}

TEST_CASE("test casts trace back to their auditors' cast records") {
  ElectionConfig cfg = small(12);
  cfg.test_casts = 1;
  Election e(cfg);
  e.run();

  REQUIRE(e.traces().size() == 1);
  const TraceResult& tr = e.traces()[0];
  CHECK(tr.voter.rfind("auditor-", 0) == 0);
  CHECK(tr.path.size() == cfg.lambda + 1);
  CHECK(tr.path.back() == tr.final_slot);

  bool found = false;
  for (const auto& [pos, rec] : e.casts())
    if (rec.seq == tr.cast_seq) {
      found = true;
      CHECK(pos == tr.path.front());
      CHECK(rec.voter == tr.voter);
    }
  CHECK(found);

  // The traced slot is one the printer opened for an audit.
  const Tally& tally = e.tally();
  REQUIRE(tally.test_hits.size() == 1);
  CHECK(tally.test_hits[0].first == tr.final_slot);
}

TEST_CASE("distinct seeds change every ballot secret") {
  ElectionConfig a = small(13), b = small(14);
  Election ea(a), eb(b);
  ea.run();
  eb.run();
  bool same = true;
  for (std::size_t i = 0; i < ea.kept_ballots().size(); ++i)
    same = same && ea.kept_ballots()[i].id == eb.kept_ballots()[i].id &&
           ea.kept_ballots()[i].sh == eb.kept_ballots()[i].sh;
  CHECK_FALSE(same);
}

TEST_CASE("intended votes may be pinned or drawn from the seed") {
  ElectionConfig cfg = small(15);
  cfg.votes = {1, 1, 1};
  Election e(cfg);
  e.run();
  CHECK(e.intended_votes() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(e.tally().counts == std::vector<std::uint64_t>{0, 3, 0});

  ElectionConfig drawn = small(16);
  Election d(drawn);
  d.run();
  CHECK(d.intended_votes().size() == 3);
  for (std::uint32_t v : d.intended_votes()) CHECK(v < drawn.c);
}
