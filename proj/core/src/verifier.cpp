#include "mixvote/verifier.hpp"

#include <map>
#include <optional>
#include <set>

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

namespace {

// Everything the verifier extracts from the raw entry stream, indexed for the
// check groups below.
struct View {
  const Transcript* t = nullptr;
  std::optional<Board> board;

  std::map<std::string, KeyRegPayload> keys;
  std::optional<ParamsPayload> params;
  std::map<std::uint32_t, CommitSetPayload> commits;  // by server (0 = sender)
  std::map<std::uint32_t, PairList> creation_lists;           // by stage
  std::map<std::uint32_t, std::uint64_t> creation_list_seqs;
  std::map<std::uint32_t, VoteList> recovery_lists;
  std::map<std::uint32_t, std::uint64_t> recovery_list_seqs;
  std::map<std::uint32_t, RandCommitPayload> rand_commits[2];  // by server
  std::map<std::uint32_t, RandOpenPayload> rand_opens[2];
  std::uint64_t max_commit_seq[2] = {0, 0};
  std::uint64_t min_open_seq[2] = {~0ull, ~0ull};
  std::uint64_t max_open_seq[2] = {0, 0};
  std::optional<ChallengePayload> challenges[2];
  std::uint64_t challenge_seqs[2] = {0, 0};
  std::optional<PlanPayload> plans[2];
  std::map<std::uint32_t, ValidatorsPayload> validators[2];  // by server
  std::map<std::uint32_t, AuditPayload> audits;              // by output slot
  std::map<std::uint32_t, CastPayload> casts;                // by position
  std::optional<TallyPayload> tally;
  std::map<std::uint32_t, std::map<std::uint32_t, TraceStepPayload>> traces;  // slot -> server
  std::vector<std::string> complaints;

  Stage1Plan plan1;
  Stage2Plan plan2;
  bool plan1_ok = false;
  bool plan2_ok = false;
};

struct Reporter {
  AuditReport report;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    report.checks.push_back({name, pass, pass ? "" : detail});
    if (!pass) report.overall = false;
  }
};

std::string expected_author(const Payload& p, const View& view) {
  (void)view;
  if (auto* k = std::get_if<KeyRegPayload>(&p)) return k->actor;
  if (std::get_if<ParamsPayload>(&p)) return "ec1";
  if (auto* cs = std::get_if<CommitSetPayload>(&p))
    return cs->server == 0 ? "ec1" : "server-" + std::to_string(cs->server);
  if (auto* ml = std::get_if<MixListPayload>(&p))
    return ml->stage == 0 ? "ec1" : "server-" + std::to_string(ml->stage);
  if (auto* r = std::get_if<RandCommitPayload>(&p))
    return "server-" + std::to_string(r->server);
  if (auto* r = std::get_if<RandOpenPayload>(&p))
    return "server-" + std::to_string(r->server);
  if (std::get_if<ChallengePayload>(&p)) return "ec1";
  if (std::get_if<PlanPayload>(&p)) return "ec1";
  if (auto* v = std::get_if<ValidatorsPayload>(&p))
    return "server-" + std::to_string(v->server);
  if (std::get_if<AuditPayload>(&p)) return "ec2";
  if (std::get_if<CastPayload>(&p)) return "ec1";
  if (std::get_if<TallyPayload>(&p)) return "ec2";
  if (auto* ts = std::get_if<TraceStepPayload>(&p))
    return "server-" + std::to_string(ts->server);
  return "";  // complaints: any registered author
}

Phase expected_phase(const Payload& p) {
  if (std::get_if<KeyRegPayload>(&p) || std::get_if<ParamsPayload>(&p) ||
      std::get_if<CommitSetPayload>(&p))
    return Phase::setup;
  if (auto* ml = std::get_if<MixListPayload>(&p))
    return ml->pass == 0 ? Phase::creation : Phase::recovery;
  if (auto* r = std::get_if<RandCommitPayload>(&p))
    return r->rpc_stage == 1 ? Phase::challenge1 : Phase::challenge2;
  if (auto* r = std::get_if<RandOpenPayload>(&p))
    return r->rpc_stage == 1 ? Phase::challenge1 : Phase::challenge2;
  if (auto* c = std::get_if<ChallengePayload>(&p))
    return c->rpc_stage == 1 ? Phase::challenge1 : Phase::challenge2;
  if (auto* pl = std::get_if<PlanPayload>(&p))
    return pl->rpc_stage == 1 ? Phase::challenge1 : Phase::challenge2;
  if (auto* v = std::get_if<ValidatorsPayload>(&p))
    return v->rpc_stage == 1 ? Phase::reveal1 : Phase::reveal2;
  if (std::get_if<AuditPayload>(&p)) return Phase::distribution;
  if (std::get_if<CastPayload>(&p)) return Phase::casting;
  if (std::get_if<TallyPayload>(&p)) return Phase::tally;
  if (std::get_if<TraceStepPayload>(&p)) return Phase::trace;
  return Phase::setup;  // unused for complaints
}

// ---------------------------------------------------------------------------

bool parse_entries(const Transcript& t, View& view, Reporter& rep) {
  try {
    view.board.emplace(replay_transcript(t));
  } catch (const Error& e) {
    rep.add("board-transport", false, e.what());
    return false;
  }
  rep.add("board-transport", true);

  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };

  for (const BBEntry& e : view.board->entries()) {
    Payload p;
    try {
      p = decode_payload(e.payload);
    } catch (const Error& err) {
      fail("entry " + std::to_string(e.seq) + ": " + err.what());
      continue;
    }
    std::string author = expected_author(p, view);
    if (!author.empty() && author != e.author) {
      fail("entry " + std::to_string(e.seq) + ": wrong author " + e.author);
      continue;
    }
    if (!std::get_if<ComplaintPayload>(&p) && e.phase != expected_phase(p)) {
      fail("entry " + std::to_string(e.seq) + ": wrong phase");
      continue;
    }

    if (auto* k = std::get_if<KeyRegPayload>(&p)) {
      if (!view.keys.emplace(k->actor, *k).second)
        fail("duplicate key registration: " + k->actor);
    } else if (auto* pp = std::get_if<ParamsPayload>(&p)) {
      if (view.params) fail("duplicate parameter entry");
      view.params = *pp;
    } else if (auto* cs = std::get_if<CommitSetPayload>(&p)) {
      if (!view.commits.emplace(cs->server, *cs).second)
        fail("duplicate commitment set");
    } else if (auto* ml = std::get_if<MixListPayload>(&p)) {
      if (ml->pass == 0) {
        if (!view.creation_lists.emplace(ml->stage, ml->pairs).second)
          fail("duplicate creation list stage " + std::to_string(ml->stage));
        view.creation_list_seqs[ml->stage] = e.seq;
      } else if (ml->pass == 1) {
        if (!view.recovery_lists.emplace(ml->stage, ml->votes).second)
          fail("duplicate recovery list stage " + std::to_string(ml->stage));
        view.recovery_list_seqs[ml->stage] = e.seq;
      } else {
        fail("unknown mix pass");
      }
    } else if (auto* r = std::get_if<RandCommitPayload>(&p)) {
      int round = r->rpc_stage == 1 ? 0 : 1;
      if (r->rpc_stage != 1 && r->rpc_stage != 2) fail("bad rpc stage");
      else if (!view.rand_commits[round].emplace(r->server, *r).second)
        fail("duplicate randomness commitment");
      else view.max_commit_seq[round] = std::max(view.max_commit_seq[round], e.seq);
    } else if (auto* r = std::get_if<RandOpenPayload>(&p)) {
      int round = r->rpc_stage == 1 ? 0 : 1;
      if (r->rpc_stage != 1 && r->rpc_stage != 2) fail("bad rpc stage");
      else if (!view.rand_opens[round].emplace(r->server, *r).second)
        fail("duplicate randomness opening");
      else {
        view.min_open_seq[round] = std::min(view.min_open_seq[round], e.seq);
        view.max_open_seq[round] = std::max(view.max_open_seq[round], e.seq);
      }
    } else if (auto* c = std::get_if<ChallengePayload>(&p)) {
      int round = c->rpc_stage == 1 ? 0 : 1;
      if (c->rpc_stage != 1 && c->rpc_stage != 2) fail("bad rpc stage");
      else if (view.challenges[round]) fail("duplicate challenge entry");
      else {
        view.challenges[round] = *c;
        view.challenge_seqs[round] = e.seq;
      }
    } else if (auto* pl = std::get_if<PlanPayload>(&p)) {
      int round = pl->rpc_stage == 1 ? 0 : 1;
      if (pl->rpc_stage != 1 && pl->rpc_stage != 2) fail("bad rpc stage");
      else if (view.plans[round]) fail("duplicate plan entry");
      else view.plans[round] = *pl;
    } else if (auto* v = std::get_if<ValidatorsPayload>(&p)) {
      int round = v->rpc_stage == 1 ? 0 : 1;
      if (v->rpc_stage != 1 && v->rpc_stage != 2) fail("bad rpc stage");
      else if (!view.validators[round].emplace(v->server, *v).second)
        fail("duplicate validator batch");
    } else if (auto* a = std::get_if<AuditPayload>(&p)) {
      if (!view.audits.emplace(a->output_slot, *a).second)
        fail("duplicate audit for slot " + std::to_string(a->output_slot));
    } else if (auto* cst = std::get_if<CastPayload>(&p)) {
      if (!view.casts.emplace(cst->position, *cst).second)
        fail("duplicate cast at position " + std::to_string(cst->position));
    } else if (auto* tl = std::get_if<TallyPayload>(&p)) {
      if (view.tally) fail("duplicate tally");
      view.tally = *tl;
    } else if (auto* ts = std::get_if<TraceStepPayload>(&p)) {
      if (!view.traces[ts->final_slot].emplace(ts->server, *ts).second)
        fail("duplicate trace step");
    } else if (auto* cp = std::get_if<ComplaintPayload>(&p)) {
      view.complaints.push_back(cp->code);
    }
  }
  rep.add("entry-structure", ok, detail);
  return ok;
}

void check_registry(const View& view, std::uint32_t lambda, Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto need = [&](const std::string& actor, bool enc) {
    auto it = view.keys.find(actor);
    if (it == view.keys.end()) {
      ok = false;
      detail = "missing key registration: " + actor;
      return;
    }
    if (enc && it->second.enc_pub == 0) {
      ok = false;
      detail = "missing decryption key: " + actor;
    }
  };
  need("ec1", false);
  need("ec2", true);
  for (std::uint32_t i = 1; i <= lambda; ++i) need("server-" + std::to_string(i), true);
  if (ok && view.keys.size() != 2 + lambda) {
    ok = false;
    detail = "unexpected key registrations";
  }
  rep.add("key-registry", ok, detail);
}

void check_params(const View& view, const Transcript& t, Reporter& rep) {
  if (!view.params) {
    rep.add("group-parameters", false, "no parameter entry");
    return;
  }
  const ParamsPayload& p = *view.params;
  bool ok = p.gp.p == t.gp.p && p.gp.q == t.gp.q && p.gp.c == t.gp.c && p.gp.g == t.gp.g &&
            p.gp.h == t.gp.h && p.gp.hash_algo == t.gp.hash_algo && p.n == t.n &&
            p.lambda == t.lambda;
  if (!ok) {
    rep.add("group-parameters", false, "parameter entry disagrees with header");
    return;
  }
  if (t.n < 2 || t.lambda < 4 || t.lambda % 4 != 0) {
    rep.add("group-parameters", false, "bad election dimensions");
    return;
  }
  if (!validate_params(t.gp)) {
    rep.add("group-parameters", false, "group constants fail validation");
    return;
  }
  rep.add("group-parameters", true);
}

void check_commitments(const View& view, std::uint32_t n, std::uint32_t lambda,
                       Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto sender = view.commits.find(0);
  if (sender == view.commits.end() || sender->second.perm_digests.size() != 1 ||
      !sender->second.rot_digests.empty()) {
    ok = false;
    detail = "sender permutation commitment missing or malformed";
  }
  for (std::uint32_t i = 1; i <= lambda && ok; ++i) {
    auto it = view.commits.find(i);
    if (it == view.commits.end() || it->second.perm_digests.size() != n ||
        it->second.rot_digests.size() != n) {
      ok = false;
      detail = "commitment set malformed for server " + std::to_string(i);
      break;
    }
  }
  if (ok && view.commits.size() != lambda + 1) {
    ok = false;
    detail = "unexpected commitment entries";
  }
  rep.add("transition-commitments", ok, detail);
}

bool check_creation_lists(const View& view, const GroupParams& gp, std::uint32_t n,
                          std::uint32_t lambda, Reporter& rep) {
  bool ok = true;
  std::string detail;
  for (std::uint32_t stage = 0; stage <= lambda && ok; ++stage) {
    auto it = view.creation_lists.find(stage);
    if (it == view.creation_lists.end() || it->second.slots.size() != n) {
      ok = false;
      detail = "creation list stage " + std::to_string(stage) + " missing or missized";
      break;
    }
    for (const OnionPair& pair : it->second.slots) {
      auto in_group = [&](const mpz_class& v) { return v > 0 && v < gp.p; };
      if (!in_group(pair.id_onion.a) || !in_group(pair.id_onion.b) ||
          !in_group(pair.rot_onion.a) || !in_group(pair.rot_onion.b)) {
        ok = false;
        detail = "creation list stage " + std::to_string(stage) + " has invalid elements";
        break;
      }
    }
  }
  if (ok) {
    for (const OnionPair& pair : view.creation_lists.at(0).slots)
      if (pair.rot_onion.a != 1 || pair.rot_onion.b != 1) {
        ok = false;
        detail = "initial rotation onions must be trivial";
        break;
      }
  }
  if (ok && view.creation_lists.size() != lambda + 1) {
    ok = false;
    detail = "extra creation lists";
  }
  rep.add("creation-lists", ok, detail);
  return ok;
}

bool check_challenge(View& view, int round, std::uint64_t data_seq, std::uint32_t lambda,
                     Reporter& rep) {
  const std::string name = round == 0 ? "challenge-1" : "challenge-2";
  const GroupParams& gp = view.t->gp;
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };

  std::vector<Bytes> contributions;
  for (std::uint32_t i = 1; i <= lambda; ++i) {
    auto cit = view.rand_commits[round].find(i);
    auto oit = view.rand_opens[round].find(i);
    if (cit == view.rand_commits[round].end() || oit == view.rand_opens[round].end()) {
      fail("randomness round incomplete for server " + std::to_string(i));
      continue;
    }
    if (oit->second.value.size() != 32) fail("randomness contribution not 32 bytes");
    if (!open_commitment(gp.hash_algo, tag::rnd, {cit->second.digest}, oit->second.value,
                         oit->second.salt))
      fail("randomness opening does not match commitment");
    contributions.push_back(oit->second.value);
  }
  if (view.rand_commits[round].size() != lambda || view.rand_opens[round].size() != lambda)
    fail("unexpected randomness entries");
  if (ok && view.max_commit_seq[round] >= view.min_open_seq[round])
    fail("an opening precedes a commitment");

  if (!view.challenges[round]) {
    fail("missing challenge entry");
  } else if (ok) {
    const ChallengePayload& ch = *view.challenges[round];
    Bytes r = xor_randomness(contributions);
    if (ch.r != r) fail("joint randomness mismatch");
    if (ch.frozen_seq < view.max_open_seq[round]) fail("challenge frozen before openings");
    if (ch.frozen_seq < data_seq) fail("challenge frozen before audited data");
    if (ch.frozen_seq >= view.challenge_seqs[round]) fail("freeze point after challenge");
    if (ok) {
      Bytes expect = derive_challenge(gp.hash_algo, r, view.board->content_hash(ch.frozen_seq));
      if (ch.q != expect) fail("challenge value not reproducible");
    }
  }
  rep.add(name, ok, detail);
  return ok;
}

bool check_plan(View& view, int round, Reporter& rep) {
  const std::string name = round == 0 ? "reveal-plan-1" : "reveal-plan-2";
  if (!view.plans[round] || !view.challenges[round]) {
    rep.add(name, false, "missing plan or challenge entry");
    return false;
  }
  const GroupParams& gp = view.t->gp;
  Bytes expect;
  try {
    if (round == 0) {
      view.plan1 = plan_stage1(gp.hash_algo, view.t->n, view.t->lambda,
                               view.challenges[0]->q);
      expect = encode_stage1_plan(view.plan1);
    } else {
      view.plan2 = plan_stage2(gp.hash_algo, view.t->n, view.t->lambda,
                               view.challenges[1]->q, view.plan1);
      expect = encode_stage2_plan(view.plan2);
    }
  } catch (const Error& e) {
    rep.add(name, false, e.what());
    return false;
  }
  if (view.plans[round]->plan_bytes != expect) {
    rep.add(name, false, "posted plan differs from derived plan");
    return false;
  }
  (round == 0 ? view.plan1_ok : view.plan2_ok) = true;
  rep.add(name, true);
  return true;
}

// Realized stage-1 openings per server, needed for the stage-2 obligations.
std::vector<std::set<std::uint32_t>> stage1_input_sets(const View& view,
                                                       std::uint32_t lambda) {
  std::vector<std::set<std::uint32_t>> sets(lambda);
  for (std::uint32_t i = 1; i <= lambda; ++i) {
    auto it = view.validators[0].find(i);
    if (it == view.validators[0].end()) continue;
    for (const Validator& v : it->second.validators) sets[i - 1].insert(v.input_slot);
  }
  return sets;
}

EdgeContext edge_context(const View& view, std::uint32_t server, bool creation,
                         bool recovery) {
  const GroupParams& gp = view.t->gp;
  EdgeContext ctx;
  ctx.gp = &gp;
  ctx.server_pub = view.keys.at("server-" + std::to_string(server)).enc_pub;
  mpz_class rem = 1;
  for (std::uint32_t j = server + 1; j <= view.t->lambda; ++j)
    rem = mod_mul(rem, view.keys.at("server-" + std::to_string(j)).enc_pub, gp.p);
  ctx.remaining_recovery = rem;
  ctx.remaining_creation = mod_mul(rem, view.keys.at("ec2").enc_pub, gp.p);
  if (creation) {
    ctx.creation_in = &view.creation_lists.at(server - 1);
    ctx.creation_out = &view.creation_lists.at(server);
  }
  if (recovery) {
    ctx.recovery_in = &view.recovery_lists.at(server - 1);
    ctx.recovery_out = &view.recovery_lists.at(server);
  }
  ctx.perm_digests = &view.commits.at(server).perm_digests;
  ctx.rot_digests = &view.commits.at(server).rot_digests;
  return ctx;
}

void check_validators1(View& view, Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  std::uint32_t lambda = view.t->lambda;
  for (std::uint32_t i = 1; i <= lambda && ok; ++i) {
    auto it = view.validators[0].find(i);
    if (it == view.validators[0].end()) {
      fail("no stage-1 validators from server " + std::to_string(i));
      break;
    }
    RevealSet expect = stage1_reveals(view.plan1, i);
    std::set<std::uint32_t> seen_inputs, seen_outputs;
    EdgeContext ctx = edge_context(view, i, true, false);
    for (const Validator& v : it->second.validators) {
      if (v.server != i) fail("validator names the wrong server");
      if (!v.has_creation || v.has_recovery) fail("stage-1 validator has wrong passes");
      if (!seen_inputs.insert(v.input_slot).second) fail("duplicate validator");
      seen_outputs.insert(v.perm_value);
      if (!verify_edge(ctx, v))
        fail("transition check failed for server " + std::to_string(i) + " slot " +
             std::to_string(v.input_slot));
    }
    // The batch must cover the plan exactly: a pair's left server is obliged
    // by output slot, its right server by input slot.
    if (it->second.validators.size() != expect.inputs.size() + expect.outputs.size())
      fail("stage-1 batch size differs from plan for server " + std::to_string(i));
    if (!expect.inputs.empty() && seen_inputs != expect.inputs)
      fail("stage-1 inputs differ from plan for server " + std::to_string(i));
    if (!expect.outputs.empty() && seen_outputs != expect.outputs)
      fail("stage-1 outputs differ from plan for server " + std::to_string(i));
  }
  rep.add("stage1-validators", ok, detail);
}

void check_validators2(View& view, Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  std::uint32_t lambda = view.t->lambda;
  auto realized = stage1_input_sets(view, lambda);
  for (std::uint32_t i = 1; i <= lambda && ok; ++i) {
    auto it = view.validators[1].find(i);
    if (it == view.validators[1].end()) {
      fail("no stage-2 validators from server " + std::to_string(i));
      break;
    }
    RevealSet fresh = stage2_new_reveals(view.plan2, view.plan1, i, realized[i - 1]);
    EdgeContext ctx = edge_context(view, i, true, true);
    std::set<std::uint32_t> seen_inputs;
    std::set<std::uint32_t> full_inputs, full_outputs, rec_only_inputs;
    for (const Validator& v : it->second.validators) {
      if (v.server != i) fail("validator names the wrong server");
      if (!v.has_recovery) fail("stage-2 validator must open the recovery pass");
      if (!seen_inputs.insert(v.input_slot).second) fail("duplicate validator");
      if (!verify_edge(ctx, v))
        fail("transition check failed for server " + std::to_string(i) + " slot " +
             std::to_string(v.input_slot));
      if (v.has_creation) {
        full_inputs.insert(v.input_slot);
        full_outputs.insert(v.perm_value);
      } else {
        rec_only_inputs.insert(v.input_slot);
      }
    }
    if (rec_only_inputs != realized[i - 1])
      fail("stage-1 transitions not all reopened by server " + std::to_string(i));
    // Fresh openings must cover the new obligations exactly. Input-named and
    // output-named obligations are matched separately.
    std::set<std::uint32_t> got_by_input;
    for (std::uint32_t j : full_inputs)
      if (fresh.inputs.count(j)) got_by_input.insert(j);
    if (got_by_input != fresh.inputs)
      fail("stage-2 input openings differ from plan for server " + std::to_string(i));
    std::set<std::uint32_t> extra_outputs;
    for (const Validator& v : it->second.validators) {
      if (!v.has_creation || fresh.inputs.count(v.input_slot)) continue;
      extra_outputs.insert(v.perm_value);
    }
    if (extra_outputs != fresh.outputs)
      fail("stage-2 output openings differ from plan for server " + std::to_string(i));
  }
  rep.add("stage2-validators", ok, detail);
}

// In every completing pair each middle slot must show exactly one incident
// opened edge across both stages; that is what keeps full paths unlinkable.
void check_reveal_discipline(View& view, Reporter& rep) {
  bool ok = true;
  std::string detail;
  std::uint32_t lambda = view.t->lambda;
  std::uint32_t n = view.t->n;
  std::uint32_t pairs = lambda / 2;
  for (std::uint32_t t = 0; t < pairs && ok; ++t) {
    if (view.plan2.completing[t / 2] != t % 2) continue;
    std::vector<int> left_edges(n, 0), right_edges(n, 0);
    for (int round = 0; round < 2; ++round) {
      auto lit = view.validators[round].find(2 * t + 1);
      if (lit != view.validators[round].end())
        for (const Validator& v : lit->second.validators)
          if (v.has_creation) left_edges[v.perm_value] = 1;
      auto rit = view.validators[round].find(2 * t + 2);
      if (rit != view.validators[round].end())
        for (const Validator& v : rit->second.validators)
          if (v.has_creation) right_edges[v.input_slot] = 1;
    }
    for (std::uint32_t m = 0; m < n; ++m) {
      if (left_edges[m] + right_edges[m] != 1) {
        ok = false;
        detail = "pair " + std::to_string(t + 1) + " middle slot " + std::to_string(m) +
                 " shows " + std::to_string(left_edges[m] + right_edges[m]) + " edges";
        break;
      }
    }
  }
  rep.add("reveal-discipline", ok, detail);
}

void check_audits(const View& view, Reporter& rep) {
  const GroupParams& gp = view.t->gp;
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  const PairList& final_list = view.creation_lists.at(view.t->lambda);
  mpz_class y_dec = view.keys.at("ec2").enc_pub;
  for (const auto& [slot, audit] : view.audits) {
    if (slot >= view.t->n || audit.id >= view.t->n || audit.sh >= gp.c) {
      fail("audit values out of range at slot " + std::to_string(slot));
      continue;
    }
    const OnionPair& pair = final_list.slots[slot];
    mpz_class m_id = encode_id(gp, audit.id);
    mpz_class m_rot = mod_pow(gp.h, audit.sh, gp.p);
    if (!verify_eq_dlog(gp, y_dec, m_id, pair.id_onion, audit.id_proof))
      fail("identifier proof failed at slot " + std::to_string(slot));
    else if (!verify_eq_dlog(gp, y_dec, m_rot, pair.rot_onion, audit.rot_proof))
      fail("rotation proof failed at slot " + std::to_string(slot));
  }
  rep.add("ballot-audits", ok, detail);
}

void check_casts(const View& view, Reporter& rep) {
  const GroupParams& gp = view.t->gp;
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  mpz_class joint = 1;
  for (std::uint32_t j = 1; j <= view.t->lambda; ++j)
    joint = mod_mul(joint, view.keys.at("server-" + std::to_string(j)).enc_pub, gp.p);
  std::set<std::uint32_t> ids;
  for (const auto& [position, cast] : view.casts) {
    if (position >= view.t->n || cast.id >= view.t->n || cast.ev >= gp.c) {
      fail("cast fields out of range at position " + std::to_string(position));
      continue;
    }
    if (!ids.insert(cast.id).second) fail("identifier cast twice");
    if (cast.k0 <= 0 || cast.k0 >= gp.q) fail("cast randomizer out of range");
    else if (!(exp_encrypt(gp, joint, cast.ev, cast.k0) == cast.onion))
      fail("cast onion does not encrypt the claimed position");
  }
  rep.add("cast-records", ok, detail);
}

bool check_recovery_lists(const View& view, Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  std::uint32_t n = view.t->n;
  for (std::uint32_t stage = 0; stage <= view.t->lambda; ++stage) {
    auto it = view.recovery_lists.find(stage);
    if (it == view.recovery_lists.end() || it->second.slots.size() != n) {
      fail("recovery list stage " + std::to_string(stage) + " missing or missized");
      rep.add("recovery-lists", ok, detail);
      return false;
    }
  }
  const VoteList& list0 = view.recovery_lists.at(0);
  for (std::uint32_t s = 0; s < n; ++s) {
    auto cit = view.casts.find(s);
    if (list0.slots[s].has_value() != (cit != view.casts.end())) {
      fail("input list occupancy differs from cast records at slot " + std::to_string(s));
      continue;
    }
    if (list0.slots[s] && !(*list0.slots[s] == cit->second.onion))
      fail("input list onion differs from cast record at slot " + std::to_string(s));
  }
  if (view.recovery_lists.size() != view.t->lambda + 1) fail("extra recovery lists");
  rep.add("recovery-lists", ok, detail);
  return ok;
}

void check_tally(const View& view, Reporter& rep) {
  const GroupParams& gp = view.t->gp;
  if (!view.tally) {
    rep.add("tally-recount", false, "no tally entry");
    return;
  }
  DecodeTable table = build_decode_table(gp, 0);
  std::set<std::uint32_t> compromised;
  for (const auto& [slot, audit] : view.audits) {
    (void)audit;
    compromised.insert(slot);
  }
  TallyPayload expect;
  expect.counts.assign(gp.c, 0);
  const VoteList& final_list = view.recovery_lists.at(view.t->lambda);
  for (std::uint32_t s = 0; s < view.t->n; ++s) {
    if (!final_list.slots[s]) continue;
    auto v = decode_h_power(table, final_list.slots[s]->a);
    if (!v) {
      expect.undecodable.push_back(s);
      continue;
    }
    if (compromised.count(s)) expect.test_hits.emplace_back(s, *v);
    else {
      expect.counted.emplace_back(s, *v);
      ++expect.counts[*v];
    }
  }
  const TallyPayload& got = *view.tally;
  bool ok = got.counts == expect.counts && got.counted == expect.counted &&
            got.test_hits == expect.test_hits && got.undecodable == expect.undecodable;
  rep.add("tally-recount", ok, ok ? "" : "published tally differs from recount");
}

void check_traces(const View& view, Reporter& rep) {
  bool ok = true;
  std::string detail;
  auto fail = [&](const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  };
  std::set<std::uint32_t> expected_slots;
  if (view.tally)
    for (auto [slot, value] : view.tally->test_hits) {
      (void)value;
      expected_slots.insert(slot);
    }
  std::set<std::uint32_t> traced_slots;
  for (const auto& [slot, steps] : view.traces) traced_slots.insert(slot);
  if (expected_slots != traced_slots) {
    fail("traced slots differ from test hits");
    rep.add("trace-chains", ok, detail);
    return;
  }
  for (const auto& [final_slot, steps] : view.traces) {
    std::uint32_t expect_to = final_slot;
    for (std::uint32_t i = view.t->lambda; i >= 1 && ok; --i) {
      auto it = steps.find(i);
      if (it == steps.end()) {
        fail("missing trace step for server " + std::to_string(i));
        break;
      }
      const TraceStepPayload& step = it->second;
      if (step.to_slot != expect_to) fail("trace chain broken");
      const Validator& v = step.validator;
      if (v.has_creation || !v.has_recovery || !v.rec_occupied)
        fail("trace validator must open an occupied recovery transition");
      if (v.server != i || v.input_slot != step.from_slot || v.perm_value != step.to_slot)
        fail("trace step disagrees with its validator");
      EdgeContext ctx = edge_context(view, i, false, true);
      if (ok && !verify_edge(ctx, v)) fail("trace transition check failed");
      expect_to = step.from_slot;
    }
    if (ok && !view.casts.count(expect_to))
      fail("trace does not end at a cast record");
    if (steps.size() != view.t->lambda) fail("extra trace steps");
    if (!ok) break;
  }
  rep.add("trace-chains", ok, detail);
}

}  // namespace

bool all_passed(const AuditReport& report) {
  if (!report.overall) return false;
  for (const Check& check : report.checks)
    if (!check.pass) return false;
  return true;
}

AuditReport verify_transcript(const Transcript& t) {
  Reporter rep;
  View view;
  view.t = &t;

  if (!hash_algo_available(t.gp.hash_algo)) {
    rep.add("board-transport", false, "unknown hash algorithm");
    return rep.report;
  }

  if (!parse_entries(t, view, rep)) return rep.report;

  check_registry(view, t.lambda, rep);
  check_params(view, t, rep);
  bool have_actors = view.keys.count("ec1") && view.keys.count("ec2");
  for (std::uint32_t i = 1; i <= t.lambda; ++i)
    have_actors = have_actors && view.keys.count("server-" + std::to_string(i));
  if (!have_actors) return rep.report;

  check_commitments(view, t.n, t.lambda, rep);
  bool lists_ok = check_creation_lists(view, t.gp, t.n, t.lambda, rep);

  std::uint64_t creation_seq = 0;
  for (auto& [stage, seq] : view.creation_list_seqs) creation_seq = std::max(creation_seq, seq);
  bool ch1 = check_challenge(view, 0, creation_seq, t.lambda, rep);
  bool plan1 = false;
  if (ch1) plan1 = check_plan(view, 0, rep);
  else rep.add("reveal-plan-1", false, "prerequisites missing");
  bool commits_ok = view.commits.size() == t.lambda + 1;
  for (std::uint32_t i = 1; i <= t.lambda && commits_ok; ++i)
    commits_ok = view.commits.count(i) && view.commits.at(i).perm_digests.size() == t.n &&
                 view.commits.at(i).rot_digests.size() == t.n;

  if (lists_ok && plan1 && commits_ok) check_validators1(view, rep);
  else rep.add("stage1-validators", false, "prerequisites missing");

  if (lists_ok && commits_ok) check_audits(view, rep);
  else rep.add("ballot-audits", false, "prerequisites missing");

  check_casts(view, rep);
  bool rec_ok = check_recovery_lists(view, rep);

  std::uint64_t recovery_seq = 0;
  for (auto& [stage, seq] : view.recovery_list_seqs) recovery_seq = std::max(recovery_seq, seq);
  bool ch2 = check_challenge(view, 1, recovery_seq, t.lambda, rep);
  bool plan2 = false;
  if (ch2 && plan1) plan2 = check_plan(view, 1, rep);
  else rep.add("reveal-plan-2", false, "prerequisites missing");

  if (lists_ok && rec_ok && plan2 && commits_ok) {
    check_validators2(view, rep);
    check_reveal_discipline(view, rep);
  } else {
    rep.add("stage2-validators", false, "prerequisites missing");
    rep.add("reveal-discipline", false, "prerequisites missing");
  }

  if (rec_ok) check_tally(view, rep);
  else rep.add("tally-recount", false, "prerequisites missing");

  if (rec_ok && commits_ok) check_traces(view, rep);
  else rep.add("trace-chains", false, "prerequisites missing");

  bool quiet = view.complaints.empty();
  std::string detail;
  if (!quiet) {
    detail = "complaints on record:";
    for (const std::string& code : view.complaints) detail += " " + code;
  }
  rep.add("no-complaints", quiet, detail);
  rep.report.complaints = view.complaints;

  return rep.report;
}

}  // namespace mixvote
