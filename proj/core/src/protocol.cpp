#include "mixvote/protocol.hpp"

#include <algorithm>

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

static bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 64) return false;
  for (char ch : name) {
    bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
              (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    if (!ok) return false;
  }
  return true;
}

void validate_config(const ElectionConfig& cfg) {
  if (!valid_name(cfg.name)) throw Error(errc::config_error, "bad election name");
  if (cfg.n < 2) throw Error(errc::config_error, "need at least two ballots");
  if (cfg.c < 2) throw Error(errc::config_error, "need at least two candidates");
  if (cfg.lambda < 4 || cfg.lambda % 4 != 0)
    throw Error(errc::config_error, "server count must be a positive multiple of four");
  if (cfg.q_bits < 16) throw Error(errc::config_error, "q_bits below 16");
  if (cfg.q_bits > 4096) throw Error(errc::config_error, "q_bits above 4096");
  if (!hash_algo_available(cfg.hash_algo))
    throw Error(errc::config_error, "unknown hash algorithm: " + cfg.hash_algo);
  if (cfg.voters.size() * 2 > cfg.n)
    throw Error(errc::config_error, "ballot supply below two per voter");
  std::set<std::string> seen;
  for (const std::string& v : cfg.voters) {
    if (!valid_name(v)) throw Error(errc::config_error, "bad voter name: " + v);
    if (!seen.insert(v).second) throw Error(errc::config_error, "duplicate voter: " + v);
  }
  if (!cfg.votes.empty() && cfg.votes.size() != cfg.voters.size())
    throw Error(errc::config_error, "votes list does not match voter list");
  for (std::uint32_t v : cfg.votes)
    if (v >= cfg.c) throw Error(errc::config_error, "vote outside candidate range");
  if (cfg.test_casts > cfg.voters.size())
    throw Error(errc::config_error, "more test casts than voters");
}

std::uint32_t encrypt_vote(std::uint32_t v, std::uint32_t sh, std::uint32_t c) {
  if (c == 0 || v >= c || sh >= c) throw Error(errc::invalid_message, "vote out of range");
  return (v + sh) % c;
}

Election::Election(ElectionConfig cfg, Hooks hooks)
    : cfg_(std::move(cfg)),
      hooks_(std::move(hooks)),
      root_(cfg_.hash_algo, u64_be(cfg_.seed), "election-" + cfg_.name),
      ec1_rng_(root_.fork("ec1")),
      ec2_rng_(root_.fork("ec2")),
      voter_rng_(root_.fork("voters")) {
  validate_config(cfg_);
}

void Election::expect_step(int step, const char* what) {
  if (next_step_ != step)
    throw Error(errc::phase_violation, std::string("protocol step out of order: ") + what);
  ++next_step_;
}

mpz_class Election::remaining_creation(std::uint32_t server) const {
  mpz_class acc = ec2_enc_.y;
  for (std::uint32_t i = server; i < cfg_.lambda; ++i)
    acc = mod_mul(acc, servers_[i].enc_key.y, gp_.p);
  return acc;
}

mpz_class Election::remaining_recovery(std::uint32_t server) const {
  mpz_class acc = 1;
  for (std::uint32_t i = server; i < cfg_.lambda; ++i)
    acc = mod_mul(acc, servers_[i].enc_key.y, gp_.p);
  return acc;
}

mpz_class Election::mix_joint_key() const {
  return remaining_recovery(0);
}

void Election::post_complaint(const std::string& author, const KeyPair& key, Phase phase,
                              const std::string& code, const std::string& detail,
                              std::uint64_t about_seq) {
  ComplaintPayload complaint{code, detail, about_seq};
  board_->sign_and_post(author, phase, encode_payload(complaint), key);
  ++complaints_;
}

void Election::setup() {
  expect_step(0, "setup");
  gp_ = generate_params(cfg_.q_bits, cfg_.c, u64_be(cfg_.seed), cfg_.hash_algo);
  board_.emplace(gp_);
  table_ = build_decode_table(gp_, cfg_.n);

  ec1_sign_ = keygen(gp_, ec1_rng_);
  ec2_sign_ = keygen(gp_, ec2_rng_);
  ec2_enc_ = keygen(gp_, ec2_rng_);
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    server_rng_.push_back(root_.fork("server-" + std::to_string(i)));
    HashDrbg& rng = server_rng_.back();
    server_sign_.push_back(keygen(gp_, rng));
    servers_.push_back(make_server_secret(gp_, i, cfg_.n, rng));
    MixServerSecret& secret = servers_.back();
    secret.perm_salts.resize(cfg_.n);
    secret.rot_salts.resize(cfg_.n);
    for (std::uint32_t j = 0; j < cfg_.n; ++j) secret.perm_salts[j] = fresh_salt(rng);
    for (std::uint32_t j = 0; j < cfg_.n; ++j) secret.rot_salts[j] = fresh_salt(rng);
  }

  board_->sign_and_post("ec1", Phase::setup,
                        encode_payload(KeyRegPayload{"ec1", ec1_sign_.y, 0}), ec1_sign_);
  board_->sign_and_post("ec2", Phase::setup,
                        encode_payload(KeyRegPayload{"ec2", ec2_sign_.y, ec2_enc_.y}),
                        ec2_sign_);
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    KeyRegPayload reg{"server-" + std::to_string(i), server_sign_[i - 1].y,
                      servers_[i - 1].enc_key.y};
    board_->sign_and_post(reg.actor, Phase::setup, encode_payload(reg), server_sign_[i - 1]);
  }
  board_->sign_and_post("ec1", Phase::setup,
                        encode_payload(ParamsPayload{gp_, cfg_.n, cfg_.lambda}), ec1_sign_);

  // Sender-side permutation: slot j of the initial list carries id π0[j].
  perm0_.resize(cfg_.n);
  for (std::uint32_t j = 0; j < cfg_.n; ++j) perm0_[j] = j;
  for (std::uint32_t j = cfg_.n; j > 1; --j) {
    std::uint32_t r = static_cast<std::uint32_t>(ec1_rng_.uniform_u64(j));
    std::swap(perm0_[j - 1], perm0_[r]);
  }
  perm0_inv_.resize(cfg_.n);
  for (std::uint32_t j = 0; j < cfg_.n; ++j) perm0_inv_[perm0_[j]] = j;
  perm0_salt_ = fresh_salt(ec1_rng_);
  CommitSetPayload ec1_commit{0,
                              {commit(cfg_.hash_algo, tag::perm, full_perm_payload(perm0_),
                                      perm0_salt_)
                                   .digest},
                              {}};
  board_->sign_and_post("ec1", Phase::setup, encode_payload(ec1_commit), ec1_sign_);

  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    const MixServerSecret& secret = servers_[i - 1];
    CommitSetPayload cs{i, {}, {}};
    for (std::uint32_t j = 0; j < cfg_.n; ++j) {
      cs.perm_digests.push_back(commit(cfg_.hash_algo, tag::perm,
                                       perm_entry_payload(i, j, secret.perm[j]),
                                       secret.perm_salts[j])
                                    .digest);
      cs.rot_digests.push_back(commit(cfg_.hash_algo, tag::lval,
                                      rot_entry_payload(i, j, secret.rotations[j]),
                                      secret.rot_salts[j])
                                   .digest);
    }
    board_->sign_and_post("server-" + std::to_string(i), Phase::setup, encode_payload(cs),
                          server_sign_[i - 1]);
  }
}

void Election::create_ballots() {
  expect_step(1, "create_ballots");
  PairList list0;
  list0.stage = 0;
  list0.slots.resize(cfg_.n);
  mpz_class full_key = remaining_creation(0);
  for (std::uint32_t j = 0; j < cfg_.n; ++j)
    list0.slots[j] =
        build_initial_pair(gp_, full_key, perm0_[j], cfg_.n, ec1_rng_.uniform_unit(gp_.q));
  MixListPayload p0{0, 0, list0, {}};
  board_->sign_and_post("ec1", Phase::creation, encode_payload(p0), ec1_sign_);
  creation_lists_.push_back(std::move(list0));

  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    mpz_class remaining = remaining_creation(i);
    PairList out = server_process_creation(gp_, servers_[i - 1], remaining,
                                           creation_lists_[i - 1], server_rng_[i - 1]);
    if (hooks_.creation_output) {
      ServerPassCtx ctx{gp_, i, remaining, servers_[i - 1], server_rng_[i - 1]};
      hooks_.creation_output(ctx, creation_lists_[i - 1], out);
    }
    MixListPayload pl{0, i, out, {}};
    board_->sign_and_post("server-" + std::to_string(i), Phase::creation,
                          encode_payload(pl), server_sign_[i - 1]);
    creation_lists_.push_back(std::move(out));
  }
}

void Election::run_rpc_round(int round) {
  Phase phase = round == 0 ? Phase::challenge1 : Phase::challenge2;
  std::uint8_t stage_tag = static_cast<std::uint8_t>(round + 1);
  rand_value_[round].resize(cfg_.lambda);
  rand_salt_[round].resize(cfg_.lambda);
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    rand_value_[round][i - 1] = server_rng_[i - 1].bytes(32);
    rand_salt_[round][i - 1] = fresh_salt(server_rng_[i - 1]);
    RandCommitPayload rc{stage_tag, i,
                         commit(cfg_.hash_algo, tag::rnd, rand_value_[round][i - 1],
                                rand_salt_[round][i - 1])
                             .digest};
    board_->sign_and_post("server-" + std::to_string(i), phase, encode_payload(rc),
                          server_sign_[i - 1]);
  }
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    RandOpenPayload ro{stage_tag, i, rand_value_[round][i - 1], rand_salt_[round][i - 1]};
    board_->sign_and_post("server-" + std::to_string(i), phase, encode_payload(ro),
                          server_sign_[i - 1]);
  }
  Bytes r = xor_randomness(rand_value_[round]);
  std::uint64_t frozen = board_->next_seq() - 1;
  q_[round] = derive_challenge(cfg_.hash_algo, r, board_->content_hash(frozen));
  ChallengePayload ch{stage_tag, frozen, r, q_[round]};
  board_->sign_and_post("ec1", phase, encode_payload(ch), ec1_sign_);

  Bytes plan_bytes;
  if (round == 0) {
    plan1_ = plan_stage1(cfg_.hash_algo, cfg_.n, cfg_.lambda, q_[0]);
    plan_bytes = encode_stage1_plan(plan1_);
  } else {
    plan2_ = plan_stage2(cfg_.hash_algo, cfg_.n, cfg_.lambda, q_[1], plan1_);
    plan_bytes = encode_stage2_plan(plan2_);
  }
  PlanPayload pp{stage_tag, plan_bytes};
  board_->sign_and_post("ec1", phase, encode_payload(pp), ec1_sign_);
}

std::vector<Validator> Election::build_validator_batch(std::uint32_t server, int round) {
  const MixServerSecret& secret = servers_[server - 1];
  std::vector<std::uint32_t> perm_inv(cfg_.n);
  for (std::uint32_t j = 0; j < cfg_.n; ++j) perm_inv[secret.perm[j]] = j;

  RevealSet allowed;
  std::set<std::uint32_t> creation_slots;  // slots opened with creation data this round
  std::set<std::uint32_t> all_slots;
  if (round == 0) {
    allowed = stage1_reveals(plan1_, server);
    for (std::uint32_t j : allowed.inputs) creation_slots.insert(j);
    for (std::uint32_t m : allowed.outputs) creation_slots.insert(perm_inv[m]);
    all_slots = creation_slots;
  } else {
    RevealSet fresh =
        stage2_new_reveals(plan2_, plan1_, server, stage1_inputs_[server - 1]);
    for (std::uint32_t j : fresh.inputs) creation_slots.insert(j);
    for (std::uint32_t m : fresh.outputs) creation_slots.insert(perm_inv[m]);
    all_slots = creation_slots;
    // Stage-1 transitions reopen with their recovery randomizers.
    for (std::uint32_t j : stage1_inputs_[server - 1]) all_slots.insert(j);
    allowed = fresh;
    for (std::uint32_t j : stage1_inputs_[server - 1]) allowed.inputs.insert(j);
  }

  std::vector<Validator> batch;
  for (std::uint32_t j : all_slots) {
    bool with_creation = round == 0 || creation_slots.count(j) > 0;
    bool with_recovery = round == 1;
    batch.push_back(make_validator(gp_, secret, j, with_creation, with_recovery,
                                   &creation_lists_[server - 1],
                                   round == 1 ? &recovery_lists_[server - 1] : nullptr,
                                   allowed, server_rng_[server - 1]));
  }
  return batch;
}

void Election::audit_stage1() {
  expect_step(2, "audit_stage1");
  run_rpc_round(0);
  stage1_inputs_.assign(cfg_.lambda, {});
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    std::vector<Validator> batch = build_validator_batch(i, 0);
    if (hooks_.validators1) hooks_.validators1(i, batch);
    ValidatorsPayload vp{1, i, batch};
    board_->sign_and_post("server-" + std::to_string(i), Phase::reveal1,
                          encode_payload(vp), server_sign_[i - 1]);
    for (const Validator& v : batch) stage1_inputs_[i - 1].insert(v.input_slot);
  }
}

std::pair<Ballot, Ballot> Election::offer_ballot_pair() {
  Ballot out[2];
  int have = 0;
  while (have < 2) {  // corrupt slots are complained about and skipped
    if (next_offer_slot_ >= cfg_.n)
      throw Error(errc::supply_exhausted, "no unprinted ballots left");
    auto ballot = print_ballot(next_offer_slot_++);
    if (ballot) out[have++] = *ballot;
  }
  return {out[0], out[1]};
}

std::optional<Ballot> Election::print_ballot(std::uint32_t output_slot) {
  if (!printed_slots_.insert(output_slot).second)
    throw Error(errc::double_print, "slot already printed: " + std::to_string(output_slot));
  const OnionPair& pair = creation_lists_[cfg_.lambda].slots.at(output_slot);
  mpz_class id_plain = decrypt(gp_, ec2_enc_.x, pair.id_onion);
  mpz_class rot_plain = decrypt(gp_, ec2_enc_.x, pair.rot_onion);
  auto id = decode_id(table_, id_plain);
  auto sh = decode_h_power(table_, rot_plain);
  if (!id || !sh) {
    post_complaint("ec2", ec2_sign_, board_->phase(), errc::ballot_corrupt,
                   "undecodable ballot at output slot " + std::to_string(output_slot), 0);
    return std::nullopt;
  }
  if (printed_ids_.count(*id)) {
    post_complaint("ec2", ec2_sign_, board_->phase(), errc::ballot_corrupt,
                   "duplicate identifier at output slot " + std::to_string(output_slot), 0);
    return std::nullopt;
  }
  printed_ids_.insert(*id);
  Ballot ballot;
  ballot.id = *id;
  ballot.sh = *sh;
  ballot.output_slot = output_slot;
  if (cfg_.codes) ballot.code = issue_verification_code(*id);
  return ballot;
}

void Election::audit_ballot(std::uint32_t output_slot) {
  OpenedPair opened = ec2_open_pair(gp_, ec2_enc_, creation_lists_[cfg_.lambda].slots.at(output_slot),
                                    table_, ec2_rng_);
  AuditPayload audit{output_slot, opened.id, opened.sh, opened.id_proof, opened.rot_proof};
  if (hooks_.audit_entry) hooks_.audit_entry(audit);
  board_->sign_and_post("ec2", Phase::distribution, encode_payload(audit), ec2_sign_);
  compromised_.insert(output_slot);
}

void Election::distribute() {
  expect_step(3, "distribute");
  for (std::size_t iv = 0; iv < cfg_.voters.size(); ++iv) {
    auto [first, second] = offer_ballot_pair();
    bool audit_first = voter_rng_.bit();
    Ballot& to_audit = audit_first ? first : second;
    Ballot& to_keep = audit_first ? second : first;
    audit_ballot(to_audit.output_slot);
    audited_.push_back(to_audit);
    kept_.push_back(to_keep);
  }
}

// Truncated deterministic signature over the identifier: the first 8 bytes of
// a hash of the signature values, hex-encoded. Anyone without the signing key
// cannot forge the code for a substituted identifier.
std::string Election::issue_verification_code(std::uint32_t id) const {
  Enc msg;
  msg.put_str("vcode");
  msg.put_u32(id);
  Signature sig = sign_message(gp_, ec1_sign_, msg.bytes());
  Enc material;
  material.put_mpz(sig.e);
  material.put_mpz(sig.s);
  Bytes digest = tagged_hash(cfg_.hash_algo, tag::code, material.bytes());
  digest.resize(8);
  return to_hex(digest);
}

std::uint64_t Election::do_cast(const std::string& voter, std::uint32_t id,
                                std::uint32_t ev) {
  if (id >= cfg_.n) throw Error(errc::invalid_message, "unknown ballot identifier");
  if (ev >= cfg_.c) throw Error(errc::invalid_message, "marked position out of range");
  if (cast_ids_.count(id)) throw Error(errc::double_cast, "identifier already cast");
  std::uint32_t position = perm0_inv_[id];
  mpz_class k0 = ec1_rng_.uniform_unit(gp_.q);
  Ciphertext onion = build_vote_onion(gp_, mix_joint_key(), ev, k0);
  std::string code = cfg_.codes ? issue_verification_code(id) : "";
  CastPayload cp{position, voter, id, ev, onion, k0, code};
  std::uint64_t seq =
      board_->sign_and_post("ec1", Phase::casting, encode_payload(cp), ec1_sign_);
  cast_ids_.insert(id);
  casts_by_position_[position] = CastRecord{seq, position, voter, id, ev};
  return seq;
}

std::uint64_t Election::cast_vote(const std::string& voter, std::uint32_t id,
                                  std::uint32_t ev) {
  if (std::find(cfg_.voters.begin(), cfg_.voters.end(), voter) == cfg_.voters.end())
    throw Error(errc::unknown_actor, "voter not on the roster: " + voter);
  if (cast_voters_.count(voter)) throw Error(errc::double_cast, "voter already cast: " + voter);
  std::uint64_t seq = do_cast(voter, id, ev);
  cast_voters_.insert(voter);
  return seq;
}

void Election::cast_votes() {
  expect_step(4, "cast_votes");
  if (votes_.empty()) {
    if (!cfg_.votes.empty()) {
      votes_ = cfg_.votes;
    } else {
      for (std::size_t iv = 0; iv < cfg_.voters.size(); ++iv)
        votes_.push_back(static_cast<std::uint32_t>(voter_rng_.uniform_u64(cfg_.c)));
    }
  }
  for (std::size_t iv = 0; iv < cfg_.voters.size(); ++iv) {
    const Ballot& ballot = kept_[iv];
    std::uint32_t ev = encrypt_vote(votes_[iv], ballot.sh, cfg_.c);
    std::uint32_t wire_id = ballot.id, wire_ev = ev;
    if (hooks_.cast_channel) hooks_.cast_channel(wire_id, wire_ev);
    std::uint64_t seq = cast_vote(cfg_.voters[iv], wire_id, wire_ev);
    if (cfg_.codes) {
      // The voter compares the echoed code against the one on the ballot.
      auto entry = std::get<CastPayload>(decode_payload(board_->entries()[seq].payload));
      if (entry.code != ballot.code) {
        post_complaint("ec1", ec1_sign_, Phase::casting, "code-mismatch",
                       "voter " + cfg_.voters[iv] + " reports a wrong confirmation code",
                       seq);
        code_mismatch_ = true;
      }
    }
  }
  // Verification organizations feed the audited (already invalidated) ballots
  // back in; whatever reaches their slots is excluded from counts and traced.
  for (std::uint32_t iv = 0; iv < cfg_.test_casts; ++iv) {
    const Ballot& ballot = audited_[iv];
    std::uint32_t tv = static_cast<std::uint32_t>(voter_rng_.uniform_u64(cfg_.c));
    test_votes_.push_back(tv);
    do_cast("auditor-" + std::to_string(iv), ballot.id, encrypt_vote(tv, ballot.sh, cfg_.c));
  }
}

void Election::recover_votes() {
  expect_step(5, "recover_votes");
  VoteList list0;
  list0.stage = 0;
  list0.slots.resize(cfg_.n);
  for (const BBEntry& e : board_->entries()) {
    if (e.phase != Phase::casting) continue;
    Payload p = decode_payload(e.payload);
    if (auto* cast = std::get_if<CastPayload>(&p)) list0.slots[cast->position] = cast->onion;
  }
  MixListPayload p0{1, 0, {}, list0};
  board_->sign_and_post("ec1", Phase::recovery, encode_payload(p0), ec1_sign_);
  recovery_lists_.push_back(std::move(list0));

  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    mpz_class remaining = remaining_recovery(i);
    VoteList out = server_process_recovery(gp_, servers_[i - 1], remaining,
                                           recovery_lists_[i - 1], server_rng_[i - 1]);
    if (hooks_.recovery_output) {
      ServerPassCtx ctx{gp_, i, remaining, servers_[i - 1], server_rng_[i - 1]};
      hooks_.recovery_output(ctx, recovery_lists_[i - 1], out);
    }
    MixListPayload pl{1, i, {}, out};
    board_->sign_and_post("server-" + std::to_string(i), Phase::recovery,
                          encode_payload(pl), server_sign_[i - 1]);
    recovery_lists_.push_back(std::move(out));
  }
}

void Election::audit_stage2() {
  expect_step(6, "audit_stage2");
  run_rpc_round(1);
  for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
    std::vector<Validator> batch = build_validator_batch(i, 1);
    if (hooks_.validators2) hooks_.validators2(i, batch);
    ValidatorsPayload vp{2, i, batch};
    board_->sign_and_post("server-" + std::to_string(i), Phase::reveal2,
                          encode_payload(vp), server_sign_[i - 1]);
  }
}

void Election::publish_tally() {
  expect_step(7, "publish_tally");
  tally_.counts.assign(cfg_.c, 0);
  const VoteList& final_list = recovery_lists_[cfg_.lambda];
  for (std::uint32_t s = 0; s < cfg_.n; ++s) {
    if (!final_list.slots[s]) continue;
    // All server layers are stripped, so the first component is the plaintext.
    auto v = decode_h_power(table_, final_list.slots[s]->a);
    if (!v) {
      tally_.undecodable.push_back(s);
      post_complaint("ec2", ec2_sign_, Phase::tally, errc::decode_failure,
                     "final slot " + std::to_string(s) + " holds no valid vote", 0);
      continue;
    }
    if (compromised_.count(s)) {
      tally_.test_hits.emplace_back(s, *v);
    } else {
      tally_.counted.emplace_back(s, *v);
      ++tally_.counts[*v];
    }
  }
  TallyPayload tp{tally_.counts, tally_.counted, tally_.test_hits, tally_.undecodable};
  board_->sign_and_post("ec2", Phase::tally, encode_payload(tp), ec2_sign_);
}

void Election::trace_invalid() {
  expect_step(8, "trace_invalid");
  std::vector<std::vector<std::uint32_t>> perm_inv(cfg_.lambda,
                                                   std::vector<std::uint32_t>(cfg_.n));
  for (std::uint32_t i = 0; i < cfg_.lambda; ++i)
    for (std::uint32_t j = 0; j < cfg_.n; ++j) perm_inv[i][servers_[i].perm[j]] = j;

  for (auto [final_slot, value] : tally_.test_hits) {
    (void)value;
    std::vector<std::uint32_t> hops(cfg_.lambda + 1);
    hops[cfg_.lambda] = final_slot;
    for (std::uint32_t i = cfg_.lambda; i >= 1; --i)
      hops[i - 1] = perm_inv[i - 1][hops[i]];

    for (std::uint32_t i = 1; i <= cfg_.lambda; ++i) {
      RevealSet allowed;
      allowed.inputs.insert(hops[i - 1]);
      Validator validator =
          make_validator(gp_, servers_[i - 1], hops[i - 1], false, true, nullptr,
                         &recovery_lists_[i - 1], allowed, server_rng_[i - 1]);
      TraceStepPayload step{final_slot, i, hops[i - 1], hops[i], validator};
      board_->sign_and_post("server-" + std::to_string(i), Phase::trace,
                            encode_payload(step), server_sign_[i - 1]);
    }
    TraceResult result;
    result.final_slot = final_slot;
    result.path = hops;
    auto it = casts_by_position_.find(hops[0]);
    if (it != casts_by_position_.end()) {
      result.cast_seq = it->second.seq;
      result.voter = it->second.voter;
    }
    traces_.push_back(std::move(result));
  }
}

void Election::run() {
  setup();
  create_ballots();
  audit_stage1();
  distribute();
  cast_votes();
  recover_votes();
  audit_stage2();
  publish_tally();
  trace_invalid();
}

Transcript Election::transcript() const {
  return Transcript{gp_, cfg_.n, cfg_.lambda, board_->entries()};
}

}  // namespace mixvote
