#include "mixvote/tamper.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <utility>

#include "mixvote/errors.hpp"
#include "mixvote/group.hpp"
#include "mixvote/verifier.hpp"

namespace mixvote {

namespace {

const std::vector<std::string> kKinds = {
    "none",           "replace-onion",  "wrong-partial-decrypt", "inconsistent-l",
    "forge-validator", "swap-outputs",  "ec2-lie-on-audit",      "mitm-alter-id",
};

std::uint32_t parse_u32(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used);
  } catch (const std::exception&) {
    throw Error(errc::unknown_strategy, "bad number in selector " + where + "=" + text);
  }
  if (used != text.size() || v > 0xffffffffUL)
    throw Error(errc::unknown_strategy, "bad number in selector " + where + "=" + text);
  return static_cast<std::uint32_t>(v);
}

// Shared mutable state captured by every hook of one strategy instance.
struct TamperState {
  TamperStrategy strategy;
  std::uint32_t n = 0;
  std::uint32_t c = 0;
  std::uint32_t lambda = 0;
  HashDrbg rng;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sites;  // (server, output/input slot)
  std::uint32_t applied = 0;
  bool forged = false;
};

std::uint32_t draw(HashDrbg& rng, std::uint32_t bound) {
  return static_cast<std::uint32_t>(rng.uniform_u64(bound));
}

// (server, slot) targets; pinned coordinates reused, free ones drawn without
// repeats so `count` applications hit `count` distinct places.
void draw_sites(TamperState& st, std::uint32_t count) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  std::uint32_t limit = st.lambda * st.n;
  if (count > limit) count = limit;
  while (st.sites.size() < count) {
    std::uint32_t server = st.strategy.server ? *st.strategy.server : 1 + draw(st.rng, st.lambda);
    std::uint32_t slot = st.strategy.slot ? *st.strategy.slot : draw(st.rng, st.n);
    if (!seen.insert({server, slot}).second) {
      if (st.strategy.server && st.strategy.slot) break;  // fully pinned: one site only
      continue;
    }
    st.sites.push_back({server, slot});
  }
}

using StatePtr = std::shared_ptr<TamperState>;

// Fresh rotation onion under the keys still wrapping this stage's output.
// Valid ciphertext of a random rotation, so only the audit can tell.
Hooks hooks_replace_onion(StatePtr st) {
  Hooks hooks;
  hooks.creation_output = [st](ServerPassCtx& ctx, const PairList&, PairList& out) {
    for (const auto& [server, slot] : st->sites) {
      if (server != ctx.server) continue;
      std::uint32_t value = draw(st->rng, ctx.gp.c);
      mpz_class k = st->rng.uniform_unit(ctx.gp.q);
      out.slots.at(slot).rot_onion = exp_encrypt(ctx.gp, ctx.remaining, value, k);
    }
  };
  return hooks;
}

// Dividing the a-component by b is exactly what decrypting with x+1 instead
// of x produces; both onions of the slot suffer the same wrong key.
Hooks hooks_wrong_partial_decrypt(StatePtr st) {
  Hooks hooks;
  hooks.creation_output = [st](ServerPassCtx& ctx, const PairList& in, PairList& out) {
    for (const auto& [server, slot] : st->sites) {
      if (server != ctx.server) continue;
      std::uint32_t dst = ctx.secret.perm.at(slot);
      OnionPair& target = out.slots.at(dst);
      target.id_onion.a =
          mod_mul(target.id_onion.a, mod_inv(in.slots.at(slot).id_onion.b, ctx.gp.p), ctx.gp.p);
      target.rot_onion.a =
          mod_mul(target.rot_onion.a, mod_inv(in.slots.at(slot).rot_onion.b, ctx.gp.p), ctx.gp.p);
    }
  };
  return hooks;
}

// Creation added l; recovery removes l+1. One extra h^-1 on the a-component.
Hooks hooks_inconsistent_l(StatePtr st) {
  Hooks hooks;
  hooks.recovery_output = [st](ServerPassCtx& ctx, const VoteList& in, VoteList& out) {
    for (const auto& [server, slot] : st->sites) {
      if (server != ctx.server) continue;
      std::uint32_t src = slot;
      if (!in.slots.at(src).has_value()) {  // slot carries no vote; take the next that does
        std::vector<std::uint32_t> occupied;
        for (std::uint32_t j = 0; j < in.slots.size(); ++j)
          if (in.slots[j].has_value()) occupied.push_back(j);
        if (occupied.empty()) return;
        src = occupied[draw(st->rng, static_cast<std::uint32_t>(occupied.size()))];
      }
      std::uint32_t dst = ctx.secret.perm.at(src);
      Ciphertext& target = out.slots.at(dst).value();
      mpz_class extra = mod_pow(ctx.gp.h, ctx.gp.c - 1, ctx.gp.p);
      target.a = mod_mul(target.a, extra, ctx.gp.p);
    }
  };
  return hooks;
}

// First published randomizer of the first non-empty batch gets bumped by one,
// so the opening no longer reproduces the posted onion.
Hooks hooks_forge_validator(StatePtr st) {
  Hooks hooks;
  hooks.validators1 = [st](std::uint32_t server, std::vector<Validator>& batch) {
    if (st->forged || batch.empty()) return;
    if (st->strategy.server && *st->strategy.server != server) return;
    Validator& v = batch.front();
    v.k_id = v.k_id + 1;
    st->forged = true;
  };
  // Reveal plans can leave a stage-1 batch empty; fall through to stage 2.
  hooks.validators2 = [st](std::uint32_t server, std::vector<Validator>& batch) {
    if (st->forged || batch.empty()) return;
    if (st->strategy.server && *st->strategy.server != server) return;
    for (Validator& v : batch) {
      if (v.has_creation) {
        v.k_id = v.k_id + 1;
        st->forged = true;
        return;
      }
      if (v.has_recovery && v.rec_occupied) {
        v.k_rec = v.k_rec + 1;
        st->forged = true;
        return;
      }
    }
  };
  return hooks;
}

// Two creation output slots exchanged behind the committed permutation.
Hooks hooks_swap_outputs(StatePtr st) {
  Hooks hooks;
  hooks.creation_output = [st](ServerPassCtx& ctx, const PairList&, PairList& out) {
    for (const auto& [server, slot] : st->sites) {
      if (server != ctx.server) continue;
      std::uint32_t other = (slot + 1 + draw(st->rng, st->n - 1)) % st->n;
      std::swap(out.slots.at(slot), out.slots.at(other));
    }
  };
  return hooks;
}

// The printer publishes sh+1 for an audited ballot but cannot re-prove it:
// the equality proofs stay bound to the true plaintexts.
Hooks hooks_ec2_lie(StatePtr st) {
  Hooks hooks;
  hooks.audit_entry = [st](AuditPayload& audit) {
    if (st->applied >= st->strategy.count) return;
    audit.sh = (audit.sh + 1) % st->c;
    ++st->applied;
  };
  return hooks;
}

// A middleman rewrites the ballot identifier on its way to the collector.
Hooks hooks_mitm(StatePtr st) {
  Hooks hooks;
  hooks.cast_channel = [st](std::uint32_t& id, std::uint32_t&) {
    if (st->applied >= st->strategy.count) return;
    id = (id + 1) % st->n;
    ++st->applied;
  };
  return hooks;
}

}  // namespace

const std::vector<std::string>& known_strategies() { return kKinds; }

TamperStrategy parse_strategy(const std::string& text) {
  TamperStrategy s;
  std::string kind = text;
  std::string selectors;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    kind = text.substr(0, colon);
    selectors = text.substr(colon + 1);
  }
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end())
    throw Error(errc::unknown_strategy, "no such tamper kind: " + kind);
  s.kind = kind;

  std::size_t pos = 0;
  while (pos < selectors.size()) {
    std::size_t end = selectors.find(',', pos);
    if (end == std::string::npos) end = selectors.size();
    std::string item = selectors.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(errc::unknown_strategy, "selector needs key=value: " + item);
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "server") {
      s.server = parse_u32(value, key);
    } else if (key == "slot") {
      s.slot = parse_u32(value, key);
    } else if (key == "count") {
      s.count = parse_u32(value, key);
      if (s.count == 0) throw Error(errc::unknown_strategy, "count must be positive");
    } else {
      throw Error(errc::unknown_strategy, "no such selector: " + key);
    }
  }
  return s;
}

Hooks make_tamper_hooks(const TamperStrategy& strategy, const ElectionConfig& cfg,
                        const Bytes& seed) {
  if (std::find(kKinds.begin(), kKinds.end(), strategy.kind) == kKinds.end())
    throw Error(errc::unknown_strategy, "no such tamper kind: " + strategy.kind);
  if (strategy.server && (*strategy.server < 1 || *strategy.server > cfg.lambda))
    throw Error(errc::config_error, "tamper server out of range");
  if (strategy.slot && *strategy.slot >= cfg.n)
    throw Error(errc::config_error, "tamper slot out of range");

  if (strategy.kind == "none") return {};

  auto st = std::make_shared<TamperState>(TamperState{
      strategy, cfg.n, cfg.c, cfg.lambda, HashDrbg(cfg.hash_algo, seed, "tamper"), {}, 0, false});

  if (strategy.kind == "replace-onion") {
    draw_sites(*st, strategy.count);
    return hooks_replace_onion(st);
  }
  if (strategy.kind == "wrong-partial-decrypt") {
    draw_sites(*st, 1);
    return hooks_wrong_partial_decrypt(st);
  }
  if (strategy.kind == "inconsistent-l") {
    draw_sites(*st, 1);
    return hooks_inconsistent_l(st);
  }
  if (strategy.kind == "forge-validator") return hooks_forge_validator(st);
  if (strategy.kind == "swap-outputs") {
    draw_sites(*st, 1);
    return hooks_swap_outputs(st);
  }
  if (strategy.kind == "ec2-lie-on-audit") return hooks_ec2_lie(st);
  return hooks_mitm(st);  // mitm-alter-id
}

double DetectionStats::rate() const { return trials == 0 ? 0.0 : double(detected) / trials; }

namespace {

// 95% Wilson score bounds.
std::pair<double, double> wilson(std::uint32_t hits, std::uint32_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double ph = double(hits) / n;
  double z2n = z * z / n;
  double center = (ph + z2n / 2) / (1 + z2n);
  double half = z * std::sqrt(ph * (1 - ph) / n + z2n / (4.0 * n)) / (1 + z2n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

double DetectionStats::wilson_low() const { return wilson(detected, trials).first; }
double DetectionStats::wilson_high() const { return wilson(detected, trials).second; }

DetectionStats estimate_detection(const ElectionConfig& cfg, const TamperStrategy& strategy,
                                  std::uint32_t trials) {
  validate_config(cfg);
  if (std::find(kKinds.begin(), kKinds.end(), strategy.kind) == kKinds.end())
    throw Error(errc::unknown_strategy, "no such tamper kind: " + strategy.kind);

  DetectionStats stats;
  stats.trials = trials;
  HashDrbg master(cfg.hash_algo, u64_be(cfg.seed), "tamper-trials");
  for (std::uint32_t t = 0; t < trials; ++t) {
    // Each trial's stream is keyed by its index alone, so trials are
    // independent and could run in any order.
    HashDrbg trial_rng = master.fork("trial-" + std::to_string(t));
    ElectionConfig trial_cfg = cfg;
    Bytes trial_seed = trial_rng.bytes(8);
    trial_cfg.seed = 0;
    for (std::uint8_t byte : trial_seed) trial_cfg.seed = (trial_cfg.seed << 8) | byte;
    Bytes site_seed = trial_rng.bytes(32);

    bool detected = false;
    try {
      Election election(trial_cfg, make_tamper_hooks(strategy, trial_cfg, site_seed));
      election.run();
      detected = !all_passed(verify_transcript(election.transcript()));
    } catch (const Error&) {
      detected = true;
      ++stats.aborted;
    }
    if (detected) ++stats.detected;
  }
  return stats;
}

}  // namespace mixvote
