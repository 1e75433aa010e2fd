#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixvote/protocol.hpp"

namespace mixvote {

// One concrete way to sabotage a run. Each kind mutates exactly one actor's
// behavior or one board payload:
//   none                  control run, nothing altered
//   replace-onion         a server swaps a fresh rotation onion into one
//                         creation output slot (silently flips that vote)
//   wrong-partial-decrypt a server strips its layer with the wrong key at one
//                         creation slot
//   inconsistent-l        a server subtracts l+1 in recovery after adding l in
//                         creation at one slot
//   forge-validator       a server publishes a doctored randomizer in its
//                         first audit opening
//   swap-outputs          a server swaps two creation output slots
//   ec2-lie-on-audit      the printer publishes sh+1 for an audited ballot
//   mitm-alter-id         the cast channel rewrites the ballot identifier
struct TamperStrategy {
  std::string kind = "none";
  std::optional<std::uint32_t> server;  // 1-based; drawn fresh per run when absent
  std::optional<std::uint32_t> slot;    // drawn fresh per run when absent
  std::uint32_t count = 1;              // independent applications (replace-onion, mitm)
};

// Accepts "<kind>" or "<kind>:server=2,slot=5,count=2".
// Unknown kind or a malformed selector throws unknown-strategy.
TamperStrategy parse_strategy(const std::string& text);

const std::vector<std::string>& known_strategies();

// Hook set realizing the strategy. `seed` drives every choice the strategy
// leaves open (targets, replacement values), so runs reproduce exactly.
Hooks make_tamper_hooks(const TamperStrategy& strategy, const ElectionConfig& cfg,
                        const Bytes& seed);

struct DetectionStats {
  std::uint32_t trials = 0;
  std::uint32_t detected = 0;
  std::uint32_t aborted = 0;  // runs the protocol refused to finish (counted detected)

  double rate() const;
  // 95% Wilson score interval for the detection rate.
  double wilson_low() const;
  double wilson_high() const;
};

// Runs `trials` full elections with the strategy active — fresh challenges,
// keys, and targets each trial — and counts the runs where the public
// transcript fails verification (or the protocol aborts outright).
DetectionStats estimate_detection(const ElectionConfig& cfg, const TamperStrategy& strategy,
                                  std::uint32_t trials);

}  // namespace mixvote
