#pragma once

#include "mixvote/board.hpp"
#include "mixvote/rpc.hpp"

namespace mixvote {

// Re-checks a transcript from public data alone: transport (signatures,
// sequencing, phases), structural completeness, challenge and plan
// recomputation, every opened transition, audit proofs, cast onions, the
// recount, and trace chains. Runs every check group it can and reports one
// row per group; overall passes only if every row does and no complaint was
// posted.
AuditReport verify_transcript(const Transcript& transcript);

bool all_passed(const AuditReport& report);

}  // namespace mixvote
