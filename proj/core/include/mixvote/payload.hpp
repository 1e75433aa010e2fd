#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mixvote/group.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/nizk.hpp"
#include "mixvote/rpc.hpp"

namespace mixvote {

// Typed bodies of bulletin-board entries. Every record self-identifies with a
// kind string so decoding dispatches without out-of-band context.

struct KeyRegPayload {
  std::string actor;
  mpz_class sign_pub;
  mpz_class enc_pub;  // 0 when the actor holds no decryption key
};

struct ParamsPayload {
  GroupParams gp;
  std::uint32_t n = 0;
  std::uint32_t lambda = 0;
};

// One actor's transition commitments, one board entry per actor. Server 0 is
// the sender: a single digest binding its whole input permutation (rot_digests
// empty). Servers 1..λ commit per input slot — a permutation-entry digest and
// a rotation-value digest each — so single transitions can open later.
struct CommitSetPayload {
  std::uint32_t server = 0;
  std::vector<Bytes> perm_digests;
  std::vector<Bytes> rot_digests;
};

struct MixListPayload {
  std::uint8_t pass = 0;  // 0 creation, 1 recovery
  std::uint32_t stage = 0;
  PairList pairs;
  VoteList votes;
};

struct RandCommitPayload {
  std::uint8_t rpc_stage = 1;
  std::uint32_t server = 0;
  Bytes digest;
};

struct RandOpenPayload {
  std::uint8_t rpc_stage = 1;
  std::uint32_t server = 0;
  Bytes value;
  Bytes salt;
};

struct ChallengePayload {
  std::uint8_t rpc_stage = 1;
  std::uint64_t frozen_seq = 0;  // challenge covers entries [0, frozen_seq]
  Bytes r;
  Bytes q;
};

struct PlanPayload {
  std::uint8_t rpc_stage = 1;
  Bytes plan_bytes;  // canonical Stage1Plan / Stage2Plan encoding
};

struct ValidatorsPayload {
  std::uint8_t rpc_stage = 1;
  std::uint32_t server = 0;
  std::vector<Validator> validators;
};

// Public opening of one audited ballot: the claimed identifier and rotation
// with proofs they match the final creation-list onions at output_slot.
struct AuditPayload {
  std::uint32_t output_slot = 0;
  std::uint32_t id = 0;
  std::uint32_t sh = 0;
  EqDlogProof id_proof;
  EqDlogProof rot_proof;
};

struct CastPayload {
  std::uint32_t position = 0;  // input-list slot the vote onion occupies
  std::string voter;
  std::uint32_t id = 0;
  std::uint32_t ev = 0;  // marked position on the rotated ballot
  Ciphertext onion;
  mpz_class k0;  // onion randomizer, published so anyone can recheck
  std::string code;
};

struct TallyPayload {
  std::vector<std::uint64_t> counts;  // per candidate
  std::vector<std::pair<std::uint32_t, std::uint32_t>> counted;    // (slot, value)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> test_hits;  // compromised slots
  std::vector<std::uint32_t> undecodable;
};

struct TraceStepPayload {
  std::uint32_t final_slot = 0;
  std::uint32_t server = 0;
  std::uint32_t from_slot = 0;
  std::uint32_t to_slot = 0;
  Validator validator;  // recovery-only opening for this hop
};

struct ComplaintPayload {
  std::string code;
  std::string detail;
  std::uint64_t about_seq = 0;
};

using Payload =
    std::variant<KeyRegPayload, ParamsPayload, CommitSetPayload, MixListPayload,
                 RandCommitPayload, RandOpenPayload, ChallengePayload, PlanPayload,
                 ValidatorsPayload, AuditPayload, CastPayload, TallyPayload,
                 TraceStepPayload, ComplaintPayload>;

Bytes encode_payload(const Payload& payload);
Payload decode_payload(const Bytes& data);  // throws transcript-malformed
std::string payload_kind(const Payload& payload);

}  // namespace mixvote
