#include "mixvote/payload.hpp"

#include "mixvote/errors.hpp"

namespace mixvote {

static void enc_ct(Enc& enc, const Ciphertext& ct) {
  enc.put_mpz(ct.a);
  enc.put_mpz(ct.b);
}

static Ciphertext dec_ct(Dec& dec) {
  Ciphertext ct;
  ct.a = dec.get_mpz();
  ct.b = dec.get_mpz();
  return ct;
}

static void enc_proof(Enc& enc, const EqDlogProof& pf) {
  enc.put_mpz(pf.t1);
  enc.put_mpz(pf.t2);
  enc.put_mpz(pf.e);
  enc.put_mpz(pf.s);
}

static EqDlogProof dec_proof(Dec& dec) {
  EqDlogProof pf;
  pf.t1 = dec.get_mpz();
  pf.t2 = dec.get_mpz();
  pf.e = dec.get_mpz();
  pf.s = dec.get_mpz();
  return pf;
}

namespace {

struct Encoder {
  Enc enc;

  void operator()(const KeyRegPayload& p) {
    enc.put_str("key");
    enc.put_str(p.actor);
    enc.put_mpz(p.sign_pub);
    enc.put_mpz(p.enc_pub);  // 0 encodes "no decryption key"
  }
  void operator()(const ParamsPayload& p) {
    enc.put_str("params");
    enc.put_mpz(p.gp.p);
    enc.put_mpz(p.gp.q);
    enc.put_u32(p.gp.c);
    enc.put_mpz(p.gp.g);
    enc.put_mpz(p.gp.h);
    enc.put_str(p.gp.hash_algo);
    enc.put_u32(p.n);
    enc.put_u32(p.lambda);
  }
  void operator()(const CommitSetPayload& p) {
    enc.put_str("commitments");
    enc.put_u32(p.server);
    enc.put_u32(static_cast<std::uint32_t>(p.perm_digests.size()));
    for (const Bytes& d : p.perm_digests) enc.put_bytes(d);
    enc.put_u32(static_cast<std::uint32_t>(p.rot_digests.size()));
    for (const Bytes& d : p.rot_digests) enc.put_bytes(d);
  }
  void operator()(const MixListPayload& p) {
    enc.put_str("mix-list");
    enc.put_u8(p.pass);
    enc.put_u32(p.stage);
    if (p.pass == 0) {
      enc.put_u32(static_cast<std::uint32_t>(p.pairs.slots.size()));
      for (const OnionPair& pair : p.pairs.slots) {
        enc_ct(enc, pair.id_onion);
        enc_ct(enc, pair.rot_onion);
      }
    } else {
      enc.put_u32(static_cast<std::uint32_t>(p.votes.slots.size()));
      for (const auto& slot : p.votes.slots) {
        enc.put_u8(slot.has_value() ? 1 : 0);
        if (slot) enc_ct(enc, *slot);
      }
    }
  }
  void operator()(const RandCommitPayload& p) {
    enc.put_str("rand-commit");
    enc.put_u8(p.rpc_stage);
    enc.put_u32(p.server);
    enc.put_bytes(p.digest);
  }
  void operator()(const RandOpenPayload& p) {
    enc.put_str("rand-open");
    enc.put_u8(p.rpc_stage);
    enc.put_u32(p.server);
    enc.put_bytes(p.value);
    enc.put_bytes(p.salt);
  }
  void operator()(const ChallengePayload& p) {
    enc.put_str("challenge");
    enc.put_u8(p.rpc_stage);
    enc.put_u64(p.frozen_seq);
    enc.put_bytes(p.r);
    enc.put_bytes(p.q);
  }
  void operator()(const PlanPayload& p) {
    enc.put_str("plan");
    enc.put_u8(p.rpc_stage);
    enc.put_bytes(p.plan_bytes);
  }
  void operator()(const ValidatorsPayload& p) {
    enc.put_str("validators");
    enc.put_u8(p.rpc_stage);
    enc.put_u32(p.server);
    enc.put_u32(static_cast<std::uint32_t>(p.validators.size()));
    for (const Validator& v : p.validators) enc_validator(enc, v);
  }
  void operator()(const AuditPayload& p) {
    enc.put_str("audit");
    enc.put_u32(p.output_slot);
    enc.put_u32(p.id);
    enc.put_u32(p.sh);
    enc_proof(enc, p.id_proof);
    enc_proof(enc, p.rot_proof);
  }
  void operator()(const CastPayload& p) {
    enc.put_str("cast");
    enc.put_u32(p.position);
    enc.put_str(p.voter);
    enc.put_u32(p.id);
    enc.put_u32(p.ev);
    enc_ct(enc, p.onion);
    enc.put_mpz(p.k0);
    enc.put_str(p.code);
  }
  void operator()(const TallyPayload& p) {
    enc.put_str("tally");
    enc.put_u32(static_cast<std::uint32_t>(p.counts.size()));
    for (std::uint64_t v : p.counts) enc.put_u64(v);
    enc.put_u32(static_cast<std::uint32_t>(p.counted.size()));
    for (auto [slot, value] : p.counted) {
      enc.put_u32(slot);
      enc.put_u32(value);
    }
    enc.put_u32(static_cast<std::uint32_t>(p.test_hits.size()));
    for (auto [slot, value] : p.test_hits) {
      enc.put_u32(slot);
      enc.put_u32(value);
    }
    enc.put_u32(static_cast<std::uint32_t>(p.undecodable.size()));
    for (std::uint32_t slot : p.undecodable) enc.put_u32(slot);
  }
  void operator()(const TraceStepPayload& p) {
    enc.put_str("trace-step");
    enc.put_u32(p.final_slot);
    enc.put_u32(p.server);
    enc.put_u32(p.from_slot);
    enc.put_u32(p.to_slot);
    enc_validator(enc, p.validator);
  }
  void operator()(const ComplaintPayload& p) {
    enc.put_str("complaint");
    enc.put_str(p.code);
    enc.put_str(p.detail);
    enc.put_u64(p.about_seq);
  }
};

}  // namespace

Bytes encode_payload(const Payload& payload) {
  Encoder encoder;
  std::visit(encoder, payload);
  return encoder.enc.take();
}

std::string payload_kind(const Payload& payload) {
  Bytes data = encode_payload(payload);
  Dec dec(data);
  return dec.get_str();
}

Payload decode_payload(const Bytes& data) {
  Dec dec(data);
  std::string kind = dec.get_str();
  auto done = [&dec](Payload p) {
    dec.expect_end();
    return p;
  };
  if (kind == "key") {
    KeyRegPayload p;
    p.actor = dec.get_str();
    p.sign_pub = dec.get_mpz();
    p.enc_pub = dec.get_mpz();
    return done(p);
  }
  if (kind == "params") {
    ParamsPayload p;
    p.gp.p = dec.get_mpz();
    p.gp.q = dec.get_mpz();
    p.gp.c = dec.get_u32();
    p.gp.g = dec.get_mpz();
    p.gp.h = dec.get_mpz();
    p.gp.hash_algo = dec.get_str();
    p.n = dec.get_u32();
    p.lambda = dec.get_u32();
    return done(p);
  }
  if (kind == "commitments") {
    CommitSetPayload p;
    p.server = dec.get_u32();
    p.perm_digests.resize(dec.get_u32());
    for (Bytes& d : p.perm_digests) d = dec.get_bytes();
    p.rot_digests.resize(dec.get_u32());
    for (Bytes& d : p.rot_digests) d = dec.get_bytes();
    return done(p);
  }
  if (kind == "mix-list") {
    MixListPayload p;
    p.pass = dec.get_u8();
    p.stage = dec.get_u32();
    std::uint32_t count = dec.get_u32();
    if (p.pass == 0) {
      p.pairs.stage = p.stage;
      p.pairs.slots.resize(count);
      for (OnionPair& pair : p.pairs.slots) {
        pair.id_onion = dec_ct(dec);
        pair.rot_onion = dec_ct(dec);
      }
    } else {
      p.votes.stage = p.stage;
      p.votes.slots.resize(count);
      for (auto& slot : p.votes.slots)
        if (dec.get_u8() != 0) slot = dec_ct(dec);
    }
    return done(p);
  }
  if (kind == "rand-commit") {
    RandCommitPayload p;
    p.rpc_stage = dec.get_u8();
    p.server = dec.get_u32();
    p.digest = dec.get_bytes();
    return done(p);
  }
  if (kind == "rand-open") {
    RandOpenPayload p;
    p.rpc_stage = dec.get_u8();
    p.server = dec.get_u32();
    p.value = dec.get_bytes();
    p.salt = dec.get_bytes();
    return done(p);
  }
  if (kind == "challenge") {
    ChallengePayload p;
    p.rpc_stage = dec.get_u8();
    p.frozen_seq = dec.get_u64();
    p.r = dec.get_bytes();
    p.q = dec.get_bytes();
    return done(p);
  }
  if (kind == "plan") {
    PlanPayload p;
    p.rpc_stage = dec.get_u8();
    p.plan_bytes = dec.get_bytes();
    return done(p);
  }
  if (kind == "validators") {
    ValidatorsPayload p;
    p.rpc_stage = dec.get_u8();
    p.server = dec.get_u32();
    p.validators.resize(dec.get_u32());
    for (Validator& v : p.validators) v = dec_validator(dec);
    return done(p);
  }
  if (kind == "audit") {
    AuditPayload p;
    p.output_slot = dec.get_u32();
    p.id = dec.get_u32();
    p.sh = dec.get_u32();
    p.id_proof = dec_proof(dec);
    p.rot_proof = dec_proof(dec);
    return done(p);
  }
  if (kind == "cast") {
    CastPayload p;
    p.position = dec.get_u32();
    p.voter = dec.get_str();
    p.id = dec.get_u32();
    p.ev = dec.get_u32();
    p.onion = dec_ct(dec);
    p.k0 = dec.get_mpz();
    p.code = dec.get_str();
    return done(p);
  }
  if (kind == "tally") {
    TallyPayload p;
    p.counts.resize(dec.get_u32());
    for (std::uint64_t& v : p.counts) v = dec.get_u64();
    p.counted.resize(dec.get_u32());
    for (auto& [slot, value] : p.counted) {
      slot = dec.get_u32();
      value = dec.get_u32();
    }
    p.test_hits.resize(dec.get_u32());
    for (auto& [slot, value] : p.test_hits) {
      slot = dec.get_u32();
      value = dec.get_u32();
    }
    p.undecodable.resize(dec.get_u32());
    for (std::uint32_t& slot : p.undecodable) slot = dec.get_u32();
    return done(p);
  }
  if (kind == "trace-step") {
    TraceStepPayload p;
    p.final_slot = dec.get_u32();
    p.server = dec.get_u32();
    p.from_slot = dec.get_u32();
    p.to_slot = dec.get_u32();
    p.validator = dec_validator(dec);
    return done(p);
  }
  if (kind == "complaint") {
    ComplaintPayload p;
    p.code = dec.get_str();
    p.detail = dec.get_str();
    p.about_seq = dec.get_u64();
    return done(p);
  }
  throw Error(errc::transcript_malformed, "unknown payload kind: " + kind);
}

}  // namespace mixvote
