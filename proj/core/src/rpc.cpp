#include "mixvote/rpc.hpp"

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

Bytes xor_randomness(const std::vector<Bytes>& contributions) {
  if (contributions.empty())
    throw Error(errc::randomness_abort, "no randomness contributions");
  Bytes r(contributions.front().size(), 0);
  for (const Bytes& c : contributions) {
    if (c.size() != r.size())
      throw Error(errc::randomness_abort, "contribution size mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) r[i] ^= c[i];
  }
  return r;
}

Bytes derive_challenge(const std::string& algo, const Bytes& r, const Bytes& board_hash) {
  Enc enc;
  enc.put_bytes(r);
  enc.put_bytes(board_hash);
  return tagged_hash(algo, tag::chal, enc.bytes());
}

Bytes subchallenge(const std::string& algo, const Bytes& q, std::uint32_t index) {
  Enc enc;
  enc.put_bytes(q);
  enc.put_u32(index);
  return tagged_hash(algo, tag::chal, enc.bytes());
}

static void check_shape(std::uint32_t n, std::uint32_t lambda) {
  if (n < 2) throw Error(errc::config_error, "a one-slot list cannot mix");
  if (lambda < 4 || lambda % 4 != 0)
    throw Error(errc::config_error, "server count must be a positive multiple of four");
}

Stage1Plan plan_stage1(const std::string& algo, std::uint32_t n, std::uint32_t lambda,
                       const Bytes& q) {
  check_shape(n, lambda);
  Stage1Plan plan;
  plan.n = n;
  plan.lambda = lambda;
  std::uint32_t pairs = lambda / 2;
  plan.decisions.resize(pairs);
  for (std::uint32_t t = 0; t < pairs; ++t) {
    HashDrbg stream(algo, subchallenge(algo, q, t + 1), "s1");
    plan.decisions[t].resize(n);
    for (std::uint32_t m = 0; m < n; ++m) {
      bool b1 = stream.bit();
      bool b2 = stream.bit();
      plan.decisions[t][m] = b1 ? kRevealNone : (b2 ? kRevealRight : kRevealLeft);
    }
  }
  return plan;
}

Stage2Plan plan_stage2(const std::string& algo, std::uint32_t n, std::uint32_t lambda,
                       const Bytes& q, const Stage1Plan& stage1) {
  check_shape(n, lambda);
  if (stage1.n != n || stage1.lambda != lambda)
    throw Error(errc::config_error, "stage-1 plan shape mismatch");
  Stage2Plan plan;
  plan.n = n;
  plan.lambda = lambda;
  std::uint32_t pairs = lambda / 2;
  std::uint32_t tuples = pairs / 2;

  plan.completing.resize(tuples);
  HashDrbg tuple_stream(algo, q, "s2-tuple");
  for (std::uint32_t tu = 0; tu < tuples; ++tu)
    plan.completing[tu] = tuple_stream.bit() ? 1 : 0;

  auto pair_completes = [&](std::uint32_t t) { return plan.completing[t / 2] == t % 2; };

  plan.completion.assign(pairs, std::vector<std::uint8_t>(n, kRevealNone));
  plan.independent.assign(lambda, std::vector<std::uint8_t>(n, 0));

  for (std::uint32_t t = 0; t < pairs; ++t) {
    if (pair_completes(t)) {
      HashDrbg stream(algo, subchallenge(algo, q, t + 1), "s2-comp");
      for (std::uint32_t m = 0; m < n; ++m) {
        bool side = stream.bit();  // drawn for every slot to keep alignment
        if (stage1.decisions[t][m] == kRevealNone)
          plan.completion[t][m] = side ? kRevealRight : kRevealLeft;
      }
    } else {
      for (std::uint32_t side = 0; side < 2; ++side) {
        std::uint32_t server = 2 * t + 1 + side;  // 1-based
        HashDrbg stream(algo, subchallenge(algo, q, 1000 + server), "s2-ind");
        for (std::uint32_t j = 0; j < n; ++j)
          plan.independent[server - 1][j] = stream.bit() ? 1 : 0;
      }
    }
  }
  return plan;
}

Bytes encode_stage1_plan(const Stage1Plan& plan) {
  Enc enc;
  enc.put_u32(plan.n);
  enc.put_u32(plan.lambda);
  enc.put_u32(static_cast<std::uint32_t>(plan.decisions.size()));
  for (const auto& row : plan.decisions) {
    enc.put_u32(static_cast<std::uint32_t>(row.size()));
    for (std::uint8_t d : row) enc.put_u8(d);
  }
  return enc.take();
}

Stage1Plan decode_stage1_plan(const Bytes& data) {
  Dec dec(data);
  Stage1Plan plan;
  plan.n = dec.get_u32();
  plan.lambda = dec.get_u32();
  plan.decisions.resize(dec.get_u32());
  for (auto& row : plan.decisions) {
    row.resize(dec.get_u32());
    for (auto& d : row) d = dec.get_u8();
  }
  dec.expect_end();
  return plan;
}

Bytes encode_stage2_plan(const Stage2Plan& plan) {
  Enc enc;
  enc.put_u32(plan.n);
  enc.put_u32(plan.lambda);
  enc.put_u32(static_cast<std::uint32_t>(plan.completing.size()));
  for (std::uint8_t cpl : plan.completing) enc.put_u8(cpl);
  enc.put_u32(static_cast<std::uint32_t>(plan.completion.size()));
  for (const auto& row : plan.completion) {
    enc.put_u32(static_cast<std::uint32_t>(row.size()));
    for (std::uint8_t d : row) enc.put_u8(d);
  }
  enc.put_u32(static_cast<std::uint32_t>(plan.independent.size()));
  for (const auto& row : plan.independent) {
    enc.put_u32(static_cast<std::uint32_t>(row.size()));
    for (std::uint8_t d : row) enc.put_u8(d);
  }
  return enc.take();
}

Stage2Plan decode_stage2_plan(const Bytes& data) {
  Dec dec(data);
  Stage2Plan plan;
  plan.n = dec.get_u32();
  plan.lambda = dec.get_u32();
  plan.completing.resize(dec.get_u32());
  for (auto& cpl : plan.completing) cpl = dec.get_u8();
  plan.completion.resize(dec.get_u32());
  for (auto& row : plan.completion) {
    row.resize(dec.get_u32());
    for (auto& d : row) d = dec.get_u8();
  }
  plan.independent.resize(dec.get_u32());
  for (auto& row : plan.independent) {
    row.resize(dec.get_u32());
    for (auto& d : row) d = dec.get_u8();
  }
  dec.expect_end();
  return plan;
}

RevealSet stage1_reveals(const Stage1Plan& plan, std::uint32_t server) {
  if (server == 0 || server > plan.lambda)
    throw Error(errc::config_error, "server index out of range");
  RevealSet set;
  std::uint32_t t = (server - 1) / 2;
  bool left = (server - 1) % 2 == 0;
  for (std::uint32_t m = 0; m < plan.n; ++m) {
    if (left && plan.decisions[t][m] == kRevealLeft) set.outputs.insert(m);
    if (!left && plan.decisions[t][m] == kRevealRight) set.inputs.insert(m);
  }
  return set;
}

RevealSet stage2_new_reveals(const Stage2Plan& plan, const Stage1Plan& stage1,
                             std::uint32_t server,
                             const std::set<std::uint32_t>& stage1_input_slots) {
  if (server == 0 || server > plan.lambda)
    throw Error(errc::config_error, "server index out of range");
  RevealSet set;
  std::uint32_t t = (server - 1) / 2;
  bool left = (server - 1) % 2 == 0;
  (void)stage1;
  for (std::uint32_t m = 0; m < plan.n; ++m) {
    if (left && plan.completion[t][m] == kRevealLeft) set.outputs.insert(m);
    if (!left && plan.completion[t][m] == kRevealRight) set.inputs.insert(m);
  }
  for (std::uint32_t j = 0; j < plan.n; ++j)
    if (plan.independent[server - 1][j] == 1 && !stage1_input_slots.count(j))
      set.inputs.insert(j);
  return set;
}

Bytes perm_entry_payload(std::uint32_t server, std::uint32_t slot, std::uint32_t value) {
  Enc enc;
  enc.put_u32(server);
  enc.put_u32(slot);
  enc.put_u32(value);
  return enc.take();
}

Bytes rot_entry_payload(std::uint32_t server, std::uint32_t slot, std::uint32_t value) {
  Enc enc;
  enc.put_u32(server);
  enc.put_u32(slot);
  enc.put_u32(value);
  return enc.take();
}

Bytes full_perm_payload(const std::vector<std::uint32_t>& perm) {
  Enc enc;
  enc.put_u32(static_cast<std::uint32_t>(perm.size()));
  for (std::uint32_t v : perm) enc.put_u32(v);
  return enc.take();
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

void enc_validator(Enc& enc, const Validator& v) {
  enc.put_u32(v.server);
  enc.put_u32(v.input_slot);
  enc.put_u32(v.perm_value);
  enc.put_bytes(v.perm_salt);
  enc.put_u32(v.l_value);
  enc.put_bytes(v.l_salt);
  enc.put_u8(v.has_creation ? 1 : 0);
  if (v.has_creation) {
    enc.put_mpz(v.k_id);
    enc.put_mpz(v.k_rot);
    enc.put_mpz(v.share_id);
    enc.put_mpz(v.share_rot);
    enc_proof(enc, v.proof_id);
    enc_proof(enc, v.proof_rot);
  }
  enc.put_u8(v.has_recovery ? 1 : 0);
  if (v.has_recovery) {
    enc.put_u8(v.rec_occupied ? 1 : 0);
    if (v.rec_occupied) {
      enc.put_mpz(v.k_rec);
      enc.put_mpz(v.share_rec);
      enc_proof(enc, v.proof_rec);
    }
  }
}

Validator dec_validator(Dec& dec) {
  Validator v;
  v.server = dec.get_u32();
  v.input_slot = dec.get_u32();
  v.perm_value = dec.get_u32();
  v.perm_salt = dec.get_bytes();
  v.l_value = dec.get_u32();
  v.l_salt = dec.get_bytes();
  v.has_creation = dec.get_u8() != 0;
  if (v.has_creation) {
    v.k_id = dec.get_mpz();
    v.k_rot = dec.get_mpz();
    v.share_id = dec.get_mpz();
    v.share_rot = dec.get_mpz();
    v.proof_id = dec_proof(dec);
    v.proof_rot = dec_proof(dec);
  }
  v.has_recovery = dec.get_u8() != 0;
  if (v.has_recovery) {
    v.rec_occupied = dec.get_u8() != 0;
    if (v.rec_occupied) {
      v.k_rec = dec.get_mpz();
      v.share_rec = dec.get_mpz();
      v.proof_rec = dec_proof(dec);
    }
  }
  return v;
}

Bytes encode_validator(const Validator& v) {
  Enc enc;
  enc_validator(enc, v);
  return enc.take();
}

Validator decode_validator(const Bytes& data) {
  Dec dec(data);
  Validator v = dec_validator(dec);
  dec.expect_end();
  return v;
}

Validator make_validator(const GroupParams& gp, const MixServerSecret& secret,
                         std::uint32_t input_slot, bool include_creation,
                         bool include_recovery, const PairList* creation_in,
                         const VoteList* recovery_in, const RevealSet& allowed,
                         HashDrbg& nonce_rng) {
  std::uint32_t n = static_cast<std::uint32_t>(secret.perm.size());
  if (input_slot >= n) throw Error(errc::malformed_list, "input slot out of range");
  std::uint32_t out_slot = secret.perm[input_slot];
  if (!allowed.inputs.count(input_slot) && !allowed.outputs.count(out_slot))
    throw Error(errc::over_reveal, "transition not selected by the audit plan");

  Validator v;
  v.server = secret.index;
  v.input_slot = input_slot;
  v.perm_value = out_slot;
  v.perm_salt = secret.perm_salts.at(input_slot);
  v.l_value = secret.rotations[input_slot];
  v.l_salt = secret.rot_salts.at(input_slot);

  const mpz_class& x = secret.enc_key.x;
  if (include_creation) {
    if (!creation_in) throw Error(errc::malformed_list, "creation input list required");
    const OnionPair& in = creation_in->slots.at(input_slot);
    v.has_creation = true;
    v.k_id = secret.k_id.at(input_slot);
    v.k_rot = secret.k_rot.at(input_slot);
    v.share_id = mod_pow(in.id_onion.b, x, gp.p);
    v.share_rot = mod_pow(in.rot_onion.b, x, gp.p);
    v.proof_id = prove_eq_dlog(gp, x, 1, {v.share_id, in.id_onion.b},
                               nonce_rng.uniform_unit(gp.q));
    v.proof_rot = prove_eq_dlog(gp, x, 1, {v.share_rot, in.rot_onion.b},
                                nonce_rng.uniform_unit(gp.q));
  }
  if (include_recovery) {
    if (!recovery_in) throw Error(errc::malformed_list, "recovery input list required");
    v.has_recovery = true;
    const auto& slot = recovery_in->slots.at(input_slot);
    if (slot.has_value()) {
      v.rec_occupied = true;
      v.k_rec = secret.k_rec.at(input_slot).value();
      v.share_rec = mod_pow(slot->b, x, gp.p);
      v.proof_rec = prove_eq_dlog(gp, x, 1, {v.share_rec, slot->b},
                                  nonce_rng.uniform_unit(gp.q));
    }
  }
  return v;
}

bool verify_edge(const EdgeContext& ctx, const Validator& v) {
  const GroupParams& gp = *ctx.gp;
  std::uint32_t n = ctx.perm_digests ? static_cast<std::uint32_t>(ctx.perm_digests->size()) : 0;
  if (v.input_slot >= n || v.perm_value >= n) return false;
  if (v.l_value >= gp.c) return false;

  if (!open_commitment(gp.hash_algo, tag::perm,
                       {(*ctx.perm_digests)[v.input_slot]},
                       perm_entry_payload(v.server, v.input_slot, v.perm_value),
                       v.perm_salt))
    return false;
  if (!open_commitment(gp.hash_algo, tag::lval,
                       {(*ctx.rot_digests)[v.input_slot]},
                       rot_entry_payload(v.server, v.input_slot, v.l_value), v.l_salt))
    return false;

  auto in_group = [&](const mpz_class& e) { return e > 0 && e < gp.p; };
  auto k_ok = [&](const mpz_class& k) { return k > 0 && k < gp.q; };

  if (v.has_creation) {
    if (!ctx.creation_in || !ctx.creation_out) return false;
    const OnionPair& in = ctx.creation_in->slots[v.input_slot];
    const OnionPair& out = ctx.creation_out->slots[v.perm_value];
    if (!k_ok(v.k_id) || !k_ok(v.k_rot)) return false;
    if (!in_group(v.share_id) || !in_group(v.share_rot)) return false;
    if (!verify_eq_dlog(gp, ctx.server_pub, 1, {v.share_id, in.id_onion.b}, v.proof_id))
      return false;
    if (!verify_eq_dlog(gp, ctx.server_pub, 1, {v.share_rot, in.rot_onion.b}, v.proof_rot))
      return false;
    // out = (in.a · R^k / b^x, in.b · g^k), with b^x supplied as a proven share
    mpz_class a = mod_mul(in.id_onion.a, mod_pow(ctx.remaining_creation, v.k_id, gp.p), gp.p);
    a = mod_mul(a, mod_inv(v.share_id, gp.p), gp.p);
    if (a != out.id_onion.a) return false;
    if (mod_mul(in.id_onion.b, mod_pow(gp.g, v.k_id, gp.p), gp.p) != out.id_onion.b)
      return false;
    a = mod_mul(in.rot_onion.a, mod_pow(gp.h, v.l_value, gp.p), gp.p);
    a = mod_mul(a, mod_pow(ctx.remaining_creation, v.k_rot, gp.p), gp.p);
    a = mod_mul(a, mod_inv(v.share_rot, gp.p), gp.p);
    if (a != out.rot_onion.a) return false;
    if (mod_mul(in.rot_onion.b, mod_pow(gp.g, v.k_rot, gp.p), gp.p) != out.rot_onion.b)
      return false;
  }

  if (v.has_recovery) {
    if (!ctx.recovery_in || !ctx.recovery_out) return false;
    const auto& in = ctx.recovery_in->slots[v.input_slot];
    const auto& out = ctx.recovery_out->slots[v.perm_value];
    if (v.rec_occupied != in.has_value() || v.rec_occupied != out.has_value()) return false;
    if (v.rec_occupied) {
      if (!k_ok(v.k_rec) || !in_group(v.share_rec)) return false;
      if (!verify_eq_dlog(gp, ctx.server_pub, 1, {v.share_rec, in->b}, v.proof_rec))
        return false;
      // Same transform with the rotation taken back out: h^{-l} = h^{c-l}.
      std::uint32_t neg_l = (gp.c - v.l_value % gp.c) % gp.c;
      mpz_class a = mod_mul(in->a, mod_pow(gp.h, neg_l, gp.p), gp.p);
      a = mod_mul(a, mod_pow(ctx.remaining_recovery, v.k_rec, gp.p), gp.p);
      a = mod_mul(a, mod_inv(v.share_rec, gp.p), gp.p);
      if (a != out->a) return false;
      if (mod_mul(in->b, mod_pow(gp.g, v.k_rec, gp.p), gp.p) != out->b) return false;
    }
  }
  return true;
}

}  // namespace mixvote
