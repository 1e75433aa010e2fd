#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mixvote/errors.hpp"
#include "mixvote/mixnet.hpp"

using namespace mixvote;

namespace {

GroupParams tiny() {
  GroupParams gp;
  gp.p = 31;
  gp.q = 5;
  gp.g = 2;
  gp.h = 5;
  gp.c = 3;
  return gp;
}

struct Cascade {
  GroupParams gp;
  HashDrbg rng{"sha256", u64_be(77), "cascade"};
  KeyPair ec2;
  MixServerSecret s1, s2;
  mpz_class joint_all, joint_mix;

  Cascade(std::uint32_t n) : gp(generate_params(40, 3, u64_be(5))) {
    ec2 = keygen(gp, rng);
    s1 = make_server_secret(gp, 1, n, rng);
    s2 = make_server_secret(gp, 2, n, rng);
    joint_mix = mod_mul(s1.enc_key.y, s2.enc_key.y, gp.p);
    joint_all = mod_mul(joint_mix, ec2.y, gp.p);
  }
};

}  // namespace

TEST_CASE("server secrets hold a permutation and in-range rotations") {
  GroupParams gp = generate_params(40, 3, u64_be(1));
  HashDrbg rng("sha256", u64_be(2), "secret");
  MixServerSecret s = make_server_secret(gp, 3, 12, rng);
  CHECK(s.index == 3);
  CHECK(s.perm.size() == 12);
  std::set<std::uint32_t> targets(s.perm.begin(), s.perm.end());
  CHECK(targets.size() == 12);
  CHECK(*targets.rbegin() == 11);
  CHECK(s.rotations.size() == 12);
  for (std::uint32_t r : s.rotations) CHECK(r < 3);
  // Commitment salts are drawn at commitment time, not here.
  CHECK(s.perm_salts.empty());
  CHECK(s.rot_salts.empty());
  CHECK(s.k_rec.size() == 12);
  CHECK(mod_pow(gp.g, s.enc_key.x, gp.p) == s.enc_key.y);
}

TEST_CASE("initial pairs carry the identifier and a trivial rotation onion") {
  Cascade cas(6);
  for (std::uint32_t id = 0; id < 6; ++id) {
    OnionPair pair = build_initial_pair(cas.gp, cas.joint_all, id, 6, cas.rng.uniform_unit(cas.gp.q));
    CHECK(pair.rot_onion.a == 1);
    CHECK(pair.rot_onion.b == 1);
    // Peel all three layers at once: plaintext = a / b^(x1+x2+xe).
    mpz_class x_tot = cas.s1.enc_key.x + cas.s2.enc_key.x + cas.ec2.x;
    CHECK(decrypt(cas.gp, x_tot % cas.gp.q, pair.id_onion) == encode_id(cas.gp, id));
  }
}

TEST_CASE("decrypting transform matches the hand-computed tiny vector") {
  GroupParams gp = tiny();
  // y_total = g^(1+2) = 8; e_8(4) with k = 2 is (8, 4).
  Ciphertext in = encrypt(gp, 8, 4, 2);
  REQUIRE(in.a == 8);
  REQUIRE(in.b == 4);
  // Server x = 1 strips its layer, re-blinds toward R = g^2 = 4 with k = 1:
  // a' = 8·4 / 4^1 = 8, b' = 4·2 = 8.
  Ciphertext out = transform_decrypting(gp, 1, 4, in, 1);
  CHECK(out.a == 8);
  CHECK(out.b == 8);
  CHECK(decrypt(gp, 2, out) == 4);
}

TEST_CASE("computing transform folds h^l into the message") {
  GroupParams gp = tiny();
  Ciphertext in = encrypt(gp, 8, 4, 2);
  Ciphertext out = transform_computing(gp, 1, 4, in, 1, 1);
  CHECK(out.a == 9);  // 8·5 = 40 ≡ 9
  CHECK(out.b == 8);
  CHECK(decrypt(gp, 2, out) == 20);  // 4·h
}

TEST_CASE("a two-server creation pass lands ids on the composed permutation") {
  std::uint32_t n = 6;
  Cascade cas(n);
  PairList list0;
  list0.stage = 0;
  for (std::uint32_t id = 0; id < n; ++id)
    list0.slots.push_back(
        build_initial_pair(cas.gp, cas.joint_all, id, n, cas.rng.uniform_unit(cas.gp.q)));

  mpz_class rem1 = mod_mul(cas.s2.enc_key.y, cas.ec2.y, cas.gp.p);
  PairList list1 = server_process_creation(cas.gp, cas.s1, rem1, list0, cas.rng);
  PairList list2 = server_process_creation(cas.gp, cas.s2, cas.ec2.y, list1, cas.rng);
  CHECK(list1.stage == 1);
  CHECK(list2.stage == 2);

  for (std::uint32_t j = 0; j < n; ++j) {
    std::uint32_t mid = cas.s1.perm[j];
    std::uint32_t fin = cas.s2.perm[mid];
    std::uint32_t sh = (cas.s1.rotations[j] + cas.s2.rotations[mid]) % cas.gp.c;
    // Only the printer's layer remains on the final list.
    CHECK(decrypt(cas.gp, cas.ec2.x, list2.slots[fin].id_onion) == encode_id(cas.gp, j));
    CHECK(decrypt(cas.gp, cas.ec2.x, list2.slots[fin].rot_onion) ==
          mod_pow(cas.gp.h, sh, cas.gp.p));
  }
}

TEST_CASE("recovery retraces the path and cancels every rotation") {
  std::uint32_t n = 6;
  Cascade cas(n);
  // Creation first, to fix each server's per-slot rotations.
  PairList list0;
  list0.stage = 0;
  for (std::uint32_t id = 0; id < n; ++id)
    list0.slots.push_back(
        build_initial_pair(cas.gp, cas.joint_all, id, n, cas.rng.uniform_unit(cas.gp.q)));
  mpz_class rem1 = mod_mul(cas.s2.enc_key.y, cas.ec2.y, cas.gp.p);
  PairList mid = server_process_creation(cas.gp, cas.s1, rem1, list0, cas.rng);
  server_process_creation(cas.gp, cas.s2, cas.ec2.y, mid, cas.rng);

  // Votes enter at positions 0, 2, 5 with marked values 0, 1, 2.
  VoteList votes;
  votes.stage = 0;
  votes.slots.assign(n, std::nullopt);
  std::uint32_t evs[3] = {0, 1, 2};
  std::uint32_t positions[3] = {0, 2, 5};
  for (int i = 0; i < 3; ++i)
    votes.slots[positions[i]] =
        build_vote_onion(cas.gp, cas.joint_mix, evs[i], cas.rng.uniform_unit(cas.gp.q));

  VoteList rec1 = server_process_recovery(cas.gp, cas.s1, cas.s2.enc_key.y, votes, cas.rng);
  VoteList rec2 = server_process_recovery(cas.gp, cas.s2, 1, rec1, cas.rng);

  std::uint32_t occupied = 0;
  for (std::uint32_t j = 0; j < n; ++j) {
    if (!rec2.slots[j].has_value()) continue;
    ++occupied;
  }
  CHECK(occupied == 3);

  for (int i = 0; i < 3; ++i) {
    std::uint32_t p = positions[i];
    std::uint32_t m = cas.s1.perm[p];
    std::uint32_t f = cas.s2.perm[m];
    std::uint32_t path_l = (cas.s1.rotations[p] + cas.s2.rotations[m]) % cas.gp.c;
    std::uint32_t expect = (evs[i] + cas.gp.c - path_l) % cas.gp.c;
    REQUIRE(rec2.slots[f].has_value());
    // All layers are stripped, so the plaintext sits in the a-component.
    CHECK(rec2.slots[f]->a == mod_pow(cas.gp.h, expect, cas.gp.p));
  }
}

TEST_CASE("the printer opens final pairs with verifying proofs") {
  std::uint32_t n = 4;
  Cascade cas(n);
  PairList list0;
  list0.stage = 0;
  for (std::uint32_t id = 0; id < n; ++id)
    list0.slots.push_back(
        build_initial_pair(cas.gp, cas.joint_all, id, n, cas.rng.uniform_unit(cas.gp.q)));
  mpz_class rem1 = mod_mul(cas.s2.enc_key.y, cas.ec2.y, cas.gp.p);
  PairList list1 = server_process_creation(cas.gp, cas.s1, rem1, list0, cas.rng);
  PairList list2 = server_process_creation(cas.gp, cas.s2, cas.ec2.y, list1, cas.rng);

  DecodeTable table = build_decode_table(cas.gp, n);
  for (std::uint32_t f = 0; f < n; ++f) {
    OpenedPair opened = ec2_open_pair(cas.gp, cas.ec2, list2.slots[f], table, cas.rng);
    std::uint32_t j = 0;
    while (cas.s2.perm[cas.s1.perm[j]] != f) ++j;
    CHECK(opened.id == j);
    CHECK(opened.sh == (cas.s1.rotations[j] + cas.s2.rotations[cas.s1.perm[j]]) % cas.gp.c);
    CHECK(verify_eq_dlog(cas.gp, cas.ec2.y, encode_id(cas.gp, opened.id),
                         list2.slots[f].id_onion, opened.id_proof));
    CHECK(verify_eq_dlog(cas.gp, cas.ec2.y, mod_pow(cas.gp.h, opened.sh, cas.gp.p),
                         list2.slots[f].rot_onion, opened.rot_proof));
  }
}

TEST_CASE("vote onions are plain exponential encryptions under the mix keys") {
  Cascade cas(4);
  Ciphertext direct = exp_encrypt(cas.gp, cas.joint_mix, 2, 7);
  Ciphertext onion = build_vote_onion(cas.gp, cas.joint_mix, 2, 7);
  CHECK(direct == onion);
}
