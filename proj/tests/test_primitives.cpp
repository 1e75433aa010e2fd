#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "mixvote/commit.hpp"
#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"
#include "mixvote/nizk.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/sign.hpp"

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

int bit_diff(const Bytes& a, const Bytes& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += __builtin_popcount(static_cast<unsigned>(a[i] ^ b[i]));
  return d;
}

}  // namespace

TEST_CASE("hex encoding round-trips and rejects malformed input") {
  Bytes data{0x00, 0x1f, 0xa0, 0xff};
  CHECK(to_hex(data) == "001fa0ff");
  CHECK(from_hex("001fa0ff") == data);
  CHECK(from_hex("") == Bytes{});
  CHECK_THROWS_AS(from_hex("abc"), Error);   // odd length
  CHECK_THROWS_AS(from_hex("zz"), Error);    // non-hex
}

TEST_CASE("big integers travel as minimal big-endian hex") {
  CHECK(mpz_to_hex(mpz_class(0)) == "0");
  CHECK(mpz_to_hex(mpz_class(255)) == "ff");
  CHECK(mpz_from_hex("ff") == 255);
  mpz_class big("123456789abcdef0fedcba9876543210", 16);
  CHECK(mpz_from_hex(mpz_to_hex(big)) == big);
}

TEST_CASE("field encoder and decoder are exact inverses") {
  Enc enc;
  enc.put_u8(7).put_u32(0xdeadbeef).put_u64(1ull << 40);
  enc.put_bytes({1, 2, 3}).put_str("hello").put_mpz(mpz_class("987654321987654321"));
  Bytes data = enc.take();

  Dec dec(data);
  CHECK(dec.get_u8() == 7);
  CHECK(dec.get_u32() == 0xdeadbeef);
  CHECK(dec.get_u64() == (1ull << 40));
  CHECK(dec.get_bytes() == Bytes{1, 2, 3});
  CHECK(dec.get_str() == "hello");
  CHECK(dec.get_mpz() == mpz_class("987654321987654321"));
  CHECK(dec.at_end());

  Dec short_dec(data);
  short_dec.get_u8();
  CHECK_THROWS_AS(short_dec.expect_end(), Error);
  Dec overrun(Bytes{1});
  CHECK_THROWS_AS(overrun.get_u32(), Error);
}

TEST_CASE("hashes match published test vectors") {
  CHECK(hash_algo_available("sha256"));
  CHECK(hash_algo_available("sha3-256"));
  CHECK_FALSE(hash_algo_available("md5"));

  Hasher empty("sha256");
  CHECK(to_hex(empty.finish()) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Hasher abc("sha256");
  abc.update("abc");
  CHECK(to_hex(abc.finish()) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  Hasher abc3("sha3-256");
  abc3.update("abc");
  CHECK(to_hex(abc3.finish()) ==
        "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
}

TEST_CASE("tagged hashing separates domains and diffuses input bits") {
  Bytes payload{10, 20, 30, 40};
  Bytes base = tagged_hash("sha256", "perm", payload);
  CHECK(base.size() == 32);
  CHECK(tagged_hash("sha256", "perm", payload) == base);
  CHECK(tagged_hash("sha256", "lval", payload) != base);

  // Flipping any single input bit moves the digest far from the original.
  int total = 0;
  for (int bit = 0; bit < 32; ++bit) {
    Bytes mutated = payload;
    mutated[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    int d = bit_diff(base, tagged_hash("sha256", "perm", mutated));
    CHECK(d > 64);  // 256-bit digest; anything near half is healthy
    total += d;
  }
  CHECK(total / 32 > 100);
}

TEST_CASE("hash_to_mod stays in range and is deterministic") {
  mpz_class mod("1000003");
  std::set<std::string> seen;
  for (int i = 0; i < 200; ++i) {
    Enc enc;
    enc.put_u32(i);
    mpz_class v = hash_to_mod("sha256", "chal", enc.bytes(), mod);
    CHECK(v >= 0);
    CHECK(v < mod);
    seen.insert(v.get_str(16));
  }
  CHECK(seen.size() == 200);  // no collisions across distinct inputs
  Enc enc;
  enc.put_u32(5);
  CHECK(hash_to_mod("sha256", "chal", enc.bytes(), mod) ==
        hash_to_mod("sha256", "chal", enc.bytes(), mod));
}

TEST_CASE("deterministic random streams replay and fork independently") {
  HashDrbg a("sha256", u64_be(1), "test");
  HashDrbg b("sha256", u64_be(1), "test");
  CHECK(a.bytes(48) == b.bytes(48));

  HashDrbg c("sha256", u64_be(1), "other");
  HashDrbg a2("sha256", u64_be(1), "test");
  CHECK(c.bytes(32) != a2.bytes(32));

  HashDrbg parent("sha256", u64_be(9), "parent");
  parent.bytes(16);
  HashDrbg child = parent.fork("child");
  HashDrbg parent2("sha256", u64_be(9), "parent");
  CHECK(child.bytes(16) == parent2.fork("child").bytes(16));  // fork keys off label only
  parent2.bytes(16);
  CHECK(parent.bytes(16) == parent2.bytes(16));  // forking did not disturb the stream
}

TEST_CASE("uniform draws cover their range without bias artifacts") {
  HashDrbg rng("sha256", u64_be(3), "uniform");
  std::map<std::uint64_t, int> counts;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t v = rng.uniform_u64(10);
    CHECK(v < 10);
    ++counts[v];
  }
  CHECK(counts.size() == 10);
  for (auto& [v, n] : counts) CHECK(n > 120);  // expect 200 each

  mpz_class bound(97);
  for (int i = 0; i < 200; ++i) {
    mpz_class v = rng.uniform_unit(bound);
    CHECK(v >= 1);
    CHECK(v < bound);
  }

  int ones = 0;
  for (int i = 0; i < 1000; ++i) ones += rng.bit();
  CHECK(ones > 400);
  CHECK(ones < 600);
}

TEST_CASE("commitments open only with the exact tag, payload, and salt") {
  HashDrbg rng("sha256", u64_be(4), "salt");
  Bytes salt = fresh_salt(rng);
  CHECK(salt.size() == 32);
  CHECK(fresh_salt(rng) != salt);

  Bytes payload{1, 2, 3};
  Commitment com = commit("sha256", "perm", payload, salt);
  CHECK(com.digest.size() == 32);
  CHECK(open_commitment("sha256", "perm", com, payload, salt));
  CHECK_FALSE(open_commitment("sha256", "lval", com, payload, salt));
  CHECK_FALSE(open_commitment("sha256", "perm", com, Bytes{1, 2, 4}, salt));
  Bytes other_salt = fresh_salt(rng);
  CHECK_FALSE(open_commitment("sha256", "perm", com, payload, other_salt));
}

TEST_CASE("signatures verify, replay deterministically, and bind the message") {
  GroupParams gp = generate_params(48, 3, u64_be(11));
  HashDrbg rng("sha256", u64_be(12), "keys");
  KeyPair key = keygen(gp, rng);
  Bytes msg{5, 6, 7, 8};

  Signature sig = sign_message(gp, key, msg);
  CHECK(verify_signature(gp, key.y, msg, sig));
  Signature again = sign_message(gp, key, msg);
  CHECK(sig == again);

  KeyPair other = keygen(gp, rng);
  CHECK_FALSE(verify_signature(gp, other.y, msg, sig));
  for (int bit = 0; bit < 32; ++bit) {
    Bytes mutated = msg;
    mutated[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    CHECK_FALSE(verify_signature(gp, key.y, mutated, sig));
  }
}

TEST_CASE("equality proofs accept every true statement on the tiny group") {
  GroupParams gp = tiny();
  for (int x = 1; x < 5; ++x) {
    mpz_class y = mod_pow(gp.g, x, gp.p);
    for (std::uint32_t m = 0; m < 3; ++m)
      for (int k = 1; k < 5; ++k)
        for (int w = 1; w < 5; ++w) {
          Ciphertext ct = exp_encrypt(gp, y, m, k);
          mpz_class plain = mod_pow(gp.h, m, gp.p);
          EqDlogProof proof = prove_eq_dlog(gp, x, plain, ct, w);
          CHECK(verify_eq_dlog(gp, y, plain, ct, proof));
        }
  }
}

TEST_CASE("equality proofs reject wrong statements and mutated proofs") {
  GroupParams gp = tiny();
  mpz_class x = 3, y = mod_pow(gp.g, x, gp.p);
  Ciphertext ct = exp_encrypt(gp, y, 1, 2);
  mpz_class plain = gp.h;
  EqDlogProof proof = prove_eq_dlog(gp, x, plain, ct, 2);
  REQUIRE(verify_eq_dlog(gp, y, plain, ct, proof));

  CHECK_FALSE(verify_eq_dlog(gp, y, mod_pow(gp.h, 2, gp.p), ct, proof));
  CHECK_FALSE(verify_eq_dlog(gp, mod_pow(gp.g, 2, gp.p), plain, ct, proof));

  for (int field = 0; field < 4; ++field) {
    EqDlogProof bad = proof;
    mpz_class* parts[4] = {&bad.t1, &bad.t2, &bad.e, &bad.s};
    *parts[field] += 1;
    CHECK_FALSE(verify_eq_dlog(gp, y, plain, ct, bad));
  }
}
