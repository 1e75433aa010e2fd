#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mixvote/errors.hpp"
#include "mixvote/group.hpp"

using namespace mixvote;

namespace {

// Hand-checked group: p = 2qct + 1 = 31 with q = 5, c = 3, t = 1.
// ord(2) = 5 (2^5 = 32 ≡ 1), ord(5) = 3 (5^3 = 125 ≡ 1), gcd(5, 3) = 1.
GroupParams tiny() {
  GroupParams gp;
  gp.p = 31;
  gp.q = 5;
  gp.g = 2;
  gp.h = 5;
  gp.c = 3;
  return gp;
}

}  // namespace

TEST_CASE("modular arithmetic matches hand values") {
  CHECK(mod_pow(2, 5, 31) == 1);
  CHECK(mod_pow(2, 3, 31) == 8);
  CHECK(mod_inv(2, 31) == 16);          // 2·16 = 32 ≡ 1
  CHECK(mod_mul(20, 19, 31) == 8);      // 380 = 12·31 + 8
  CHECK(mod_mul(4, 64, 31) == 8);       // 256 = 8·31 + 8
  for (int v = 1; v < 31; ++v) CHECK(mod_mul(v, mod_inv(v, 31).get_si(), 31) == 1);
}

TEST_CASE("hand-checked group passes validation") {
  CHECK(validate_params(tiny()));

  GroupParams bad = tiny();
  bad.g = 3;  // ord(3) mod 31 = 30, not q
  CHECK_FALSE(validate_params(bad));
  bad = tiny();
  bad.h = 2;  // ord = 5, not c
  CHECK_FALSE(validate_params(bad));
  bad = tiny();
  bad.p = 33;
  CHECK_FALSE(validate_params(bad));
}

TEST_CASE("elgamal on the tiny group reproduces frozen vectors") {
  GroupParams gp = tiny();
  // x = 3 -> y = 2^3 = 8
  CHECK(mod_pow(gp.g, 3, gp.p) == 8);
  // e_8(4) with k = 2: (4·8², 2²) = (256, 4) ≡ (8, 4)
  Ciphertext ct = encrypt(gp, 8, 4, 2);
  CHECK(ct.a == 8);
  CHECK(ct.b == 4);
  CHECK(decrypt(gp, 3, ct) == 4);
}

TEST_CASE("encrypt/decrypt round-trips every message and randomizer") {
  GroupParams gp = tiny();
  for (int x = 1; x < 5; ++x) {
    mpz_class y = mod_pow(gp.g, x, gp.p);
    for (int m = 1; m < 31; ++m)
      for (int k = 1; k < 5; ++k) CHECK(decrypt(gp, x, encrypt(gp, y, m, k)) == m);
  }
}

TEST_CASE("exponential encryption reproduces frozen vectors") {
  GroupParams gp = tiny();
  // x = 2 -> y = 4
  Ciphertext c1 = exp_encrypt(gp, 4, 1, 1);  // (5·4, 2) = (20, 2)
  CHECK(c1.a == 20);
  CHECK(c1.b == 2);
  Ciphertext c2 = exp_encrypt(gp, 4, 2, 3);  // (25·64, 8) = (1600, 8) ≡ (19, 8)
  CHECK(c2.a == 19);
  CHECK(c2.b == 8);

  Ciphertext prod = ct_mul(gp, c1, c2);  // (20·19, 2·8) ≡ (8, 16)
  CHECK(prod.a == 8);
  CHECK(prod.b == 16);

  DecodeTable table = build_decode_table(gp, 4);
  CHECK(exp_decode(gp, 2, prod, table) == 0);  // (1 + 2) mod 3
}

TEST_CASE("exponent sums wrap modulo the candidate count") {
  GroupParams gp = tiny();
  mpz_class y = mod_pow(gp.g, 2, gp.p);
  DecodeTable table = build_decode_table(gp, 4);
  for (std::uint32_t m1 = 0; m1 < 3; ++m1)
    for (std::uint32_t m2 = 0; m2 < 3; ++m2) {
      Ciphertext prod = ct_mul(gp, exp_encrypt(gp, y, m1, 1), exp_encrypt(gp, y, m2, 3));
      CHECK(exp_decode(gp, 2, prod, table) == (m1 + m2) % 3);
    }
}

TEST_CASE("decoding a plaintext outside the rotation subgroup fails") {
  GroupParams gp = tiny();
  mpz_class y = mod_pow(gp.g, 2, gp.p);
  // Standard encryption of g = 2, which is not a power of h.
  Ciphertext ct = encrypt(gp, y, gp.g, 1);
  DecodeTable table = build_decode_table(gp, 4);
  CHECK_THROWS_WITH_AS(exp_decode(gp, 2, ct, table), doctest::Contains("decode-failure"),
                       Error);
}

TEST_CASE("identifier encoding avoids the fixed point and decodes back") {
  GroupParams gp = tiny();
  DecodeTable table = build_decode_table(gp, 4);
  std::set<std::string> seen;
  for (std::uint32_t id = 0; id < 4; ++id) {
    mpz_class enc = encode_id(gp, id);
    CHECK(enc != 1);
    CHECK(seen.insert(enc.get_str(16)).second);
    auto back = decode_id(table, enc);
    REQUIRE(back.has_value());
    CHECK(*back == id);
  }
  CHECK_FALSE(decode_id(table, mpz_class(30)).has_value());
  CHECK(decode_h_power(table, mpz_class(25)) == 2);  // h² = 25
  CHECK_FALSE(decode_h_power(table, mpz_class(2)).has_value());
}

TEST_CASE("primality check agrees with known primes and pseudoprimes") {
  CHECK(is_prime(mpz_class(2)));
  CHECK(is_prime(mpz_class(31)));
  CHECK(is_prime(mpz_class("2305843009213693951")));  // 2^61 - 1
  CHECK_FALSE(is_prime(mpz_class(1)));
  CHECK_FALSE(is_prime(mpz_class(561)));    // Carmichael
  CHECK_FALSE(is_prime(mpz_class(25326001)));  // strong pseudoprime to bases 2,3,5
  CHECK_FALSE(is_prime(mpz_class("2305843009213693953")));
}

TEST_CASE("parameter generation is deterministic and well-formed") {
  Bytes seed = u64_be(7);
  GroupParams a = generate_params(48, 6, seed);
  GroupParams b = generate_params(48, 6, seed);
  CHECK(a.p == b.p);
  CHECK(a.g == b.g);
  CHECK(a.h == b.h);
  CHECK(validate_params(a));
  CHECK(mpz_sizeinbase(a.q.get_mpz_t(), 2) == 48);
  CHECK(a.c == 6);
  mpz_class gcd;
  mpz_gcd(gcd.get_mpz_t(), a.q.get_mpz_t(), mpz_class(6).get_mpz_t());
  CHECK(gcd == 1);

  GroupParams other = generate_params(48, 6, u64_be(8));
  CHECK(a.p != other.p);
}

TEST_CASE("parameter generation rejects bad requests") {
  CHECK_THROWS_AS(generate_params(8, 3, u64_be(1)), Error);
  CHECK_THROWS_AS(generate_params(32, 1, u64_be(1)), Error);
  CHECK_THROWS_AS(generate_params(32, 3, u64_be(1), "md5"), Error);
}
