#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include <gmpxx.h>

#include "mixvote/bytes.hpp"
#include "mixvote/rng.hpp"

namespace mixvote {

// Multiplicative group mod prime p with two independent generators:
//   ord(g) = q (large prime, key/blinding space)
//   ord(h) = c (candidate count), gcd(q, c) = 1
// constructed as p = 2qct + 1.
struct GroupParams {
  mpz_class p, q, g, h;
  std::uint32_t c = 0;
  std::string hash_algo = "sha256";
};

bool validate_params(const GroupParams& gp);
GroupParams generate_params(unsigned q_bits, std::uint32_t c, const Bytes& seed,
                            const std::string& hash_algo = "sha256");

// Deterministic Miller-Rabin (fixed bases) so parameter search replays exactly.
bool is_prime(const mpz_class& n);

mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& p);
mpz_class mod_inv(const mpz_class& v, const mpz_class& p);
mpz_class mod_mul(const mpz_class& a, const mpz_class& b, const mpz_class& p);

struct KeyPair {
  mpz_class x;  // secret, in [1, q)
  mpz_class y;  // g^x
};

KeyPair keygen(const GroupParams& gp, HashDrbg& rng);

struct Ciphertext {
  mpz_class a, b;  // (m·y^k, g^k)
  bool operator==(const Ciphertext&) const = default;
};

// e_y(m): standard ElGamal on a group element m. k in [1, q).
Ciphertext encrypt(const GroupParams& gp, const mpz_class& y, const mpz_class& m,
                   const mpz_class& k);
mpz_class decrypt(const GroupParams& gp, const mpz_class& x, const Ciphertext& ct);

// he_y(m): message carried as h^m, so slot-wise products add exponents mod c.
Ciphertext exp_encrypt(const GroupParams& gp, const mpz_class& y, std::uint32_t m,
                       const mpz_class& k);
Ciphertext ct_mul(const GroupParams& gp, const Ciphertext& lhs, const Ciphertext& rhs);

// Ballot identifiers ride the q-order component as g^(id+1); the +1 keeps
// id = 0 away from the fixed point 1.
mpz_class encode_id(const GroupParams& gp, std::uint32_t id);

// Discrete-log lookup for the two small plaintext spaces.
struct DecodeTable {
  std::unordered_map<std::string, std::uint32_t> h_powers;  // hex(h^v) -> v
  std::unordered_map<std::string, std::uint32_t> ids;       // hex(g^(id+1)) -> id
};

DecodeTable build_decode_table(const GroupParams& gp, std::uint32_t id_count);

std::optional<std::uint32_t> decode_h_power(const DecodeTable& table, const mpz_class& plain);
std::optional<std::uint32_t> decode_id(const DecodeTable& table, const mpz_class& plain);

// Decrypt an exponential ciphertext and map back to [0, c).
// Throws decode-failure if the plaintext is outside ⟨h⟩.
std::uint32_t exp_decode(const GroupParams& gp, const mpz_class& x, const Ciphertext& ct,
                         const DecodeTable& table);

}  // namespace mixvote
