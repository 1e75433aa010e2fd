#include "mixvote/group.hpp"

#include <array>
#include <vector>

#include "mixvote/errors.hpp"
#include "mixvote/hash.hpp"

namespace mixvote {

mpz_class mod_pow(const mpz_class& base, const mpz_class& exp, const mpz_class& p) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
  return r;
}

mpz_class mod_inv(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw Error(errc::invalid_message, "element not invertible");
  return r;
}

mpz_class mod_mul(const mpz_class& a, const mpz_class& b, const mpz_class& p) {
  mpz_class r = a * b;
  r %= p;
  return r;
}

static const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> out;
    std::array<bool, 1000> sieve{};
    for (unsigned i = 2; i < sieve.size(); ++i) {
      if (sieve[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j < sieve.size(); j += i) sieve[j] = true;
    }
    return out;
  }();
  return primes;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned sp : small_primes()) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  // n has no factor below 1000, so Miller-Rabin with the first 24 prime bases.
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (std::size_t i = 0; i < 24; ++i) {
    mpz_class a = small_primes()[i];
    mpz_class x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned long r = 1; r < s; ++r) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

static std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t f = 2; static_cast<std::uint64_t>(f) * f <= v; ++f) {
    if (v % f != 0) continue;
    out.push_back(f);
    while (v % f == 0) v /= f;
  }
  if (v > 1) out.push_back(v);
  return out;
}

bool validate_params(const GroupParams& gp) {
  if (gp.c < 2) return false;
  if (!hash_algo_available(gp.hash_algo)) return false;
  if (!is_prime(gp.p) || !is_prime(gp.q)) return false;
  mpz_class pm1 = gp.p - 1;
  if (pm1 % gp.q != 0 || pm1 % gp.c != 0) return false;
  mpz_class gcd;
  mpz_class c_mpz = gp.c;
  mpz_gcd(gcd.get_mpz_t(), gp.q.get_mpz_t(), c_mpz.get_mpz_t());
  if (gcd != 1) return false;
  if (gp.g <= 1 || gp.g >= gp.p || gp.h <= 1 || gp.h >= gp.p) return false;
  if (mod_pow(gp.g, gp.q, gp.p) != 1) return false;
  if (mod_pow(gp.h, gp.c, gp.p) != 1) return false;
  for (std::uint32_t f : prime_factors(gp.c))  // order exactly c, not a divisor
    if (mod_pow(gp.h, gp.c / f, gp.p) == 1) return false;
  return true;
}

GroupParams generate_params(unsigned q_bits, std::uint32_t c, const Bytes& seed,
                            const std::string& hash_algo) {
  if (q_bits < 16) throw Error(errc::config_error, "q_bits must be at least 16");
  if (c < 2) throw Error(errc::config_error, "candidate count must be at least 2");
  if (c > (1u << 20)) throw Error(errc::config_error, "candidate count too large");
  if (!hash_algo_available(hash_algo))
    throw Error(errc::config_error, "unknown hash algorithm: " + hash_algo);

  HashDrbg rng(hash_algo, seed, "group-params");

  // Prime q of exactly q_bits with gcd(q, c) = 1.
  mpz_class q = rng.uniform_below(mpz_class(1) << (q_bits - 1));
  mpz_setbit(q.get_mpz_t(), q_bits - 1);
  mpz_setbit(q.get_mpz_t(), 0);
  mpz_class q_limit = mpz_class(1) << q_bits;
  mpz_class c_mpz = c;
  bool found = false;
  for (unsigned iter = 0; iter < 1u << 22; ++iter, q += 2) {
    if (q >= q_limit) break;
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), q.get_mpz_t(), c_mpz.get_mpz_t());
    if (gcd != 1) continue;
    if (is_prime(q)) {
      found = true;
      break;
    }
  }
  if (!found) throw Error(errc::parameter_search_exhausted, "no prime q in range");

  // p = 2qct + 1 with t walked upward from a random start.
  mpz_class step = 2 * q * c;
  unsigned step_bits = static_cast<unsigned>(mpz_sizeinbase(step.get_mpz_t(), 2));
  unsigned p_bits = 2 * q_bits;
  unsigned t_bits = p_bits > step_bits ? p_bits - step_bits : 1;
  mpz_class t = rng.uniform_below(mpz_class(1) << t_bits);
  if (t_bits > 1) mpz_setbit(t.get_mpz_t(), t_bits - 1);
  if (t == 0) t = 1;
  mpz_class p;
  found = false;
  for (unsigned iter = 0; iter < 1u << 22; ++iter, ++t) {
    p = step * t + 1;
    if (is_prime(p)) {
      found = true;
      break;
    }
  }
  if (!found) throw Error(errc::parameter_search_exhausted, "no prime p = 2qct+1 found");

  GroupParams gp;
  gp.p = p;
  gp.q = q;
  gp.c = c;
  gp.hash_algo = hash_algo;

  mpz_class pm1 = p - 1;
  mpz_class exp_g = pm1 / q;
  for (mpz_class a = 2;; ++a) {
    if (a >= p) throw Error(errc::parameter_search_exhausted, "no generator of order q");
    mpz_class cand = mod_pow(a, exp_g, p);
    if (cand != 1) {
      gp.g = cand;
      break;
    }
  }
  mpz_class exp_h = pm1 / c;
  auto factors = prime_factors(c);
  for (mpz_class a = 2;; ++a) {
    if (a >= p) throw Error(errc::parameter_search_exhausted, "no generator of order c");
    mpz_class cand = mod_pow(a, exp_h, p);
    if (cand == 1) continue;
    bool exact = true;
    for (std::uint32_t f : factors)
      if (mod_pow(cand, c / f, p) == 1) {
        exact = false;
        break;
      }
    if (exact) {
      gp.h = cand;
      break;
    }
  }
  return gp;
}

KeyPair keygen(const GroupParams& gp, HashDrbg& rng) {
  KeyPair kp;
  kp.x = rng.uniform_unit(gp.q);
  kp.y = mod_pow(gp.g, kp.x, gp.p);
  return kp;
}

Ciphertext encrypt(const GroupParams& gp, const mpz_class& y, const mpz_class& m,
                   const mpz_class& k) {
  if (m <= 0 || m >= gp.p) throw Error(errc::invalid_message, "plaintext outside group");
  Ciphertext ct;
  ct.a = mod_mul(m, mod_pow(y, k, gp.p), gp.p);
  ct.b = mod_pow(gp.g, k, gp.p);
  return ct;
}

mpz_class decrypt(const GroupParams& gp, const mpz_class& x, const Ciphertext& ct) {
  return mod_mul(ct.a, mod_inv(mod_pow(ct.b, x, gp.p), gp.p), gp.p);
}

Ciphertext exp_encrypt(const GroupParams& gp, const mpz_class& y, std::uint32_t m,
                       const mpz_class& k) {
  return encrypt(gp, y, mod_pow(gp.h, m % gp.c, gp.p), k);
}

Ciphertext ct_mul(const GroupParams& gp, const Ciphertext& lhs, const Ciphertext& rhs) {
  return {mod_mul(lhs.a, rhs.a, gp.p), mod_mul(lhs.b, rhs.b, gp.p)};
}

mpz_class encode_id(const GroupParams& gp, std::uint32_t id) {
  return mod_pow(gp.g, mpz_class(id) + 1, gp.p);
}

DecodeTable build_decode_table(const GroupParams& gp, std::uint32_t id_count) {
  DecodeTable table;
  mpz_class hv = 1;
  for (std::uint32_t v = 0; v < gp.c; ++v) {
    table.h_powers.emplace(mpz_to_hex(hv), v);
    hv = mod_mul(hv, gp.h, gp.p);
  }
  mpz_class gv = gp.g;
  for (std::uint32_t id = 0; id < id_count; ++id) {
    table.ids.emplace(mpz_to_hex(gv), id);
    gv = mod_mul(gv, gp.g, gp.p);
  }
  return table;
}

std::optional<std::uint32_t> decode_h_power(const DecodeTable& table, const mpz_class& plain) {
  auto it = table.h_powers.find(mpz_to_hex(plain));
  if (it == table.h_powers.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> decode_id(const DecodeTable& table, const mpz_class& plain) {
  auto it = table.ids.find(mpz_to_hex(plain));
  if (it == table.ids.end()) return std::nullopt;
  return it->second;
}

std::uint32_t exp_decode(const GroupParams& gp, const mpz_class& x, const Ciphertext& ct,
                         const DecodeTable& table) {
  mpz_class plain = decrypt(gp, x, ct);
  auto v = decode_h_power(table, plain);
  if (!v) throw Error(errc::decode_failure, "plaintext not a rotation residue");
  return *v;
}

}  // namespace mixvote
