// Microbenchmarks for the hot paths: group arithmetic, onion transforms,
// validator checks, and whole-election throughput at two modulus sizes.

#include <benchmark/benchmark.h>

#include "mixvote/group.hpp"
#include "mixvote/mixnet.hpp"
#include "mixvote/protocol.hpp"
#include "mixvote/rng.hpp"
#include "mixvote/verifier.hpp"

using namespace mixvote;

namespace {

struct Fixture {
  GroupParams gp;
  HashDrbg rng;
  KeyPair key;

  explicit Fixture(unsigned q_bits)
      : gp(generate_params(q_bits, 5, u64_be(1))),
        rng(gp.hash_algo, u64_be(2), "bench"),
        key(keygen(gp, rng)) {}
};

Fixture& fixture(unsigned q_bits) {
  static Fixture small(32);
  static Fixture big(256);
  return q_bits == 32 ? small : big;
}

void bm_mod_pow(benchmark::State& state) {
  Fixture& fx = fixture(static_cast<unsigned>(state.range(0)));
  mpz_class e = fx.rng.uniform_unit(fx.gp.q);
  for (auto _ : state) benchmark::DoNotOptimize(mod_pow(fx.gp.g, e, fx.gp.p));
}

void bm_exp_encrypt(benchmark::State& state) {
  Fixture& fx = fixture(static_cast<unsigned>(state.range(0)));
  mpz_class k = fx.rng.uniform_unit(fx.gp.q);
  for (auto _ : state) benchmark::DoNotOptimize(exp_encrypt(fx.gp, fx.key.y, 3, k));
}

void bm_transform_decrypting(benchmark::State& state) {
  Fixture& fx = fixture(static_cast<unsigned>(state.range(0)));
  mpz_class k = fx.rng.uniform_unit(fx.gp.q);
  Ciphertext ct = encrypt(fx.gp, fx.key.y, encode_id(fx.gp, 7), k);
  mpz_class k2 = fx.rng.uniform_unit(fx.gp.q);
  for (auto _ : state)
    benchmark::DoNotOptimize(transform_decrypting(fx.gp, fx.key.x, 1, ct, k2));
}

void bm_creation_pass(benchmark::State& state) {
  // One server's full step over an n-slot creation list.
  Fixture& fx = fixture(32);
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  HashDrbg rng = fx.rng.fork("creation-pass");
  MixServerSecret secret = make_server_secret(fx.gp, 1, n, rng);
  mpz_class joint = mod_pow(fx.gp.g, fx.key.x + 1, fx.gp.p);
  PairList in;
  in.stage = 0;
  for (std::uint32_t j = 0; j < n; ++j)
    in.slots.push_back(build_initial_pair(fx.gp, joint, j, n, rng.uniform_unit(fx.gp.q)));
  for (auto _ : state) {
    MixServerSecret fresh = secret;
    benchmark::DoNotOptimize(server_process_creation(fx.gp, fresh, fx.key.y, in, rng));
  }
}

void bm_election(benchmark::State& state) {
  ElectionConfig cfg;
  cfg.n = 16;
  cfg.c = 3;
  cfg.lambda = 4;
  cfg.q_bits = static_cast<unsigned>(state.range(0));
  cfg.voters = {"v-1", "v-2", "v-3", "v-4"};
  cfg.test_casts = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    Election e(cfg);
    e.run();
    benchmark::DoNotOptimize(e.tally());
  }
}

void bm_verify(benchmark::State& state) {
  ElectionConfig cfg;
  cfg.n = 16;
  cfg.c = 3;
  cfg.lambda = 4;
  cfg.q_bits = static_cast<unsigned>(state.range(0));
  cfg.voters = {"v-1", "v-2", "v-3", "v-4"};
  cfg.test_casts = 1;
  cfg.seed = 77;
  Election e(cfg);
  e.run();
  Transcript t = e.transcript();
  for (auto _ : state) benchmark::DoNotOptimize(verify_transcript(t));
}

BENCHMARK(bm_mod_pow)->Arg(32)->Arg(256);
BENCHMARK(bm_exp_encrypt)->Arg(32)->Arg(256);
BENCHMARK(bm_transform_decrypting)->Arg(32)->Arg(256);
BENCHMARK(bm_creation_pass)->Arg(16)->Arg(64);
BENCHMARK(bm_election)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_verify)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
