#include <benchmark/benchmark.h>

#include "singseries/empirical.hpp"
#include "singseries/moments.hpp"
#include "singseries/primes.hpp"
#include "singseries/rng.hpp"
#include "singseries/singular.hpp"
#include "singseries/tuples.hpp"

using namespace singseries;

namespace {

void BM_sieve(benchmark::State& state) {
  std::uint64_t limit = state.range(0);
  for (auto _ : state) {
    PrimeTable pt(limit);
    benchmark::DoNotOptimize(pt.primes().size());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t)limit);
}
BENCHMARK(BM_sieve)->Arg(100000)->Arg(1000000)->Arg(10000000);

void BM_is_prime_u64(benchmark::State& state) {
  // Odd probes near 2^62, mixed composite and prime.
  std::uint64_t n = (std::uint64_t(1) << 62) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_prime_u64(n));
    n += 2;
  }
}
BENCHMARK(BM_is_prime_u64);

void BM_singular_tuple_fast(benchmark::State& state) {
  std::uint64_t P = 100000;
  PrimeTable pt(P);
  auto base = base_constant(3, P, pt);
  KTuple t({1, 7, 13});
  for (auto _ : state) benchmark::DoNotOptimize(singular_series_tuple(t, P, pt, base).value);
}
BENCHMARK(BM_singular_tuple_fast);

void BM_local_moment_factor(benchmark::State& state) {
  std::uint64_t p = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_moment_factor(p, 4, 3.0));
    p = p == 3 ? 100003 : 3;  // alternate small and large prime
  }
}
BENCHMARK(BM_local_moment_factor);

void BM_sweep_moment(benchmark::State& state) {
  std::uint64_t h = state.range(0);
  PrimeTable pt(10000);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_moment(2, 2, h, 10000, pt));
  state.SetItemsProcessed(state.iterations() * (std::int64_t)(h * (h - 1)));
}
BENCHMARK(BM_sweep_moment)->Arg(50)->Arg(200);

void BM_mc_sample(benchmark::State& state) {
  MonteCarloConfig cfg;
  cfg.k = 2;
  cfg.P = 1000;
  cfg.n = state.range(0);
  cfg.seed = 42;
  PrimeTable pt(cfg.P);
  for (auto _ : state) benchmark::DoNotOptimize(sample_random_singular(cfg, pt).total());
  state.SetItemsProcessed(state.iterations() * (std::int64_t)cfg.n);
}
BENCHMARK(BM_mc_sample)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
