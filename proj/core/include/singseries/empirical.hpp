#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "singseries/polyfam.hpp"
#include "singseries/primes.hpp"
#include "singseries/singular.hpp"

namespace singseries {

// Weighted atom multiset of nonnegative reals: the exact distribution of a
// finite ensemble. Atoms are kept sorted by value with exact counts; the
// atom at zero is tracked separately. Canonical (sorted, merged) form, so
// two runs producing the same multiset compare bit-identically.
class EmpiricalDistribution {
public:
  enum class Provenance { tuple_sweep, monte_carlo, window_counts };

  EmpiricalDistribution(Provenance prov, std::vector<std::pair<double, std::uint64_t>> atoms,
                        std::uint64_t zero_count);

  Provenance provenance() const { return prov_; }
  const std::vector<std::pair<double, std::uint64_t>>& atoms() const { return atoms_; }
  std::uint64_t zero_count() const { return zero_count_; }
  std::uint64_t total() const { return total_; }

  double cdf(double x) const;  // P(X <= x), right-continuous, zero atom included
  double moment(double m) const;
  double mean() const { return moment(1); }

private:
  Provenance prov_;
  std::vector<std::pair<double, std::uint64_t>> atoms_;  // value > 0, count > 0
  std::uint64_t zero_count_;
  std::uint64_t total_;
};

struct MonteCarloConfig {
  std::uint32_t k = 2;
  std::uint64_t P = 1000;   // truncation prime bound; P >= 2k^2
  std::uint64_t n = 10000;  // sample count, >= 1
  std::uint64_t seed = 0;
};

// Enumeration budget for full tuple sweeps. Sweeps whose exact tuple count
// h(h-1)...(h-k+1) exceeds the budget raise a budget error.
inline constexpr std::uint64_t default_sweep_budget = std::uint64_t(1) << 32;

// (1/h*_k) sum of S(t)^m over ordered distinct k-tuples in [1,h]^k, where
// h*_k = h(h-1)...(h-k+1) and S is the tuple singular series truncated at P
// (fast base-constant path). Deterministic for every shard count.
double empirical_moment(std::uint32_t k, std::uint32_t m, std::uint64_t h, std::uint64_t P,
                        const PrimeTable& pt, unsigned shards = 1,
                        std::uint64_t budget = default_sweep_budget);

// Exact distribution of S over the same ensemble; the zero atom (tuples
// covering all residues mod some p <= k) is kept separate.
EmpiricalDistribution empirical_distribution(std::uint32_t k, std::uint64_t h, std::uint64_t P,
                                             const PrimeTable& pt, unsigned shards = 1,
                                             std::uint64_t budget = default_sweep_budget);

// n truncated-product samples prod_{p<=P} (1-1/p)^{-k} (1-rho_p/p) with
// rho_p the distinct-residue count of k independent uniform draws from
// Z/pZ. Streams are keyed per (sample, prime) from the seed (splitmix64
// substreams; see docs/formats.md), so the sample multiset is bit-identical
// for every shard count. Exact zero recorded when some rho_p = p.
EmpiricalDistribution sample_random_singular(const MonteCarloConfig& cfg, const PrimeTable& pt,
                                             unsigned shards = 1);

// Two-sample Kolmogorov-Smirnov sup |F_a - F_b| with F(x) = P(X <= x).
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct ComposedAverage {
  double value = 0;  // (1/h^k) sum of S(compose(F,t), P) over primitive compositions
  std::uint64_t primitive_count = 0;
  std::uint64_t imprimitive_count = 0;  // collision tuples, reported not summed
  std::uint64_t tuple_count = 0;        // h*_k
  EulerProductValue family_value;       // S(F, P), the anchor the average trends to (power k)
};

// Averages the composed-family singular series over the tuple ensemble.
// Domain error when F is not primitive or S(F) is exactly zero at P.
ComposedAverage empirical_composed_average(const PolyFamily& f, std::uint32_t k, std::uint64_t h,
                                           std::uint64_t P, const PrimeTable& pt,
                                           unsigned shards = 1,
                                           std::uint64_t budget = default_sweep_budget);

}  // namespace singseries
