#pragma once

#include <cstdint>
#include <vector>

#include "singseries/polyfam.hpp"
#include "singseries/primes.hpp"
#include "singseries/singular.hpp"

namespace singseries {

// n is a prime seed of F when every member takes a prime value at n.
// Capability error when some |f_j(n)| does not fit in 64 bits; members
// evaluating to values < 2 simply make n a non-seed.
bool is_prime_seed(const PolyFamily& f, std::uint64_t n);

// Exact count of prime seeds 1 <= n <= N. All-linear families with
// positive slopes are sieved in one pass; otherwise each n is tested with
// 64-bit primality. Budget error for N > 2^31.
std::uint64_t count_prime_seeds(const PolyFamily& f, std::uint64_t N,
                                bool assume_irreducible = false);

// The fair window length peg(F)/S(F) * (log N)^m with S truncated at P.
// Domain error when S(F) is exactly zero at P; config error via the family
// evaluator's preconditions.
double delta_length(const PolyFamily& f, std::uint64_t N, std::uint64_t P, const PrimeTable& pt,
                    bool assume_irreducible = false);

enum class WindowMode { disjoint, sliding };

struct WindowStats {
  std::uint64_t N = 0;
  double lambda = 0;
  double delta = 0;       // delta_length(F, N, P)
  std::uint64_t L = 0;    // round(lambda * delta)
  WindowMode mode = WindowMode::disjoint;
  std::uint64_t window_count = 0;
  std::vector<std::uint64_t> histogram;  // [r] = windows holding exactly r seeds
  std::uint64_t seeds_counted = 0;       // sum r * histogram[r]
};

// Seed-count histogram over windows of length L = round(lambda * delta).
// Disjoint mode partitions [1, N] into floor(N/L) windows [wL+1, (w+1)L];
// sliding mode scans every start n = 0..N-L with a running count (windows
// overlap, so counts are serially correlated; flagged in artifact output).
// Config error when L < 1 or L > N.
WindowStats window_counts(const PolyFamily& f, std::uint64_t N, double lambda, WindowMode mode,
                          std::uint64_t P, const PrimeTable& pt, unsigned shards = 1,
                          bool assume_irreducible = false);

struct PoissonFit {
  double lambda = 0;        // target parameter
  double mean = 0;          // empirical window-count mean
  double variance = 0;
  double tv = 0;            // total variation distance to Poisson(lambda)
  double chi_square = 0;    // statistic with right-tail bins pooled to expected >= 5
  std::uint32_t chi_bins = 0;  // bins after pooling (dof = chi_bins - 1)
};

// Goodness of fit of the window histogram against Poisson(lambda).
// TV = (1/2) [ sum_r |emp(r) - pmf(r)| + unobserved Poisson tail mass ].
// Domain error on an empty histogram.
PoissonFit poisson_fit(const WindowStats& w);

}  // namespace singseries
