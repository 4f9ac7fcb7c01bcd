#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "singseries/primes.hpp"

namespace singseries {

// mu_k(m): the limiting m-th moment of the k-tuple singular series over
// the tuple ensemble, as an Euler product of exact local averages.
struct MomentResult {
  std::uint32_t k = 0, m = 0;
  std::uint64_t cutoff = 0;
  double value = 1;
  double log_value = 0;
  double tail_log_bound = 0;  // 8 k^2 m^2 / (P-1), validated by cutoff doubling
  // Diagnostic retention of the factors for p <= min(P, 100).
  std::vector<std::pair<std::uint64_t, double>> local_factors;
};

// The exact local average at p:
//   (1-1/p)^{-km} * sum_{v=1}^{min(k,p)} sigma(k,v)/v! * prod_{i<v}(p-i)/p
//                                        * p^{-(k-v)} * (1-v/p)^m
// The prod_{i<v}(p-i)/p block carries C(p,v) v! / p^v, so no separate p^-v
// appears; every term is nonnegative, so the sum has no cancellation.
// Relative error <= 1e-13. Real exponents m >= 0 are accepted (0^m = 0 for
// m > 0; m = 0 gives exactly 1). Domain error for k < 1, m < 0, p < 2.
double local_moment_factor(std::uint64_t p, std::uint32_t k, double m);

// Product of local_moment_factor over p <= P; log space, compensated
// summation. Preconditions k, m >= 1 and P >= max(4 k^2 m^2, 100)
// (config error), pt.limit() >= P (bounds error).
MomentResult mu(std::uint32_t k, std::uint32_t m, std::uint64_t P, const PrimeTable& pt);

// Probability that the limiting random singular series is nonzero:
// prod_{p <= k} (1 - sigma(k,p)/p^k), exact. k >= 1.
mpq_class nonvanishing_probability(std::uint32_t k);

// k-th moment of Poisson(lambda): sum_{r=1}^{k} lambda^r/r! * sigma(k,r).
// k >= 1, lambda > 0 (domain error).
double poisson_moment(std::uint32_t k, double lambda);

// Explicit lower bound prod_{p <= m} (1+1/(p-1))^{m(k-1)} p^{-(k-1)},
// from P(rho_p = 1) = p^{-(k-1)} applied to each local average. Meaningful
// for k >= 2 (equals 1 identically at k = 1). k, m >= 1.
double growth_lower_bound(std::uint32_t k, std::uint32_t m);

// Positivity of the moment Hankel matrices [mu_{i+j}(m)] and
// [mu_{i+j+1}(m)], 0 <= i,j <= N, with mu_0(m) := 1.
struct HankelReport {
  bool positive = false;       // all normalized leading minors exceed -tolerance
  bool indeterminate = false;  // conditioning failure: no verdict either way
  double tolerance = 0;
  // Normalized leading principal minors (unit diagonal scaling), per shift.
  std::vector<double> minors_shift0, minors_shift1;
};

// Pre: m >= 1, N <= 5 (bounds error), P large enough for mu(2N+1, m, P)
// (config error via mu). Exactly-singular matrices (the m-independent
// rank-one case at mu == 1) pass as semidefinite within tolerance.
HankelReport hankel_positivity(std::uint32_t m, std::uint32_t N, std::uint64_t P,
                               const PrimeTable& pt);

}  // namespace singseries
