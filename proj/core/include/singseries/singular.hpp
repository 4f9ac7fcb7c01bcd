#pragma once

#include <cstdint>
#include <optional>

#include "singseries/polyfam.hpp"
#include "singseries/primes.hpp"
#include "singseries/tuples.hpp"

namespace singseries {

// A truncated Euler product. For absolutely convergent products (tuple
// series, moment products) tail_log_bound rigorously bounds
// |log(true value / value)|. For conditionally convergent family series it
// is the observed convergence spread |partial(P) - partial(P/2)|, heuristic.
struct EulerProductValue {
  double value = 0;
  std::uint64_t cutoff = 0;
  double tail_log_bound = 0;
  enum class Mode { rigorous, heuristic } mode = Mode::rigorous;
  bool exact_zero = false;  // a factor vanished identically; value is exactly 0
};

// log prod_{k < p <= P} (1 - k/p)(1 - 1/p)^{-k}, the generic part of a
// k-tuple singular series (every prime not dividing the discriminant
// contributes a generic factor).
struct BaseConstant {
  std::uint32_t k = 0;
  std::uint64_t cutoff = 0;
  long double log_value = 0;
};

// (1 - nu/p)(1 - 1/p)^{-k}, relative error well under 1e-15.
// Domain error unless 1 <= nu <= min(k, p); returns exactly 0 at nu = p.
double local_factor(std::uint64_t p, std::uint32_t nu, std::uint32_t k);

// Generic-prime product over k < p <= P, compensated log-space summation,
// deterministic for every shard count. Config error when P < 2k^2.
// Requires pt.limit() >= P.
BaseConstant base_constant(std::uint32_t k, std::uint64_t P, const PrimeTable& pt,
                           unsigned shards = 1);

// Singular series of a distinct-entry tuple, truncated at P.
//
// Direct form: the full product of local factors over p <= P.
// Fast form (base supplied): base times special factors at p <= k and at
// the discriminant's prime support; identical value to relative 1e-12.
//
// Exact zero (nu_p = p for some p <= k) is detected exactly, never by
// floating comparison. Rigorous tail: 2k^2/(P-1), plus 4k/q for any
// discriminant prime q > P (possible only when the tuple spread exceeds P).
// Degenerate error on repeated entries; config error when P < 2k^2 or the
// supplied base does not match (k, P).
EulerProductValue singular_series_tuple(const KTuple& h, std::uint64_t P, const PrimeTable& pt,
                                        const std::optional<BaseConstant>& base = std::nullopt);

// Partial product prod_{p <= P} (1 - nu_p(F)/p)(1 - 1/p)^{-m} for a
// primitive family (domain error otherwise). Mode heuristic with the
// convergence spread |partial(P) - partial(P/2)| as the tail estimate;
// exact zero (rigorous) when a factor vanishes. Config error when P < 4
// (the spread needs primes on both sides of P/2).
EulerProductValue singular_series_family(const PolyFamily& f, std::uint64_t P,
                                         const PrimeTable& pt, bool assume_irreducible = false);

}  // namespace singseries
