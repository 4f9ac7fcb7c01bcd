#include "singseries/singular.hpp"

#include <algorithm>
#include <cmath>

#include "kahan.hpp"
#include "singseries/errors.hpp"
#include "singseries/parallel.hpp"

namespace singseries {

namespace {

constexpr std::uint64_t kBasePrimeChunk = 8192;

long double log_generic_factor(std::uint64_t p, std::uint32_t k) {
  // log (1 - k/p) - k log (1 - 1/p)
  return std::log1p(-(long double)k / (long double)p) -
         (long double)k * std::log1p(-1.0L / (long double)p);
}

long double log_local_factor(std::uint64_t p, std::uint32_t nu, std::uint32_t k) {
  return std::log1p(-(long double)nu / (long double)p) -
         (long double)k * std::log1p(-1.0L / (long double)p);
}

}  // namespace

double local_factor(std::uint64_t p, std::uint32_t nu, std::uint32_t k) {
  if (p < 2) raise(errc::domain, "local_factor requires p >= 2");
  if (k < 1) raise(errc::domain, "local_factor requires k >= 1");
  if (nu < 1 || nu > std::min<std::uint64_t>(k, p))
    raise(errc::domain, "local_factor requires 1 <= nu <= min(k, p)");
  if (nu == p) return 0.0;
  // (p - nu) p^(k-1) / (p - 1)^k, assembled exactly in extended precision.
  long double num = (long double)(p - nu);
  long double den = 1.0L;
  for (std::uint32_t i = 1; i < k; ++i) num *= (long double)p;
  for (std::uint32_t i = 0; i < k; ++i) den *= (long double)(p - 1);
  return (double)(num / den);
}

BaseConstant base_constant(std::uint32_t k, std::uint64_t P, const PrimeTable& pt,
                           unsigned shards) {
  if (k < 1) raise(errc::domain, "base_constant requires k >= 1");
  if (P < 2 * (std::uint64_t)k * k) raise(errc::config, "cutoff must be at least 2k^2");
  if (pt.limit() < P) raise(errc::bounds, "prime table does not reach the cutoff");
  const auto& primes = pt.primes();
  auto first = std::upper_bound(primes.begin(), primes.end(), (std::uint64_t)k);
  auto last = std::upper_bound(primes.begin(), primes.end(), P);
  std::uint64_t n = (std::uint64_t)(last - first);
  auto acc = sharded_reduce(
      n, kBasePrimeChunk, shards, detail::Kahan{},
      [&](std::uint64_t lo, std::uint64_t hi, detail::Kahan& a) {
        for (std::uint64_t i = lo; i < hi; ++i) a.add(log_generic_factor(first[i], k));
      },
      [](detail::Kahan& a, const detail::Kahan& b) { a.add(b.sum); });
  return BaseConstant{k, P, acc.sum};
}

EulerProductValue singular_series_tuple(const KTuple& h, std::uint64_t P, const PrimeTable& pt,
                                        const std::optional<BaseConstant>& base) {
  if (!h.distinct()) raise(errc::degenerate, "singular series of a tuple with repeated entries");
  std::uint32_t k = (std::uint32_t)h.k();
  if (P < 2 * (std::uint64_t)k * k) raise(errc::config, "cutoff must be at least 2k^2");
  if (pt.limit() < P) raise(errc::bounds, "prime table does not reach the cutoff");
  if (base && (base->k != k || base->cutoff != P))
    raise(errc::config, "base constant does not match (k, P)");

  EulerProductValue out;
  out.cutoff = P;
  out.mode = EulerProductValue::Mode::rigorous;
  double tail = 2.0 * (double)k * (double)k / (double)(P - 1);

  detail::Kahan acc;
  const auto& primes = pt.primes();
  // Primes p <= k can have nu_p = p (an exact zero of the product).
  std::size_t idx = 0;
  for (; idx < primes.size() && primes[idx] <= k && primes[idx] <= P; ++idx) {
    std::uint64_t p = primes[idx];
    std::uint32_t nu = h.nu_p(p);
    if (nu == p) {
      out.value = 0.0;
      out.exact_zero = true;
      out.tail_log_bound = 0.0;
      return out;
    }
    acc.add(log_local_factor(p, nu, k));
  }

  // Non-generic primes above k divide the discriminant, i.e. divide some
  // pairwise difference. Needed for the fast form's corrections, and in both
  // forms any support prime beyond P costs a rigorous 4k/q tail allowance
  // (the generic 2k^2/(P-1) bound only covers nu = k factors).
  std::vector<std::uint64_t> support;
  {
    const auto& e = h.entries();
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        std::uint64_t d = e[i] > e[j] ? e[i] - e[j] : e[j] - e[i];
        // Only differences beyond P can hide a support prime beyond P, so
        // the direct form skips factoring small spreads.
        if (d > 1 && (base || d > P))
          for (const auto& pe : factor_u64(d)) support.push_back(pe.first);
      }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
  }

  if (!base) {
    // Direct form: every prime contributes its local factor.
    for (; idx < primes.size() && primes[idx] <= P; ++idx) {
      std::uint64_t p = primes[idx];
      acc.add(log_local_factor(p, h.nu_p(p), k));
    }
    for (std::uint64_t q : support)
      if (q > P) tail += 4.0 * (double)k / (double)q;
  } else {
    acc.add(base->log_value);
    // Correct the generic factor at each in-range support prime by
    // (p - nu)/(p - k).
    for (std::uint64_t q : support) {
      if (q <= k) continue;  // already handled exactly above
      if (q > P) {
        tail += 4.0 * (double)k / (double)q;
        continue;
      }
      std::uint32_t nu = h.nu_p(q);
      acc.add(std::log((long double)(q - nu) / (long double)(q - k)));
    }
  }

  out.value = (double)std::exp(acc.sum);
  out.tail_log_bound = tail;
  return out;
}

EulerProductValue singular_series_family(const PolyFamily& f, std::uint64_t P,
                                         const PrimeTable& pt, bool assume_irreducible) {
  auto rep = f.primitivity(assume_irreducible);
  if (!rep.primitive)
    raise(errc::domain, "singular series requires a primitive family: " + rep.violation);
  if (P < 4) raise(errc::config, "family cutoff must be at least 4");
  if (pt.limit() < P) raise(errc::bounds, "prime table does not reach the cutoff");

  std::uint32_t m = (std::uint32_t)f.m();
  EulerProductValue out;
  out.cutoff = P;
  out.mode = EulerProductValue::Mode::heuristic;

  detail::Kahan acc;
  long double half_value = 0.0L;
  bool have_half = false;
  std::uint64_t half = P / 2;
  for (std::uint64_t p : pt.primes()) {
    if (p > P) break;
    if (p > half && !have_half) {
      half_value = std::exp(acc.sum);
      have_half = true;
    }
    FamilyNu nu = nu_p_family(f, p);
    if (nu.nu == p) {
      out.value = 0.0;
      out.exact_zero = true;
      out.tail_log_bound = 0.0;
      out.mode = EulerProductValue::Mode::rigorous;
      return out;
    }
    acc.add(std::log1p(-(long double)nu.nu / (long double)p) -
            (long double)m * std::log1p(-1.0L / (long double)p));
  }
  long double full = std::exp(acc.sum);
  if (!have_half) half_value = full;
  out.value = (double)full;
  out.tail_log_bound = (double)std::fabs(full - half_value);
  return out;
}

}  // namespace singseries
