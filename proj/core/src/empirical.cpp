#include "singseries/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kahan.hpp"
#include "singseries/errors.hpp"
#include "singseries/parallel.hpp"
#include "singseries/rng.hpp"
#include "singseries/tuples.hpp"

namespace singseries {

namespace {

constexpr std::uint64_t kSweepChunk = 65536;  // pinned: changing it changes artifacts
constexpr std::uint64_t kSampleChunk = 4096;  // pinned likewise

// Shared read-only context for evaluating S(t) over a sweep with the fast
// discriminant-support form.
struct SweepContext {
  std::uint32_t k = 0;
  std::uint64_t h = 0;
  std::uint64_t P = 0;
  long double base_value = 0;                     // exp of the generic product
  std::vector<std::uint64_t> small_primes;        // p <= k
  std::vector<std::vector<long double>> small_local;  // [idx][nu-1], 0 at nu == p
  std::vector<std::uint32_t> spf;                 // covers every pairwise difference

  SweepContext(std::uint32_t k_, std::uint64_t h_, std::uint64_t P_, const PrimeTable& pt)
      : k(k_), h(h_), P(P_) {
    base_value = std::exp(base_constant(k_, P_, pt).log_value);
    for (std::uint64_t p : pt.primes()) {
      if (p > k_) break;
      small_primes.push_back(p);
      std::vector<long double> row;
      for (std::uint32_t nu = 1; nu <= std::min<std::uint64_t>(k_, p); ++nu)
        row.push_back(nu == p ? 0.0L : (long double)local_factor(p, nu, k_));
      small_local.push_back(std::move(row));
    }
    spf = smallest_factor_table((std::uint32_t)std::max<std::uint64_t>(h_, 2));
  }

  // S(t) as a long double; exactly 0 for covering tuples. scratch holds the
  // caller's per-thread buffer for discriminant primes.
  long double value(const std::vector<std::uint64_t>& t,
                    std::vector<std::uint64_t>& scratch) const {
    long double v = base_value;
    for (std::size_t idx = 0; idx < small_primes.size(); ++idx) {
      std::uint64_t p = small_primes[idx];
      std::uint64_t mask = 0;
      for (std::uint64_t e : t) mask |= std::uint64_t(1) << (e % p);
      std::uint32_t nu = (std::uint32_t)__builtin_popcountll(mask);
      if (nu == p) return 0.0L;
      v *= small_local[idx][nu - 1];
    }
    scratch.clear();
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        std::uint64_t d = t[i] > t[j] ? t[i] - t[j] : t[j] - t[i];
        while (d > 1) {
          std::uint32_t p = spf[d];
          if (p > k) scratch.push_back(p);
          while (d % p == 0) d /= p;
        }
      }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (std::uint64_t q : scratch) {
      if (q > P) continue;  // beyond the truncation, contributes only tail
      std::uint32_t nu = 0;
      std::uint64_t seen[64];
      for (std::uint64_t e : t) {
        std::uint64_t r = e % q;
        bool dup = false;
        for (std::uint32_t s = 0; s < nu; ++s)
          if (seen[s] == r) dup = true;
        if (!dup) seen[nu++] = r;
      }
      v *= (long double)(q - nu) / (long double)(q - k);
    }
    return v;
  }
};

std::uint64_t checked_sweep_count(std::uint32_t k, std::uint64_t h, std::uint64_t budget) {
  TupleSpace space(k, h);
  if (space.count() > mpz_class(budget))
    raise(errc::budget, "tuple sweep size exceeds the enumeration budget");
  return space.count().get_ui();
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(Provenance prov,
                                             std::vector<std::pair<double, std::uint64_t>> atoms,
                                             std::uint64_t zero_count)
    : prov_(prov), atoms_(std::move(atoms)), zero_count_(zero_count) {
  std::sort(atoms_.begin(), atoms_.end());
  std::vector<std::pair<double, std::uint64_t>> merged;
  for (const auto& [v, c] : atoms_) {
    if (c == 0) continue;
    if (!(v > 0) || !std::isfinite(v))
      raise(errc::domain, "distribution atoms must be finite and positive");
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += c;
    else
      merged.emplace_back(v, c);
  }
  atoms_ = std::move(merged);
  total_ = zero_count_;
  for (const auto& [v, c] : atoms_) total_ += c;
  if (total_ == 0) raise(errc::domain, "empty distribution");
}

double EmpiricalDistribution::cdf(double x) const {
  if (x < 0) return 0.0;
  long double cum = (long double)zero_count_;
  for (const auto& [v, c] : atoms_) {
    if (v > x) break;
    cum += (long double)c;
  }
  return (double)(cum / (long double)total_);
}

double EmpiricalDistribution::moment(double m) const {
  if (!(m >= 0)) raise(errc::domain, "moment order must be nonnegative");
  detail::Kahan acc;
  for (const auto& [v, c] : atoms_) acc.add(std::pow((long double)v, (long double)m) * c);
  if (m == 0) acc.add((long double)zero_count_);
  return (double)(acc.sum / (long double)total_);
}

double empirical_moment(std::uint32_t k, std::uint32_t m, std::uint64_t h, std::uint64_t P,
                        const PrimeTable& pt, unsigned shards, std::uint64_t budget) {
  if (m < 1) raise(errc::domain, "empirical_moment requires m >= 1");
  std::uint64_t n = checked_sweep_count(k, h, budget);
  SweepContext ctx(k, h, P, pt);
  TupleSpace space(k, h);
  auto acc = sharded_reduce(
      n, kSweepChunk, shards, detail::Kahan{},
      [&](std::uint64_t lo, std::uint64_t hi, detail::Kahan& a) {
        auto t = space.unrank(lo);
        std::vector<std::uint64_t> scratch;
        for (std::uint64_t r = lo; r < hi; ++r) {
          long double v = ctx.value(t, scratch);
          if (v != 0.0L) {
            long double pw = v;
            for (std::uint32_t e = 1; e < m; ++e) pw *= v;
            a.add(pw);
          }
          if (r + 1 < hi) space.next(t);
        }
      },
      [](detail::Kahan& a, const detail::Kahan& b) { a.add(b.sum); });
  return (double)(acc.sum / (long double)n);
}

namespace {

struct DistAcc {
  std::map<double, std::uint64_t> counts;
  std::uint64_t zeros = 0;
};

}  // namespace

EmpiricalDistribution empirical_distribution(std::uint32_t k, std::uint64_t h, std::uint64_t P,
                                             const PrimeTable& pt, unsigned shards,
                                             std::uint64_t budget) {
  std::uint64_t n = checked_sweep_count(k, h, budget);
  SweepContext ctx(k, h, P, pt);
  TupleSpace space(k, h);
  auto acc = sharded_reduce(
      n, kSweepChunk, shards, DistAcc{},
      [&](std::uint64_t lo, std::uint64_t hi, DistAcc& a) {
        auto t = space.unrank(lo);
        std::vector<std::uint64_t> scratch;
        for (std::uint64_t r = lo; r < hi; ++r) {
          long double v = ctx.value(t, scratch);
          if (v == 0.0L)
            ++a.zeros;
          else
            ++a.counts[(double)v];
          if (r + 1 < hi) space.next(t);
        }
      },
      [](DistAcc& a, const DistAcc& b) {
        a.zeros += b.zeros;
        for (const auto& [v, c] : b.counts) a.counts[v] += c;
      });
  std::vector<std::pair<double, std::uint64_t>> atoms(acc.counts.begin(), acc.counts.end());
  return EmpiricalDistribution(EmpiricalDistribution::Provenance::tuple_sweep, std::move(atoms),
                               acc.zeros);
}

EmpiricalDistribution sample_random_singular(const MonteCarloConfig& cfg, const PrimeTable& pt,
                                             unsigned shards) {
  if (cfg.k < 1) raise(errc::domain, "sample_random_singular requires k >= 1");
  if (cfg.n < 1) raise(errc::domain, "sample_random_singular requires n >= 1");
  if (cfg.P < 2 * (std::uint64_t)cfg.k * cfg.k)
    raise(errc::config, "cutoff must be at least 2k^2");
  if (pt.limit() < cfg.P) raise(errc::bounds, "prime table does not reach the cutoff");

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : pt.primes()) {
    if (p > cfg.P) break;
    primes.push_back(p);
  }
  // Per-prime tables: log local factor by distinct-residue count.
  std::vector<std::vector<long double>> loc(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::uint64_t p = primes[i];
    long double gen = -(long double)cfg.k * std::log1p(-1.0L / (long double)p);
    std::uint64_t rmax = std::min<std::uint64_t>(cfg.k, p);
    loc[i].resize(rmax);
    for (std::uint64_t rho = 1; rho <= rmax; ++rho)
      loc[i][rho - 1] = rho == p
                            ? 0.0L  // unused: rho == p short-circuits to an exact zero
                            : std::log1p(-(long double)rho / (long double)p) + gen;
  }

  struct Acc {
    std::vector<double> values;
    std::uint64_t zeros = 0;
  };
  auto acc = sharded_reduce(
      cfg.n, kSampleChunk, shards, Acc{},
      [&](std::uint64_t lo, std::uint64_t hi, Acc& a) {
        std::vector<std::uint64_t> res(cfg.k);
        for (std::uint64_t s = lo; s < hi; ++s) {
          long double logsum = 0.0L;
          bool zero = false;
          for (std::size_t i = 0; i < primes.size() && !zero; ++i) {
            std::uint64_t p = primes[i];
            SplitMix64 g(derive_stream(cfg.seed, s, (std::uint64_t)i));
            std::uint32_t rho = 0;
            for (std::uint32_t d = 0; d < cfg.k; ++d) {
              std::uint64_t r = bounded(g.next(), p);
              bool dup = false;
              for (std::uint32_t q = 0; q < rho; ++q)
                if (res[q] == r) dup = true;
              if (!dup) res[rho++] = r;
            }
            if (rho == p)
              zero = true;
            else
              logsum += loc[i][rho - 1];
          }
          if (zero)
            ++a.zeros;
          else
            a.values.push_back((double)std::exp(logsum));
        }
      },
      [](Acc& a, const Acc& b) {
        a.values.insert(a.values.end(), b.values.begin(), b.values.end());
        a.zeros += b.zeros;
      });
  std::sort(acc.values.begin(), acc.values.end());
  std::vector<std::pair<double, std::uint64_t>> atoms;
  for (double v : acc.values) {
    if (!atoms.empty() && atoms.back().first == v)
      ++atoms.back().second;
    else
      atoms.emplace_back(v, 1);
  }
  return EmpiricalDistribution(EmpiricalDistribution::Provenance::monte_carlo, std::move(atoms),
                               acc.zeros);
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  long double ta = (long double)a.total(), tb = (long double)b.total();
  long double ca = (long double)a.zero_count(), cb = (long double)b.zero_count();
  long double best = std::fabs(ca / ta - cb / tb);
  std::size_t ia = 0, ib = 0;
  const auto& aa = a.atoms();
  const auto& ab = b.atoms();
  while (ia < aa.size() || ib < ab.size()) {
    double x;
    if (ia < aa.size() && (ib >= ab.size() || aa[ia].first <= ab[ib].first))
      x = aa[ia].first;
    else
      x = ab[ib].first;
    while (ia < aa.size() && aa[ia].first == x) ca += (long double)aa[ia++].second;
    while (ib < ab.size() && ab[ib].first == x) cb += (long double)ab[ib++].second;
    best = std::max(best, std::fabs(ca / ta - cb / tb));
  }
  return (double)best;
}

namespace {

// Fast composed-series evaluation for families of linear members. Every
// composed member is a_j X + (a_j h_i + b_j); a prime above k*m is special
// only if it divides some slope or some pairwise-pair resultant, so the
// generic product can be taken off the shelf and corrected at finitely
// many primes per tuple.
struct LinearComposedContext {
  std::uint32_t k, km;
  std::uint64_t h, P;
  std::vector<long long> slope, intercept;  // per member
  long double base_value;
  std::vector<std::uint64_t> small_primes;               // p <= km
  std::vector<std::vector<long double>> small_local;     // [idx][nu], nu in 0..p-1
  std::vector<std::uint64_t> fixed_special;              // q > km: q | slopes or same-entry resultants
  std::vector<std::uint32_t> spf;                        // covers |cross resultants|
  std::vector<long long> fixed_res;                      // a_{j'} b_j - a_j b_{j'} per (j<j')
  long long slope_prod_abs = 1;

  LinearComposedContext(const PolyFamily& f, std::uint32_t k_, std::uint64_t h_, std::uint64_t P_,
                        const PrimeTable& pt)
      : k(k_), km(k_ * (std::uint32_t)f.m()), h(h_), P(P_) {
    if (km > 64) raise(errc::capability, "composed sweep supports at most 64 composed members");
    for (const auto& g : f.members()) {
      if (!g.coeff(1).fits_slong_p() || !g.coeff(0).fits_slong_p())
        raise(errc::capability, "linear member coefficients exceed 64 bits");
      slope.push_back(g.coeff(1).get_si());
      intercept.push_back(g.coeff(0).get_si());
    }
    if (P < 2 * (std::uint64_t)km * km) raise(errc::config, "cutoff must be at least 2(km)^2");
    base_value = std::exp(base_constant(km, P, pt).log_value);
    for (std::uint64_t p : pt.primes()) {
      if (p > km) break;
      small_primes.push_back(p);
      std::vector<long double> row(p);
      for (std::uint64_t nu = 0; nu < p; ++nu)
        row[nu] = std::exp(std::log1p(-(long double)nu / (long double)p) -
                           (long double)km * std::log1p(-1.0L / (long double)p));
      small_local.push_back(std::move(row));
    }
    long long amax = 1, fmax = 1;
    for (std::size_t j = 0; j < slope.size(); ++j) {
      slope_prod_abs *= std::abs(slope[j]);
      amax = std::max(amax, std::abs(slope[j]));
      for (std::size_t j2 = j + 1; j2 < slope.size(); ++j2) {
        long long r = slope[j2] * intercept[j] - slope[j] * intercept[j2];
        fixed_res.push_back(r);
        fmax = std::max(fmax, std::abs(r));
      }
    }
    std::uint64_t rmax =
        (std::uint64_t)amax * (std::uint64_t)amax * (h_ > 0 ? h_ - 1 : 0) + (std::uint64_t)fmax;
    spf = smallest_factor_table((std::uint32_t)std::max<std::uint64_t>(rmax + 1, 2));
    auto push_primes = [&](std::uint64_t v) {
      while (v > 1) {
        std::uint32_t p = spf[v];
        if (p > km) fixed_special.push_back(p);
        while (v % p == 0) v /= p;
      }
    };
    push_primes((std::uint64_t)slope_prod_abs);
    for (long long r : fixed_res) push_primes((std::uint64_t)std::abs(r));
    std::sort(fixed_special.begin(), fixed_special.end());
    fixed_special.erase(std::unique(fixed_special.begin(), fixed_special.end()),
                        fixed_special.end());
  }

  std::uint32_t family_nu(const std::vector<std::uint64_t>& t, std::uint64_t p) const {
    // Distinct roots of {a_j X + a_j h_i + b_j} mod p.
    std::uint64_t roots[64];
    std::uint32_t nu = 0;
    for (std::size_t j = 0; j < slope.size(); ++j) {
      std::uint64_t aj = (std::uint64_t)(((slope[j] % (long long)p) + (long long)p) % (long long)p);
      if (aj == 0) continue;  // content-1 member: no root at this prime
      std::uint64_t inv = powmod_u64(aj, p - 2, p);
      std::uint64_t bj =
          (std::uint64_t)(((intercept[j] % (long long)p) + (long long)p) % (long long)p);
      for (std::uint64_t hi : t) {
        std::uint64_t beta = (mulmod_u64(aj, hi % p, p) + bj) % p;
        std::uint64_t r = mulmod_u64(p - beta % p, inv, p) % p;
        bool dup = false;
        for (std::uint32_t s = 0; s < nu; ++s)
          if (roots[s] == r) dup = true;
        if (!dup) roots[nu++] = r;
      }
    }
    return nu;
  }

  long double value(const std::vector<std::uint64_t>& t,
                    std::vector<std::uint64_t>& scratch) const {
    long double v = base_value;
    for (std::size_t idx = 0; idx < small_primes.size(); ++idx) {
      std::uint64_t p = small_primes[idx];
      std::uint32_t nu = family_nu(t, p);
      if (nu == p) return 0.0L;
      v *= small_local[idx][nu];
    }
    scratch.assign(fixed_special.begin(), fixed_special.end());
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
      for (std::size_t i2 = i + 1; i2 < t.size(); ++i2) {
        long long diff = (long long)t[i2] - (long long)t[i];
        // Over ordered (j, j2) this expression runs through the resultant
        // of every cross pair of composed members, up to sign.
        for (std::size_t j = 0; j < slope.size(); ++j)
          for (std::size_t j2 = 0; j2 < slope.size(); ++j2) {
            long long r = slope[j] * slope[j2] * diff +
                          (slope[j2] * intercept[j] - slope[j] * intercept[j2]);
            std::uint64_t a = (std::uint64_t)std::abs(r);
            while (a > 1) {
              std::uint32_t p = spf[a];
              if (p > km) scratch.push_back(p);
              while (a % p == 0) a /= p;
            }
          }
      }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (std::uint64_t q : scratch) {
      if (q > P) continue;
      std::uint32_t nu = family_nu(t, q);
      v *= (long double)(q - nu) / (long double)(q - km);
    }
    return v;
  }
};

}  // namespace

ComposedAverage empirical_composed_average(const PolyFamily& f, std::uint32_t k, std::uint64_t h,
                                           std::uint64_t P, const PrimeTable& pt, unsigned shards,
                                           std::uint64_t budget) {
  auto rep = f.primitivity();
  if (!rep.primitive)
    raise(errc::domain, "composed average requires a primitive family: " + rep.violation);
  ComposedAverage out;
  out.family_value = singular_series_family(f, P, pt);
  if (out.family_value.exact_zero)
    raise(errc::domain, "composed average requires a nonvanishing family series");
  std::uint64_t n = checked_sweep_count(k, h, budget);
  out.tuple_count = n;

  auto rels = shift_relations(f);
  std::vector<long long> deltas;
  for (const auto& r : rels) {
    if (!r.delta.fits_slong_p()) continue;  // larger than any height difference
    deltas.push_back(r.delta.get_si());
  }

  bool all_linear = true;
  for (const auto& g : f.members())
    if (g.zero() || g.degree() != 1) all_linear = false;

  TupleSpace space(k, h);
  struct Acc {
    detail::Kahan sum;
    std::uint64_t primitive = 0, imprimitive = 0;
  };

  if (all_linear) {
    LinearComposedContext ctx(f, k, h, P, pt);
    auto acc = sharded_reduce(
        n, kSweepChunk, shards, Acc{},
        [&](std::uint64_t lo, std::uint64_t hi, Acc& a) {
          auto t = space.unrank(lo);
          std::vector<std::uint64_t> scratch;
          for (std::uint64_t r = lo; r < hi; ++r) {
            bool collide = false;
            for (std::size_t i = 0; i + 1 < t.size() && !collide; ++i)
              for (std::size_t i2 = i + 1; i2 < t.size() && !collide; ++i2) {
                long long diff = (long long)t[i2] - (long long)t[i];
                for (long long d : deltas)
                  if (d == diff) {
                    collide = true;
                    break;
                  }
              }
            if (collide) {
              ++a.imprimitive;
            } else {
              ++a.primitive;
              a.sum.add(ctx.value(t, scratch));
            }
            if (r + 1 < hi) space.next(t);
          }
        },
        [](Acc& a, const Acc& b) {
          a.sum.add(b.sum.sum);
          a.primitive += b.primitive;
          a.imprimitive += b.imprimitive;
        });
    out.primitive_count = acc.primitive;
    out.imprimitive_count = acc.imprimitive;
    long double norm = std::pow((long double)h, (long double)k);
    out.value = (double)(acc.sum.sum / norm);
    return out;
  }

  // General members: evaluate the composed family directly. The full prime
  // loop per tuple is costly, so budget the product of sweep size and
  // prime count.
  if ((double)n * (double)pt.primes().size() > 2e9)
    raise(errc::budget, "composed sweep with nonlinear members exceeds the evaluation budget");
  auto acc = sharded_reduce(
      n, kSweepChunk, shards, Acc{},
      [&](std::uint64_t lo, std::uint64_t hi, Acc& a) {
        auto t = space.unrank(lo);
        for (std::uint64_t r = lo; r < hi; ++r) {
          KTuple tup(t);
          if (!composed_is_primitive(f, tup)) {
            ++a.imprimitive;
          } else {
            ++a.primitive;
            auto val = singular_series_family(compose(f, tup), P, pt);
            a.sum.add((long double)val.value);
          }
          if (r + 1 < hi) space.next(t);
        }
      },
      [](Acc& a, const Acc& b) {
        a.sum.add(b.sum.sum);
        a.primitive += b.primitive;
        a.imprimitive += b.imprimitive;
      });
  out.primitive_count = acc.primitive;
  out.imprimitive_count = acc.imprimitive;
  long double norm = std::pow((long double)h, (long double)k);
  out.value = (double)(acc.sum.sum / norm);
  return out;
}

}  // namespace singseries
