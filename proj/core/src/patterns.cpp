#include "singseries/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "singseries/errors.hpp"
#include "singseries/parallel.hpp"

namespace singseries {

namespace {

constexpr std::uint64_t kWindowChunk = 4096;  // windows per work unit, pinned

// f_j(n) as u64; capability error beyond 64 bits; ok == false for values < 2.
std::uint64_t eval_value(const IntPolynomial& g, std::uint64_t n, bool& ok) {
  mpz_class v = g.eval(mpz_class(n));
  if (v < 2) {
    ok = false;
    return 0;
  }
  if (!v.fits_ulong_p()) raise(errc::capability, "member value exceeds 64 bits");
  ok = true;
  return v.get_ui();
}

bool all_linear_positive(const PolyFamily& f) {
  for (const auto& g : f.members())
    if (g.zero() || g.degree() != 1 || g.leading() <= 0) return false;
  return true;
}

// Seed test machinery shared by count_prime_seeds and window_counts:
// either a sieve bitmap for the linear case or per-n 64-bit primality.
struct SeedTester {
  const PolyFamily& f;
  bool sieved = false;
  std::unique_ptr<PrimeTable> table;
  std::vector<long long> slope, intercept;

  SeedTester(const PolyFamily& fam, std::uint64_t N) : f(fam) {
    if (all_linear_positive(fam)) {
      std::uint64_t maxval = 2;
      bool fits = true;
      for (const auto& g : fam.members()) {
        mpz_class top = g.eval(mpz_class(N));
        if (!top.fits_ulong_p()) fits = false;
        else maxval = std::max(maxval, (std::uint64_t)top.get_ui());
        if (!g.coeff(1).fits_slong_p() || !g.coeff(0).fits_slong_p()) fits = false;
      }
      if (fits && maxval <= (std::uint64_t(1) << 34)) {
        for (const auto& g : fam.members()) {
          slope.push_back(g.coeff(1).get_si());
          intercept.push_back(g.coeff(0).get_si());
        }
        table = std::make_unique<PrimeTable>(maxval);
        sieved = true;
      }
    }
  }

  bool operator()(std::uint64_t n) const {
    if (sieved) {
      for (std::size_t j = 0; j < slope.size(); ++j) {
        long long v = slope[j] * (long long)n + intercept[j];
        if (v < 2 || !table->contains((std::uint64_t)v)) return false;
      }
      return true;
    }
    for (const auto& g : f.members()) {
      bool ok = false;
      std::uint64_t v = eval_value(g, n, ok);
      if (!ok || !is_prime_u64(v)) return false;
    }
    return true;
  }
};

}  // namespace

bool is_prime_seed(const PolyFamily& f, std::uint64_t n) {
  for (const auto& g : f.members()) {
    bool ok = false;
    std::uint64_t v = eval_value(g, n, ok);
    if (!ok || !is_prime_u64(v)) return false;
  }
  return true;
}

std::uint64_t count_prime_seeds(const PolyFamily& f, std::uint64_t N, bool assume_irreducible) {
  (void)assume_irreducible;  // counting needs no irreducibility promise
  if (N > (std::uint64_t(1) << 31)) raise(errc::budget, "seed counting is limited to N <= 2^31");
  if (N < 1) raise(errc::domain, "count_prime_seeds requires N >= 1");
  SeedTester test(f, N);
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= N; ++n)
    if (test(n)) ++count;
  return count;
}

double delta_length(const PolyFamily& f, std::uint64_t N, std::uint64_t P, const PrimeTable& pt,
                    bool assume_irreducible) {
  if (N < 2) raise(errc::domain, "delta_length requires N >= 2");
  auto S = singular_series_family(f, P, pt, assume_irreducible);
  if (S.exact_zero) raise(errc::domain, "delta_length requires a nonvanishing singular series");
  double m = (double)f.m();
  return (double)f.peg() / S.value * std::pow(std::log((double)N), m);
}

WindowStats window_counts(const PolyFamily& f, std::uint64_t N, double lambda, WindowMode mode,
                          std::uint64_t P, const PrimeTable& pt, unsigned shards,
                          bool assume_irreducible) {
  if (!(lambda > 0)) raise(errc::domain, "window_counts requires lambda > 0");
  if (N > (std::uint64_t(1) << 31)) raise(errc::budget, "window scan is limited to N <= 2^31");
  WindowStats out;
  out.N = N;
  out.lambda = lambda;
  out.delta = delta_length(f, N, P, pt, assume_irreducible);
  double raw = lambda * out.delta;
  if (!(raw >= 0.5) || raw > (double)N + 0.5)
    raise(errc::config, "window length outside [1, N]");
  out.L = (std::uint64_t)std::llround(raw);
  if (out.L < 1 || out.L > N) raise(errc::config, "window length outside [1, N]");
  out.mode = mode;

  SeedTester test(f, N);

  if (mode == WindowMode::disjoint) {
    std::uint64_t W = N / out.L;
    out.window_count = W;
    struct Acc {
      std::vector<std::uint64_t> hist;
      std::uint64_t seeds = 0;
    };
    auto acc = sharded_reduce(
        W, kWindowChunk, shards, Acc{},
        [&](std::uint64_t lo, std::uint64_t hi, Acc& a) {
          for (std::uint64_t w = lo; w < hi; ++w) {
            std::uint64_t r = 0;
            for (std::uint64_t n = w * out.L + 1; n <= (w + 1) * out.L; ++n)
              if (test(n)) ++r;
            if (a.hist.size() <= r) a.hist.resize(r + 1, 0);
            ++a.hist[r];
            a.seeds += r;
          }
        },
        [](Acc& a, const Acc& b) {
          if (a.hist.size() < b.hist.size()) a.hist.resize(b.hist.size(), 0);
          for (std::size_t i = 0; i < b.hist.size(); ++i) a.hist[i] += b.hist[i];
          a.seeds += b.seeds;
        });
    out.histogram = std::move(acc.hist);
    out.seeds_counted = acc.seeds;
    return out;
  }

  // Sliding mode: one sequential pass with a running count. Overlapping
  // windows are inherently order-coupled, so shards are not used here;
  // integer arithmetic keeps the result reproducible regardless.
  std::vector<bool> seed(N + 1, false);
  for (std::uint64_t n = 1; n <= N; ++n) seed[n] = test(n);
  std::uint64_t running = 0;
  for (std::uint64_t n = 1; n <= out.L; ++n) running += seed[n];
  std::uint64_t starts = N - out.L + 1;
  out.window_count = starts;
  auto bump = [&](std::uint64_t r) {
    if (out.histogram.size() <= r) out.histogram.resize(r + 1, 0);
    ++out.histogram[r];
    out.seeds_counted += r;
  };
  bump(running);
  for (std::uint64_t s = 1; s < starts; ++s) {
    running -= seed[s];
    running += seed[s + out.L];
    bump(running);
  }
  return out;
}

PoissonFit poisson_fit(const WindowStats& w) {
  if (w.window_count == 0 || w.histogram.empty())
    raise(errc::domain, "poisson_fit requires a nonempty histogram");
  PoissonFit fit;
  fit.lambda = w.lambda;
  long double W = (long double)w.window_count;
  long double mean = 0, second = 0;
  for (std::size_t r = 0; r < w.histogram.size(); ++r) {
    mean += (long double)r * w.histogram[r];
    second += (long double)r * r * w.histogram[r];
  }
  mean /= W;
  second /= W;
  fit.mean = (double)mean;
  fit.variance = (double)(second - mean * mean);

  // Poisson pmf by the stable upward recurrence.
  std::size_t top = w.histogram.size();
  std::vector<long double> pmf(top);
  pmf[0] = std::exp(-(long double)w.lambda);
  for (std::size_t r = 1; r < top; ++r) pmf[r] = pmf[r - 1] * (long double)w.lambda / r;
  long double tv = 0, pmass = 0;
  for (std::size_t r = 0; r < top; ++r) {
    long double emp = (long double)w.histogram[r] / W;
    tv += std::fabs(emp - pmf[r]);
    pmass += pmf[r];
  }
  long double tailmass = pmass < 1.0L ? 1.0L - pmass : 0.0L;
  fit.tv = (double)(0.5L * (tv + tailmass));

  // Chi-square with the right tail pooled so pooled expectations are >= 5.
  long double chi = 0;
  std::uint32_t bins = 0;
  long double tail_exp = W, tail_obs = W;
  std::size_t r = 0;
  for (; r < top; ++r) {
    long double e = W * pmf[r];
    // Stop pooling singletons once the remaining expectation runs low.
    long double remaining = tail_exp - e;
    if (e < 5.0L || remaining < 5.0L) break;
    long double o = (long double)w.histogram[r];
    chi += (o - e) * (o - e) / e;
    ++bins;
    tail_exp -= e;
    tail_obs -= o;
  }
  if (tail_exp > 0) {
    chi += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
    ++bins;
  }
  fit.chi_square = (double)chi;
  fit.chi_bins = bins;
  return fit;
}

}  // namespace singseries
