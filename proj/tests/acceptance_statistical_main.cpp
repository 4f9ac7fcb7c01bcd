// Statistical acceptance gates: fixed-size empirical runs measured against
// their asymptotic targets. Seeds and shard counts are pinned below, so
// every number here is reproducible bit for bit. The gates are reported
// honestly: at the pinned run sizes some measured statistics sit outside
// the asymptotic bands, and those lines FAIL with the measured values
// (see README.md, "Acceptance gates"). Exit code = failed gate count.

#include <cmath>
#include <cstdio>
#include <string>

#include "singseries/empirical.hpp"
#include "singseries/io.hpp"
#include "singseries/patterns.hpp"
#include "singseries/polyfam.hpp"
#include "singseries/primes.hpp"

using namespace singseries;

namespace {

int failures = 0;

void report(int id, const char* what, bool pass, const std::string& detail) {
  std::printf("[%s] gate %2d: %s | %s\n", pass ? "PASS" : "FAIL", id, what, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fd(double v) { return format_double(v); }

// ------------------------------------------------------------------ gate 9
// Sweep distribution (k=2, h=2000, P=1e6) vs the Monte Carlo limit model
// (n=1e5, P=1e3, seed 12345, 1 shard), two-sample KS <= 0.05.
//
// Known shortfall: the sweep's zero-adjacent mass at h=2000 still differs
// from the limit by ~0.07 (the gap shrinks only like a power of log h), so
// this gate FAILs at the pinned sizes; the measured distance is printed.

void gate9() {
  PrimeTable big(1000000);
  auto sweep = empirical_distribution(2, 2000, 1000000, big);
  MonteCarloConfig cfg;
  cfg.k = 2;
  cfg.P = 1000;
  cfg.n = 100000;
  cfg.seed = 12345;
  PrimeTable small(1000);
  auto mc = sample_random_singular(cfg, small, 1);
  double ks = ks_distance(sweep, mc);
  report(9, "sweep vs Monte Carlo limit distribution (seed 12345)", ks <= 0.05,
         "KS = " + fd(ks) + " (gate <= 0.05); sweep zero fraction " +
             fd((double)sweep.zero_count() / (double)sweep.total()) + ", sample zero fraction " +
             fd((double)mc.zero_count() / (double)mc.total()));
}

// ----------------------------------------------------------------- gate 10
// Window statistics at N=1e7, lambda=2, disjoint windows, S truncated at
// P=1e6, for three families. Gate per family: |mean - 2| / 2 <= 0.15 and
// TV distance to Poisson(2) <= 0.05.
//
// Known shortfall: the seed density drifts like a power of log within any
// finite range, which inflates the mean by the factor (log N / log seed
// scale)^m ~ 1.16 at N=1e7 and pushes every TV above 0.05; the prime run
// and the 2x+1 run clear the mean band, the pair run misses it. All
// measured values are printed.

void gate10() {
  PrimeTable pt(1000000);
  struct Fam {
    const char* text;
    const char* label;
  };
  const Fam fams[] = {{"x, x+2", "pairs x,x+2"}, {"x", "primes"}, {"x, 2x+1", "x,2x+1"}};
  bool pass = true;
  std::string detail;
  for (const auto& fam : fams) {
    auto w = window_counts(PolyFamily::parse(fam.text), 10000000, 2.0, WindowMode::disjoint,
                           1000000, pt);
    auto fit = poisson_fit(w);
    double meanrel = std::fabs(fit.mean - 2.0) / 2.0;
    bool ok = meanrel <= 0.15 && fit.tv <= 0.05;
    if (!ok) pass = false;
    detail += std::string(fam.label) + ": L=" + std::to_string(w.L) + " W=" +
              std::to_string(w.window_count) + " mean=" + fd(fit.mean) + " (" +
              fd(100 * meanrel) + "% of 2) tv=" + fd(fit.tv) + (ok ? " ok; " : " MISS; ");
  }
  report(10, "short-interval counts vs Poisson(2) at N=1e7", pass, detail);
}

}  // namespace

int main() {
  std::printf("acceptance_statistical: pinned-seed empirical gates\n");
  gate9();
  gate10();
  std::printf("acceptance_statistical: %d gate(s) failed\n", failures);
  return failures;
}
