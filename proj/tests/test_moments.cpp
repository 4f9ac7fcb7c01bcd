#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "singseries/errors.hpp"
#include "singseries/moments.hpp"
#include "singseries/primes.hpp"

using namespace singseries;

namespace {

mpq_class pow_mpq(const mpq_class& b, unsigned e) {
  mpq_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Exact local average by enumerating all p^k residue vectors.
double brute_local_factor(std::uint64_t p, std::uint32_t k, unsigned m) {
  std::vector<std::uint64_t> v(k, 0);
  mpq_class acc = 0;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < k; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t t = idx;
    std::vector<bool> seen(p, false);
    std::uint32_t rho = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint64_t r = t % p;
      t /= p;
      if (!seen[r]) {
        seen[r] = true;
        ++rho;
      }
    }
    acc += pow_mpq(mpq_class((unsigned long)(p - rho), (unsigned long)p), m);
  }
  acc /= mpq_class((unsigned long)total);
  acc *= pow_mpq(mpq_class((unsigned long)p, (unsigned long)(p - 1)), k * m);
  return acc.get_d();
}

}  // namespace

TEST_SUITE("moments") {
  TEST_CASE("local factor against exhaustive enumeration") {
    for (std::uint64_t p : {2, 3, 5, 7})
      for (std::uint32_t k = 1; k <= 4; ++k)
        for (unsigned m = 1; m <= 3; ++m) {
          double want = brute_local_factor(p, k, m);
          double got = local_moment_factor(p, k, (double)m);
          CHECK(std::fabs(got - want) <= 1e-13 * std::fabs(want));
        }
  }

  TEST_CASE("local factor closed values") {
    CHECK(local_moment_factor(2, 2, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(local_moment_factor(5, 1, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(local_moment_factor(2, 1, 7.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(local_moment_factor(997, 3, 0.0) == 1.0);  // m = 0 exactly
  }

  TEST_CASE("local factor second moment closed form") {
    // E[(1 - rho/p)^2] in terms of hit probabilities of one and two classes.
    for (std::uint64_t p : {2ull, 3ull, 5ull, 101ull, 1009ull})
      for (std::uint32_t k : {2u, 3u, 5u}) {
        double q1 = std::pow(1.0 - 1.0 / (double)p, (double)k);
        double q2 = std::pow(1.0 - 2.0 / (double)p, (double)k);
        double erho = (double)p * (1.0 - q1);
        double erho2 = erho + (double)p * ((double)p - 1.0) * (1.0 - 2.0 * q1 + q2);
        double e2 = 1.0 - 2.0 * erho / (double)p + erho2 / ((double)p * (double)p);
        double want = e2 * std::pow(1.0 - 1.0 / (double)p, -2.0 * (double)k);
        CHECK(local_moment_factor(p, k, 2.0) == doctest::Approx(want).epsilon(1e-12));
      }
  }

  TEST_CASE("local factors sit on the correct side of one") {
    for (std::uint64_t p : {2ull, 3ull, 31ull, 9973ull}) {
      for (std::uint32_t k : {2u, 3u, 6u})
        for (double m : {2.0, 3.0, 5.5}) CHECK(local_moment_factor(p, k, m) > 1.0);
      // k = 1 is deterministic: every moment factor is exactly 1.
      CHECK(local_moment_factor(p, 1, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }

  TEST_CASE("local factor guards") {
    CHECK_THROWS_AS(local_moment_factor(1, 2, 2.0), error);
    CHECK_THROWS_AS(local_moment_factor(5, 0, 2.0), error);
    CHECK_THROWS_AS(local_moment_factor(5, 2, -1.0), error);
  }

  TEST_CASE("first moments are one") {
    PrimeTable pt(10000);
    for (std::uint32_t k = 1; k <= 6; ++k) {
      auto r = mu(k, 1, 10000, pt);
      CHECK(std::fabs(r.value - 1.0) < 1e-9);
      for (auto [p, f] : r.local_factors) CHECK(std::fabs(f - 1.0) < 1e-12);
    }
  }

  TEST_CASE("second moments against frozen references") {
    PrimeTable pt(1000000);
    auto r2 = mu(2, 2, 1000000, pt);
    CHECK(std::fabs(r2.value - 2.3009615447124943) < 1e-9);
    CHECK(r2.tail_log_bound == doctest::Approx(128.0 / 999999.0));
    auto r3 = mu(3, 2, 1000000, pt);
    CHECK(std::fabs(r3.value - 6.03294567320192) < 1e-8);
  }

  TEST_CASE("cutoff doubling stays inside the tail bound") {
    PrimeTable pt(80000);
    for (auto [k, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 2}, {3, 2}, {2, 3}}) {
      auto a = mu(k, m, 40000, pt);
      auto b = mu(k, m, 80000, pt);
      CHECK(std::fabs(b.log_value - a.log_value) < a.tail_log_bound);
    }
  }

  TEST_CASE("retained local factors multiply back into the value") {
    PrimeTable pt(1000);
    auto r = mu(2, 2, 1000, pt);
    REQUIRE(r.local_factors.size() == 25);  // primes up to 100
    CHECK(r.local_factors.front().first == 2);
    CHECK(r.local_factors.back().first == 97);
    double partial = 0;
    for (auto [p, f] : r.local_factors) partial += std::log(f);
    CHECK(partial < r.log_value);  // remaining primes all contribute > 1
  }

  TEST_CASE("moment guards") {
    PrimeTable pt(1000);
    CHECK_THROWS_AS(mu(2, 2, 50, pt), error);      // P below the floor
    CHECK_THROWS_AS(mu(2, 2, 2000, pt), error);    // table too short
    CHECK_THROWS_AS(mu(0, 2, 1000, pt), error);
    CHECK_THROWS_AS(mu(2, 0, 1000, pt), error);
    CHECK_THROWS_AS(mu(3, 3, 300, pt), error);     // needs 4 k^2 m^2 = 324
  }

  TEST_CASE("nonvanishing probability, exact rationals") {
    CHECK(nonvanishing_probability(1) == mpq_class(1));
    CHECK(nonvanishing_probability(2) == mpq_class(1, 2));
    CHECK(nonvanishing_probability(3) == mpq_class(7, 36));
    CHECK(nonvanishing_probability(4) == mpq_class(5, 72));
    CHECK_THROWS_AS(nonvanishing_probability(0), error);
  }

  TEST_CASE("poisson moments are bell numbers at unit rate") {
    CHECK(poisson_moment(1, 1.0) == doctest::Approx(1.0));
    CHECK(poisson_moment(2, 1.0) == doctest::Approx(2.0));
    CHECK(poisson_moment(3, 1.0) == doctest::Approx(5.0));
    CHECK(poisson_moment(4, 1.0) == doctest::Approx(15.0));
    CHECK(poisson_moment(5, 1.0) == doctest::Approx(52.0));
    CHECK(poisson_moment(2, 2.0) == doctest::Approx(6.0));
    CHECK(poisson_moment(3, 2.0) == doctest::Approx(22.0));
    CHECK_THROWS_AS(poisson_moment(0, 1.0), error);
    CHECK_THROWS_AS(poisson_moment(2, 0.0), error);
  }

  TEST_CASE("growth lower bound closed values") {
    CHECK(growth_lower_bound(1, 5) == 1.0);
    CHECK(growth_lower_bound(2, 1) == 1.0);  // no primes up to 1
    CHECK(growth_lower_bound(2, 2) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(growth_lower_bound(2, 3) == doctest::Approx(4.5).epsilon(1e-14));
    CHECK_THROWS_AS(growth_lower_bound(0, 2), error);
    CHECK_THROWS_AS(growth_lower_bound(2, 0), error);
  }

  TEST_CASE("growth lower bound sits below the true moment") {
    PrimeTable pt(200000);
    for (std::uint32_t k : {2u, 3u})
      for (std::uint32_t m : {2u, 3u}) {
        auto r = mu(k, m, 200000, pt);
        CHECK(growth_lower_bound(k, m) <= r.value * std::exp(r.tail_log_bound));
      }
  }

  TEST_CASE("hankel matrices of a moment sequence are positive") {
    PrimeTable pt(200000);
    auto rep = hankel_positivity(2, 2, 200000, pt);
    CHECK_FALSE(rep.indeterminate);
    CHECK(rep.positive);
    REQUIRE(rep.minors_shift0.size() == 3);
    REQUIRE(rep.minors_shift1.size() == 3);
    CHECK(rep.minors_shift0[0] == doctest::Approx(1.0));
    for (double d : rep.minors_shift0) CHECK(d > -rep.tolerance);
    for (double d : rep.minors_shift1) CHECK(d > -rep.tolerance);
  }

  TEST_CASE("degenerate all-ones hankel passes as semidefinite") {
    // Every moment of the k = 1 series is 1, so the matrices are rank one.
    PrimeTable pt(200000);
    auto rep = hankel_positivity(1, 2, 200000, pt);
    CHECK(rep.positive);
    CHECK(std::fabs(rep.minors_shift0[1]) < rep.tolerance);
  }

  TEST_CASE("hankel guards") {
    PrimeTable pt(1000);
    CHECK_THROWS_AS(hankel_positivity(2, 6, 200000, pt), error);  // N cap
    CHECK_THROWS_AS(hankel_positivity(0, 2, 1000, pt), error);
    // mu(5, 3, 500) sits below the 4 k^2 m^2 = 900 cutoff floor.
    CHECK_THROWS_AS(hankel_positivity(3, 2, 500, pt), error);
  }
}
