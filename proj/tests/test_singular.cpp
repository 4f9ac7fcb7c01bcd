#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "singseries/errors.hpp"
#include "singseries/singular.hpp"

using namespace singseries;

namespace {

double rel_diff(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST_SUITE("singular") {
  TEST_CASE("local factor closed forms") {
    CHECK(local_factor(2, 1, 2) == 2.0);            // (1 - 1/2)(1 - 1/2)^{-2}
    CHECK(local_factor(3, 2, 3) == doctest::Approx(9.0 / 8.0).epsilon(1e-15));
    CHECK(local_factor(3, 3, 3) == 0.0);            // nu = p kills the product
    CHECK(local_factor(5, 1, 1) == 1.0);            // k = 1 generic factor is 1
    CHECK(local_factor(101, 1, 1) == 1.0);
    CHECK(local_factor(7, 2, 4) ==
          doctest::Approx((1.0 - 2.0 / 7.0) * std::pow(1.0 - 1.0 / 7.0, -4.0)).epsilon(1e-15));
    CHECK_THROWS_AS(local_factor(5, 0, 2), error);
    CHECK_THROWS_AS(local_factor(5, 3, 2), error);  // nu > k
    CHECK_THROWS_AS(local_factor(3, 4, 5), error);  // nu > p
    CHECK_THROWS_AS(local_factor(1, 1, 1), error);
  }

  TEST_CASE("base constant for a single member is empty") {
    PrimeTable pt(1000);
    auto b = base_constant(1, 1000, pt);
    CHECK(b.log_value == 0.0L);  // every generic factor is exactly 1 at k = 1
    CHECK(b.k == 1);
    CHECK(b.cutoff == 1000);
  }

  TEST_CASE("base constant guards") {
    PrimeTable pt(200);
    CHECK_THROWS_AS(base_constant(2, 7, pt), error);    // P < 2k^2
    CHECK_THROWS_AS(base_constant(2, 500, pt), error);  // table too short
  }

  TEST_CASE("base constant is shard-invariant bit for bit") {
    PrimeTable pt(200000);
    auto b1 = base_constant(3, 200000, pt, 1);
    for (unsigned s : {2u, 3u, 7u, 16u}) {
      auto bs = base_constant(3, 200000, pt, s);
      CHECK(bs.log_value == b1.log_value);
    }
  }

  TEST_CASE("twin constant against the frozen reference") {
    PrimeTable pt(1000000);
    auto v = singular_series_tuple(KTuple({1, 3}), 1000000, pt);
    CHECK_FALSE(v.exact_zero);
    CHECK(v.mode == EulerProductValue::Mode::rigorous);
    CHECK(std::fabs(v.value - 1.3203237211796763) < 1e-10);
    CHECK(v.tail_log_bound == doctest::Approx(8.0 / 999999.0).epsilon(1e-12));
    // Against the limiting twin prime constant 2 C_2: the truncation at 1e6
    // still differs in the 7th digit, and the tail bound covers the gap.
    double limit_2c2 = 1.3203236316937392;
    CHECK(std::fabs(std::log(v.value / limit_2c2)) < v.tail_log_bound);
  }

  TEST_CASE("shift invariance of the pair series") {
    PrimeTable pt(100000);
    auto a = singular_series_tuple(KTuple({1, 3}), 100000, pt);
    auto b = singular_series_tuple(KTuple({5, 7}), 100000, pt);
    auto c = singular_series_tuple(KTuple({101, 103}), 100000, pt);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));
    CHECK(a.value == doctest::Approx(c.value).epsilon(1e-14));
  }

  TEST_CASE("gap 6 doubles the twin value") {
    // nu_3((0,6)) = 1 instead of 2: factor (1-1/3)/(1-2/3) = 2.
    PrimeTable pt(100000);
    auto twin = singular_series_tuple(KTuple({1, 3}), 100000, pt);
    auto six = singular_series_tuple(KTuple({1, 7}), 100000, pt);
    CHECK(six.value == doctest::Approx(2.0 * twin.value).epsilon(1e-13));
  }

  TEST_CASE("fast and direct forms agree to 1e-12") {
    std::uint64_t P = 50000;
    PrimeTable pt(P);
    std::vector<std::vector<std::uint64_t>> tuples = {
        {1, 3},       {1, 3, 7},    {1, 3, 7, 9},  {1, 7, 11, 13, 17},
        {1, 5, 7, 11, 13, 17}, {1, 2000000015ull}, {1, 211, 213},
    };
    for (std::uint32_t k = 2; k <= 6; ++k) {
      auto base = base_constant(k, P, pt);
      for (const auto& e : tuples) {
        if (e.size() != k) continue;
        KTuple h(e);
        auto fast = singular_series_tuple(h, P, pt, base);
        auto slow = singular_series_tuple(h, P, pt);
        REQUIRE_FALSE(slow.exact_zero);
        CHECK(rel_diff(fast.value, slow.value) < 1e-12);
        CHECK(fast.tail_log_bound >= slow.tail_log_bound);  // may add mass for q > P
      }
    }
  }

  TEST_CASE("entries past the cutoff surface in the tail bound") {
    // Spread 2 * 1000000007 has a prime factor beyond P whose local factor
    // cannot be applied; both forms charge 4k/q to the tail instead.
    std::uint64_t P = 50000;
    PrimeTable pt(P);
    auto base = base_constant(2, P, pt);
    KTuple wide({1, 2000000015ull});
    auto fast = singular_series_tuple(wide, P, pt, base);
    auto slow = singular_series_tuple(wide, P, pt);
    auto plain = singular_series_tuple(KTuple({2, 4}), P, pt, base);
    double allowance = 8.0 / 1000000007.0;
    CHECK(fast.tail_log_bound == doctest::Approx(plain.tail_log_bound + allowance));
    CHECK(slow.tail_log_bound == doctest::Approx(plain.tail_log_bound + allowance));
  }

  TEST_CASE("inadmissible tuples give exact zero") {
    PrimeTable pt(1000);
    // (1, 2) covers both residues mod 2.
    auto v = singular_series_tuple(KTuple({1, 2}), 1000, pt);
    CHECK(v.exact_zero);
    CHECK(v.value == 0.0);
    CHECK(v.tail_log_bound == 0.0);
    // (1, 2, 3) covers mod 2 and mod 3.
    CHECK(singular_series_tuple(KTuple({1, 2, 3}), 1000, pt).exact_zero);
    // Admissible neighbour is not zero.
    CHECK_FALSE(singular_series_tuple(KTuple({1, 3, 7}), 1000, pt).exact_zero);
  }

  TEST_CASE("tuple guards") {
    PrimeTable pt(1000);
    CHECK_THROWS_AS(singular_series_tuple(KTuple({3, 3}), 1000, pt), error);  // repeat
    CHECK_THROWS_AS(singular_series_tuple(KTuple({1, 3}), 7, pt), error);     // P < 2k^2
    auto base = base_constant(2, 1000, pt);
    CHECK_THROWS_AS(singular_series_tuple(KTuple({1, 3, 7}), 1000, pt, base), error);  // k mismatch
    PrimeTable pt2(2000);
    auto base2 = base_constant(2, 2000, pt2);
    CHECK_THROWS_AS(singular_series_tuple(KTuple({1, 3}), 1000, pt, base2), error);    // P mismatch
  }

  TEST_CASE("a linear family reproduces the tuple series") {
    // Members x and x + 2 have nu_p equal to the tuple (0, 2) for every p.
    std::uint64_t P = 100000;
    PrimeTable pt(P);
    auto fam = singular_series_family(PolyFamily::parse("x, x+2"), P, pt);
    auto tup = singular_series_tuple(KTuple({1, 3}), P, pt);
    CHECK(fam.mode == EulerProductValue::Mode::heuristic);
    CHECK(fam.value == doctest::Approx(tup.value).epsilon(1e-13));
    CHECK(fam.tail_log_bound > 0.0);
    CHECK(fam.tail_log_bound < 1e-4);
  }

  TEST_CASE("sophie germain family matches its tuple-style product") {
    // (x, 2x+1): nu_2 = 1 (2x+1 is odd), nu_p = 2 for p > 2.
    std::uint64_t P = 100000;
    PrimeTable pt(P);
    auto fam = singular_series_family(PolyFamily::parse("x, 2x+1"), P, pt);
    auto tup = singular_series_tuple(KTuple({1, 3}), P, pt);  // same local data
    CHECK(fam.value == doctest::Approx(tup.value).epsilon(1e-13));
  }

  TEST_CASE("quadratic family value is stable under the cutoff") {
    PrimeTable big(4000000);
    auto a = singular_series_family(PolyFamily::parse("x^2+1"), 2000000, big);
    auto b = singular_series_family(PolyFamily::parse("x^2+1"), 4000000, big);
    CHECK_FALSE(a.exact_zero);
    CHECK(std::fabs(a.value - b.value) < 5e-4);  // conditional convergence is slow
    CHECK(a.tail_log_bound > 0.0);
    CHECK(a.tail_log_bound < 1e-3);
    CHECK(b.tail_log_bound < 1e-3);
  }

  TEST_CASE("family exact zero when residues saturate") {
    PrimeTable pt(1000);
    // x and x+1 cover both classes mod 2.
    auto v = singular_series_family(PolyFamily::parse("x, x+1"), 1000, pt);
    CHECK(v.exact_zero);
    CHECK(v.value == 0.0);
    CHECK(v.mode == EulerProductValue::Mode::rigorous);
  }

  TEST_CASE("family guards") {
    PrimeTable pt(1000);
    CHECK_THROWS_AS(singular_series_family(PolyFamily::parse("x, x"), 1000, pt), error);
    CHECK_THROWS_AS(singular_series_family(PolyFamily::parse("x^2-1"), 1000, pt), error);
    CHECK_THROWS_AS(singular_series_family(PolyFamily::parse("x"), 3, pt), error);  // P < 4
    CHECK_THROWS_AS(singular_series_family(PolyFamily::parse("x^4+1"), 1000, pt), error);
    CHECK_FALSE(
        singular_series_family(PolyFamily::parse("x^4+1"), 1000, pt, true).exact_zero);
  }
}
