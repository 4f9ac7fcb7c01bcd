#include <doctest.h>

#include <algorithm>

#include "singseries/errors.hpp"
#include "singseries/primes.hpp"

using namespace singseries;

namespace {

// Independent trial-division oracle.
bool prime_by_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Lucas-Lehmer for Mersenne exponents: independent of Miller-Rabin.
bool mersenne_prime(unsigned p) {
  std::uint64_t m = (std::uint64_t(1) << p) - 1;
  std::uint64_t s = 4 % m;
  for (unsigned i = 0; i + 2 < p; ++i) {
    s = mulmod_u64(s, s, m);
    s = (s + m - 2) % m;
  }
  return s == 0;
}

}  // namespace

TEST_SUITE("primes") {
  TEST_CASE("sieve matches trial division up to 2000") {
    auto primes = sieve_primes(2000);
    std::size_t i = 0;
    for (std::uint64_t n = 2; n <= 2000; ++n) {
      bool isp = prime_by_division(n);
      if (isp) {
        REQUIRE(i < primes.size());
        CHECK(primes[i] == n);
        ++i;
      }
    }
    CHECK(i == primes.size());
  }

  TEST_CASE("prime counting checkpoints") {
    CHECK(sieve_primes(100).size() == 25);
    CHECK(sieve_primes(1000000).size() == 78498);
  }

  TEST_CASE("pi(10^7) exact") {
    PrimeTable pt(10000000);
    CHECK(pt.count() == 664579);
    CHECK(pt.primes().back() == 9999991);
  }

  TEST_CASE("sieve limit bounds") {
    CHECK_THROWS_AS(sieve_primes(1), error);
    CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
    CHECK(sieve_primes(3) == std::vector<std::uint64_t>{2, 3});
  }

  TEST_CASE("PrimeTable membership agrees with the list") {
    PrimeTable pt(10000);
    std::vector<bool> flag(10001, false);
    for (auto p : pt.primes()) flag[p] = true;
    for (std::uint64_t n = 0; n <= 10000; ++n) CHECK(pt.contains(n) == flag[n]);
    CHECK_THROWS_AS(pt.contains(10001), error);
  }

  TEST_CASE("is_prime_u64 agrees with the sieve up to 10^6") {
    PrimeTable pt(1000000);
    for (std::uint64_t n = 0; n <= 1000000; ++n)
      if (is_prime_u64(n) != pt.contains(n)) {
        CAPTURE(n);
        REQUIRE(false);
      }
    CHECK(true);
  }

  TEST_CASE("64-bit primality endpoints") {
    CHECK(mersenne_prime(61));
    CHECK(is_prime_u64((std::uint64_t(1) << 61) - 1));
    // Strong pseudoprime to several bases, product of three primes.
    std::uint64_t n = 3825123056546413051ull;
    CHECK_FALSE(is_prime_u64(n));
    CHECK(n == 149491ull * 747451ull * 34233211ull);
    CHECK(is_prime_u64(149491));
    CHECK(is_prime_u64(747451));
    CHECK(is_prime_u64(34233211));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
  }

  TEST_CASE("smallest factor table") {
    auto spf = smallest_factor_table(1000);
    CHECK(spf[0] == 0);
    CHECK(spf[1] == 0);
    for (std::uint32_t n = 2; n <= 1000; ++n) {
      std::uint32_t expect = 0;
      for (std::uint32_t d = 2; d <= n; ++d)
        if (n % d == 0) {
          expect = d;
          break;
        }
      CHECK(spf[n] == expect);
    }
    CHECK_THROWS_AS(smallest_factor_table(1), error);
  }

  TEST_CASE("factor_u64 reconstructs its input") {
    auto check_factorization = [](std::uint64_t n) {
      auto f = factor_u64(n);
      std::uint64_t prod = 1;
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(is_prime_u64(f[i].first));
        if (i) CHECK(f[i - 1].first < f[i].first);
        for (unsigned e = 0; e < f[i].second; ++e) prod *= f[i].first;
      }
      CHECK(prod == n);
    };
    for (std::uint64_t n : {2ull, 4ull, 360ull, 1048576ull, 999983ull, 3825123056546413051ull,
                            18446744073709551557ull, 614889782588491410ull})
      check_factorization(n);
    CHECK_THROWS_AS(factor_u64(1), error);
    CHECK_THROWS_AS(factor_u64(0), error);
  }

  TEST_CASE("modular helpers") {
    CHECK(mulmod_u64(18446744073709551557ull - 1, 18446744073709551557ull - 1,
                     18446744073709551557ull) == 1);
    CHECK(powmod_u64(3, 100, 101) == 1);  // Fermat
    // 2^61 = (2^61 - 1) + 1
    CHECK(powmod_u64(2, 61, (std::uint64_t(1) << 61) - 1) == 1);
  }
}
