#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace singseries {

// Primes <= limit, segmented sieve of Eratosthenes: O(sqrt(limit) + output)
// working memory beyond the returned vector. Raises a bounds error unless
// 2 <= limit <= 2^40.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// Sieved prime set with O(1) membership and the prime list, built once.
class PrimeTable {
public:
  explicit PrimeTable(std::uint64_t limit);  // same bounds as sieve_primes

  std::uint64_t limit() const { return limit_; }
  bool contains(std::uint64_t n) const;  // pre: n <= limit (bounds error)
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> odd_bits_;  // bit i: 2i+1 is prime
  std::vector<std::uint64_t> primes_;
};

// Deterministic Miller-Rabin for the full 64-bit range, no error paths.
// Witness set {2, 325, 9375, 28178, 450775, 9780504, 1795265022}; this
// 7-witness base is exhaustively verified for every n < 2^64 (see
// docs/formats.md for the source).
bool is_prime_u64(std::uint64_t n);

// Smallest prime factor for every n in [2, limit]; spf[0] = spf[1] = 0.
// Raises a bounds error for limit < 2 or limit > 2^31.
std::vector<std::uint32_t> smallest_factor_table(std::uint32_t limit);

// Prime factorization n = prod p^e, pairs sorted by p. n >= 2 (bounds error
// otherwise). Trial division by small primes, then Pollard-Brent rho.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

// (a * b) mod m and (a ^ e) mod m without overflow for any 64-bit m.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);

}  // namespace singseries
