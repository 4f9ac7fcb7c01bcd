#include "singseries/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "singseries/errors.hpp"

namespace singseries {

namespace {

constexpr std::uint64_t kSieveLimitMax = std::uint64_t(1) << 40;
constexpr std::uint64_t kSegmentBytes = 1 << 18;  // odd-number bitmap per segment

void check_sieve_limit(std::uint64_t limit) {
  if (limit < 2 || limit > kSieveLimitMax)
    raise(errc::bounds, "sieve limit must lie in [2, 2^40]");
}

// Simple odd-only sieve up to n (inclusive), bit i <=> 2i+1 prime-candidate.
std::vector<std::uint64_t> small_odd_sieve(std::uint64_t n) {
  std::uint64_t words = (n / 2 + 64) / 64;
  std::vector<std::uint64_t> bits(words, ~std::uint64_t(0));
  bits[0] &= ~std::uint64_t(1);  // 1 is not prime
  for (std::uint64_t i = 3; i * i <= n; i += 2) {
    if (bits[(i >> 1) >> 6] >> ((i >> 1) & 63) & 1) {
      for (std::uint64_t j = i * i; j <= n; j += 2 * i) bits[(j >> 1) >> 6] &= ~(std::uint64_t(1) << ((j >> 1) & 63));
    }
  }
  return bits;
}

// Shared segmented walk: calls out(p) for each prime <= limit in order.
template <typename Out>
void sieve_walk(std::uint64_t limit, Out out) {
  out(2);
  if (limit < 3) return;
  std::uint64_t root = (std::uint64_t)std::sqrt((double)limit);
  while ((root + 1) * (root + 1) <= limit) ++root;
  while (root * root > limit) --root;
  auto base_bits = small_odd_sieve(std::max<std::uint64_t>(root, 3));
  std::vector<std::uint64_t> base;  // odd base primes
  for (std::uint64_t i = 3; i <= root; i += 2)
    if (base_bits[(i >> 1) >> 6] >> ((i >> 1) & 63) & 1) base.push_back(i);

  std::uint64_t span = kSegmentBytes * 16;  // odd values covered per segment
  std::vector<std::uint64_t> seg(kSegmentBytes / 8 * 2);
  for (std::uint64_t lo = 3; lo <= limit; lo += span) {
    std::uint64_t hi = std::min(limit, lo + span - 1);
    std::uint64_t count = (hi - lo) / 2 + 1;  // odd numbers in [lo, hi]
    seg.assign((count + 63) / 64, ~std::uint64_t(0));
    for (std::uint64_t p : base) {
      std::uint64_t start = p * p;
      if (start > hi) break;
      if (start < lo) {
        start = (lo + p - 1) / p * p;
        if ((start & 1) == 0) start += p;
      }
      for (std::uint64_t j = start; j <= hi; j += 2 * p) {
        std::uint64_t idx = (j - lo) / 2;
        seg[idx >> 6] &= ~(std::uint64_t(1) << (idx & 63));
      }
    }
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (seg[idx >> 6] >> (idx & 63) & 1) out(lo + 2 * idx);
  }
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  check_sieve_limit(limit);
  std::vector<std::uint64_t> out;
  if (limit >= 3) out.reserve((std::size_t)(1.2 * limit / std::log((double)limit)) + 16);
  sieve_walk(limit, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  check_sieve_limit(limit);
  odd_bits_.assign((limit / 2 + 64) / 64, 0);
  primes_.reserve((std::size_t)(1.2 * limit / std::log((double)std::max<std::uint64_t>(limit, 3))) + 16);
  sieve_walk(limit, [&](std::uint64_t p) {
    primes_.push_back(p);
    if (p & 1) odd_bits_[(p >> 1) >> 6] |= std::uint64_t(1) << ((p >> 1) & 63);
  });
}

bool PrimeTable::contains(std::uint64_t n) const {
  if (n > limit_) raise(errc::bounds, "PrimeTable::contains beyond sieve limit");
  if (n == 2) return true;
  if (n < 2 || (n & 1) == 0) return false;
  return odd_bits_[(n >> 1) >> 6] >> ((n >> 1) & 63) & 1;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (std::uint64_t)((unsigned __int128)a * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  std::uint64_t x = powmod_u64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // Exhaustively verified deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<std::uint32_t> smallest_factor_table(std::uint32_t limit) {
  if (limit < 2 || (std::uint64_t)limit > (std::uint64_t(1) << 31))
    raise(errc::bounds, "smallest_factor_table limit must lie in [2, 2^31]");
  std::vector<std::uint32_t> spf(std::size_t(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      for (std::uint64_t j = i; j <= limit; j += i)
        if (spf[j] == 0) spf[j] = (std::uint32_t)i;
    }
  }
  return spf;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  // n odd composite, no factor below the trial-division cutoff.
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) {
      return (mulmod_u64(x, x, n) + c) % n;
    };
    std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = y;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t j = 0; j < r && d == 1; j += m) {
        ys = y;
        std::uint64_t lim = std::min(m, r - j);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      d = 1;
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;  // else retry with the next c
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  while (n > 1) {
    if (is_prime_u64(n)) {
      out.push_back(n);
      return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    n /= d;
  }
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  if (n < 2) raise(errc::bounds, "factor_u64 requires n >= 2");
  std::vector<std::uint64_t> fl;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    while (n % p == 0) {
      fl.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, fl);
  std::sort(fl.begin(), fl.end());
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p : fl) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

}  // namespace singseries
