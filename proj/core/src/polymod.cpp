#include "singseries/polymod.hpp"

#include <algorithm>

#include "singseries/errors.hpp"
#include "singseries/primes.hpp"

namespace singseries {

namespace {

using Poly = std::vector<std::uint64_t>;

void strip(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

std::uint64_t eval_fp(const Poly& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (mulmod_u64(acc, x, p) + f[i]) % p;
  return acc;
}

// a mod b in place (b nonzero, stripped), classic long division over F_p.
void poly_rem_fp(Poly& a, const Poly& b, std::uint64_t p) {
  std::uint64_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t c = mulmod_u64(a.back(), lead_inv, p);
    if (c != 0) {
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        std::uint64_t sub = mulmod_u64(c, b[i], p);
        std::uint64_t& t = a[shift + i];
        t = (t >= sub) ? t - sub : t + p - sub;
      }
    }
    a.pop_back();
    strip(a);
    if (a.empty()) break;
  }
}

}  // namespace

std::uint32_t count_roots_fp_brute(const Poly& f, std::uint64_t p) {
  std::uint32_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x)
    if (eval_fp(f, x, p) == 0) ++n;
  return n;
}

Poly poly_mulmod_fp(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  strip(prod);
  if (!prod.empty() && prod.size() >= f.size()) poly_rem_fp(prod, f, p);
  return prod;
}

Poly poly_powmod_x_fp(std::uint64_t q, const Poly& f, std::uint64_t p) {
  if (f.size() < 2) raise(errc::domain, "poly_powmod_x_fp requires deg f >= 1");
  Poly base{0, 1};
  if (base.size() >= f.size()) poly_rem_fp(base, f, p);
  Poly acc{1};
  while (q) {
    if (q & 1) acc = poly_mulmod_fp(acc, base, f, p);
    base = poly_mulmod_fp(base, base, f, p);
    q >>= 1;
  }
  return acc;
}

Poly poly_gcd_fp(Poly a, Poly b, std::uint64_t p) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    poly_rem_fp(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint64_t s = inv_mod(a.back(), p);
    for (auto& c : a) c = mulmod_u64(c, s, p);
  }
  return a;
}

std::uint32_t count_roots_fp(Poly f, std::uint64_t p) {
  strip(f);
  if (f.empty()) raise(errc::domain, "count_roots_fp requires a nonzero polynomial");
  std::size_t deg = f.size() - 1;
  if (deg == 0) return 0;
  if (deg == 1) return 1;  // a*x + b with a != 0 mod p
  if (p <= 101) return count_roots_fp_brute(f, p);
  if (deg == 2) {
    // Discriminant test; p is odd here (p > 101).
    std::uint64_t a = f[2], b = f[1], c = f[0];
    std::uint64_t disc = (mulmod_u64(b, b, p) + p - mulmod_u64(4 % p, mulmod_u64(a, c, p), p)) % p;
    if (disc == 0) return 1;
    return powmod_u64(disc, (p - 1) / 2, p) == 1 ? 2 : 0;
  }
  // Distinct roots = deg gcd(X^p - X, f).
  Poly t = poly_powmod_x_fp(p, f, p);
  // t <- t - X
  if (t.size() < 2) t.resize(2, 0);
  t[1] = (t[1] + p - 1) % p;
  strip(t);
  if (t.empty()) return (std::uint32_t)deg;  // X^p == X mod f: f splits into distinct linear factors
  Poly g = poly_gcd_fp(f, t, p);
  return g.empty() ? 0 : (std::uint32_t)(g.size() - 1);
}

RootCount poly_roots_mod_p(const std::vector<mpz_class>& f, std::uint32_t p) {
  if (p < 2 || (std::uint64_t)p > (std::uint64_t(1) << 31))
    raise(errc::bounds, "poly_roots_mod_p requires prime p <= 2^31");
  bool nonzero = false;
  for (const auto& c : f)
    if (c != 0) nonzero = true;
  if (!nonzero) raise(errc::domain, "poly_roots_mod_p requires a nonzero polynomial");
  Poly r(f.size());
  bool all_zero = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    r[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    if (r[i] != 0) all_zero = false;
  }
  if (all_zero) return {p, true};
  return {count_roots_fp(std::move(r), p), false};
}

}  // namespace singseries
