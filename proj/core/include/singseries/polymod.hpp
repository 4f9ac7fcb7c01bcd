#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace singseries {

struct RootCount {
  std::uint32_t count;  // distinct roots in F_p; equals p when the reduction vanishes
  bool vanishes;        // the polynomial is identically 0 mod p
};

// Distinct roots of f mod p for a nonzero integer polynomial f (ascending
// coefficients). p must be prime and <= 2^31 (bounds error), f must have a
// nonzero coefficient (domain error). If every coefficient is divisible by p
// the reduction vanishes: count = p with the flag set.
//
// Exact for every supported p: linear and quadratic via closed forms (Euler
// criterion for the discriminant), higher degrees via deg gcd(X^p - X, f)
// in F_p[X], which counts distinct roots because X^p - X is the product of
// (X - a) over all a in F_p.
RootCount poly_roots_mod_p(const std::vector<mpz_class>& f, std::uint32_t p);

// The same on an already-reduced nonzero polynomial over F_p (values < p,
// not all zero). Exposed for reuse and for oracle tests.
std::uint32_t count_roots_fp(std::vector<std::uint64_t> f, std::uint64_t p);

// O(p deg) scan; oracle and small-p fast path.
std::uint32_t count_roots_fp_brute(const std::vector<std::uint64_t>& f, std::uint64_t p);

// gcd(a, b) in F_p[X], monic (or empty when both inputs are zero).
std::vector<std::uint64_t> poly_gcd_fp(std::vector<std::uint64_t> a,
                                       std::vector<std::uint64_t> b, std::uint64_t p);

// X^q mod f in F_p[X] by binary exponentiation; f must have degree >= 1.
std::vector<std::uint64_t> poly_powmod_x_fp(std::uint64_t q, const std::vector<std::uint64_t>& f,
                                            std::uint64_t p);

// Product a*b mod f (all reduced mod p).
std::vector<std::uint64_t> poly_mulmod_fp(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b,
                                          const std::vector<std::uint64_t>& f, std::uint64_t p);

}  // namespace singseries
