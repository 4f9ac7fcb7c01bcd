#include "singseries/exactmath.hpp"

#include "singseries/errors.hpp"

namespace singseries {

mpz_class binomial_mpz(std::uint64_t n, std::uint64_t r) {
  if (r > n) raise(errc::bounds, "binomial requires 0 <= r <= n");
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

mpz_class factorial_mpz(std::uint64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class surjection_count(std::uint64_t k, std::uint64_t v) {
  if (k < 1 || k > 64) raise(errc::bounds, "surjection_count requires 1 <= k <= 64");
  if (v < 1) raise(errc::bounds, "surjection_count requires v >= 1");
  if (v > k) return 0;
  // Inclusion-exclusion over the missed targets: sum_i (-1)^i C(v,i) (v-i)^k.
  mpz_class total = 0, term;
  for (std::uint64_t i = 0; i <= v; ++i) {
    mpz_ui_pow_ui(term.get_mpz_t(), v - i, (unsigned long)k);
    term *= binomial_mpz(v, i);
    if (i & 1)
      total -= term;
    else
      total += term;
  }
  return total;
}

std::vector<mpz_class> surjection_row(std::uint64_t k) {
  if (k < 1 || k > 64) raise(errc::bounds, "surjection_row requires 1 <= k <= 64");
  std::vector<mpz_class> row;
  row.reserve(k);
  for (std::uint64_t v = 1; v <= k; ++v) row.push_back(surjection_count(k, v));
  return row;
}

}  // namespace singseries
