#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace singseries {

// C(n, r) exactly; raises a bounds error unless 0 <= r <= n.
mpz_class binomial_mpz(std::uint64_t n, std::uint64_t r);

mpz_class factorial_mpz(std::uint64_t n);

// sigma(k, v): number of surjections from a k-element set onto a v-element
// set, by inclusion-exclusion: sum_j (-1)^j C(v,j) (v-j)^k. Zero when v > k.
// Raises a bounds error unless 1 <= v and 1 <= k <= 64.
mpz_class surjection_count(std::uint64_t k, std::uint64_t v);

// Row sigma(k, 1..k). Same bounds on k.
std::vector<mpz_class> surjection_row(std::uint64_t k);

}  // namespace singseries
