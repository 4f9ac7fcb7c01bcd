#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace singseries {

// Ordered tuple of positive integers (a prospective prime constellation's
// shift pattern). Entries need not be distinct at construction; operations
// that require distinctness say so.
class KTuple {
public:
  explicit KTuple(std::vector<std::uint64_t> entries);  // domain error on empty or zero entry

  std::size_t k() const { return entries_.size(); }
  const std::vector<std::uint64_t>& entries() const { return entries_; }
  std::uint64_t height() const { return height_; }  // max entry
  bool distinct() const { return distinct_; }       // cached at construction

  // Number of distinct residues mod p, in [1, min(k, p)]. p >= 2.
  // Bitset for p <= 64, sorted scan above.
  std::uint32_t nu_p(std::uint64_t p) const;

  // |prod_{i<j} (h_i - h_j)|, exact. Degenerate error when entries repeat;
  // 1 for k = 1. Every prime p with nu_p < k divides this.
  mpz_class discriminant() const;

  // All primes dividing the discriminant, i.e. dividing some pairwise
  // difference. spf must cover every difference (size > height).
  std::vector<std::uint64_t> delta_prime_support(const std::vector<std::uint32_t>& spf) const;

private:
  std::vector<std::uint64_t> entries_;
  std::uint64_t height_;
  bool distinct_;
};

// Lexicographic enumeration of ordered distinct k-tuples with entries in
// [1, h]. Count is the falling factorial h (h-1) ... (h-k+1). Construction
// raises a domain error when h < k (empty domain) or k = 0.
class TupleSpace {
public:
  TupleSpace(std::uint32_t k, std::uint64_t h);

  std::uint32_t k() const { return k_; }
  std::uint64_t h() const { return h_; }
  const mpz_class& count() const { return count_; }

  // rank <-> tuple, lexicographic order, rank in [0, count).
  std::vector<std::uint64_t> unrank(const mpz_class& rank) const;  // bounds error outside
  mpz_class rank(const std::vector<std::uint64_t>& t) const;       // domain error if invalid

  // Advance t to its lexicographic successor; false at the last tuple.
  bool next(std::vector<std::uint64_t>& t) const;

private:
  std::uint32_t k_;
  std::uint64_t h_;
  mpz_class count_;
};

}  // namespace singseries
