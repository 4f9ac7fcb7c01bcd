#include "singseries/tuples.hpp"

#include <algorithm>

#include "singseries/errors.hpp"

namespace singseries {

KTuple::KTuple(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) raise(errc::domain, "tuple must have at least one entry");
  height_ = 0;
  for (std::uint64_t e : entries_) {
    if (e == 0) raise(errc::domain, "tuple entries must be positive");
    height_ = std::max(height_, e);
  }
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  distinct_ = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::uint32_t KTuple::nu_p(std::uint64_t p) const {
  if (p < 2) raise(errc::domain, "nu_p requires p >= 2");
  if (p <= 64) {
    std::uint64_t mask = 0;
    for (std::uint64_t e : entries_) mask |= std::uint64_t(1) << (e % p);
    return (std::uint32_t)__builtin_popcountll(mask);
  }
  std::vector<std::uint64_t> res;
  res.reserve(entries_.size());
  for (std::uint64_t e : entries_) res.push_back(e % p);
  std::sort(res.begin(), res.end());
  return (std::uint32_t)(std::unique(res.begin(), res.end()) - res.begin());
}

mpz_class KTuple::discriminant() const {
  if (!distinct_) raise(errc::degenerate, "discriminant of a tuple with repeated entries");
  mpz_class d = 1;
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      std::uint64_t a = entries_[i], b = entries_[j];
      mpz_class diff = (a > b) ? (a - b) : (b - a);
      d *= diff;
    }
  return d;
}

std::vector<std::uint64_t> KTuple::delta_prime_support(const std::vector<std::uint32_t>& spf) const {
  if (!distinct_) raise(errc::degenerate, "delta support of a tuple with repeated entries");
  if (spf.size() <= height_) raise(errc::bounds, "factor table too small for tuple differences");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j) {
      std::uint64_t a = entries_[i], b = entries_[j];
      std::uint64_t d = (a > b) ? (a - b) : (b - a);
      while (d > 1) {
        std::uint32_t p = spf[d];
        out.push_back(p);
        while (d % p == 0) d /= p;
      }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

mpz_class falling_factorial(std::uint64_t h, std::uint32_t k) {
  mpz_class c = 1;
  for (std::uint32_t i = 0; i < k; ++i) c *= mpz_class(h - i);
  return c;
}

}  // namespace

TupleSpace::TupleSpace(std::uint32_t k, std::uint64_t h) : k_(k), h_(h) {
  if (k == 0) raise(errc::domain, "tuple space requires k >= 1");
  if (h < k) raise(errc::domain, "tuple space requires h >= k");
  count_ = falling_factorial(h, k);
}

std::vector<std::uint64_t> TupleSpace::unrank(const mpz_class& rank) const {
  if (rank < 0 || rank >= count_) raise(errc::bounds, "tuple rank out of range");
  std::vector<std::uint64_t> t(k_);
  std::vector<bool> used(h_ + 1, false);
  mpz_class rem = rank;
  for (std::uint32_t i = 0; i < k_; ++i) {
    mpz_class block = falling_factorial(h_ - i - 1, k_ - i - 1);
    for (std::uint64_t v = 1; v <= h_; ++v) {
      if (used[v]) continue;
      if (rem < block) {
        t[i] = v;
        used[v] = true;
        break;
      }
      rem -= block;
    }
  }
  return t;
}

mpz_class TupleSpace::rank(const std::vector<std::uint64_t>& t) const {
  if (t.size() != k_) raise(errc::domain, "tuple has wrong length for this space");
  mpz_class r = 0;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint64_t v = t[i];
    if (v < 1 || v > h_) raise(errc::domain, "tuple entry outside [1, h]");
    std::uint64_t smaller_used = 0;
    for (std::uint32_t j = 0; j < i; ++j) {
      if (t[j] == v) raise(errc::domain, "tuple entries must be distinct");
      if (t[j] < v) ++smaller_used;
    }
    r += mpz_class(v - 1 - smaller_used) * falling_factorial(h_ - i - 1, k_ - i - 1);
  }
  return r;
}

bool TupleSpace::next(std::vector<std::uint64_t>& t) const {
  if (t.size() != k_) raise(errc::domain, "tuple has wrong length for this space");
  auto taken_before = [&](std::uint64_t v, std::uint32_t pos) {
    for (std::uint32_t j = 0; j < pos; ++j)
      if (t[j] == v) return true;
    return false;
  };
  for (std::uint32_t pos = k_; pos-- > 0;) {
    for (std::uint64_t v = t[pos] + 1; v <= h_; ++v) {
      if (taken_before(v, pos)) continue;
      t[pos] = v;
      // Fill the suffix with the smallest unused values in order.
      for (std::uint32_t q = pos + 1; q < k_; ++q) {
        std::uint64_t w = 1;
        while (taken_before(w, q)) ++w;
        t[q] = w;
      }
      return true;
    }
  }
  return false;
}

}  // namespace singseries
