#include "singseries/moments.hpp"

#include <algorithm>
#include <cmath>

#include "kahan.hpp"
#include "singseries/errors.hpp"
#include "singseries/exactmath.hpp"

namespace singseries {

namespace {

// sigma(k, v)/v! as long doubles, cached per k (k <= 64).
std::vector<long double> surjection_over_factorial(std::uint32_t k) {
  auto row = surjection_row(k);
  std::vector<long double> out(k);
  mpz_class vf = 1;
  for (std::uint32_t v = 1; v <= k; ++v) {
    vf *= v;
    mpq_class q(row[v - 1], vf);
    q.canonicalize();
    out[v - 1] = (long double)q.get_d();
  }
  return out;
}

}  // namespace

double local_moment_factor(std::uint64_t p, std::uint32_t k, double m) {
  if (p < 2) raise(errc::domain, "local_moment_factor requires p >= 2");
  if (k < 1) raise(errc::domain, "local_moment_factor requires k >= 1");
  if (!(m >= 0)) raise(errc::domain, "local_moment_factor requires m >= 0");
  if (m == 0) return 1.0;
  auto sf = surjection_over_factorial(k);
  long double pl = (long double)p;
  long double sum = 0.0L;
  std::uint64_t vmax = std::min<std::uint64_t>(k, p);
  for (std::uint64_t v = 1; v <= vmax; ++v) {
    if (v == p) continue;  // (1 - v/p)^m = 0 for m > 0
    long double term = sf[v - 1];
    for (std::uint64_t i = 0; i < v; ++i) term *= (pl - (long double)i) / pl;
    term *= std::pow(pl, -(long double)(k - v));
    term *= std::pow(1.0L - (long double)v / pl, (long double)m);
    sum += term;
  }
  // (1 - 1/p)^{-km}
  long double scale = std::exp(-(long double)k * (long double)m * std::log1p(-1.0L / pl));
  return (double)(sum * scale);
}

MomentResult mu(std::uint32_t k, std::uint32_t m, std::uint64_t P, const PrimeTable& pt) {
  if (k < 1 || m < 1) raise(errc::domain, "mu requires k >= 1 and m >= 1");
  std::uint64_t need = std::max<std::uint64_t>(4ull * k * k * m * m, 100);
  if (P < need) raise(errc::config, "moment cutoff must be at least max(4k^2m^2, 100)");
  if (pt.limit() < P) raise(errc::bounds, "prime table does not reach the cutoff");

  MomentResult out;
  out.k = k;
  out.m = m;
  out.cutoff = P;
  detail::Kahan acc;
  for (std::uint64_t p : pt.primes()) {
    if (p > P) break;
    double f = local_moment_factor(p, k, (double)m);
    if (p <= 100) out.local_factors.emplace_back(p, f);
    acc.add(std::log((long double)f));
  }
  out.log_value = (double)acc.sum;
  out.value = (double)std::exp(acc.sum);
  out.tail_log_bound = 8.0 * (double)k * k * (double)m * m / (double)(P - 1);
  return out;
}

mpq_class nonvanishing_probability(std::uint32_t k) {
  if (k < 1) raise(errc::domain, "nonvanishing_probability requires k >= 1");
  mpq_class prob = 1;
  for (std::uint32_t p = 2; p <= k; ++p) {
    bool prime = p >= 2;
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    mpq_class factor(pk - surjection_count(k, p), pk);
    factor.canonicalize();
    prob *= factor;
  }
  prob.canonicalize();
  return prob;
}

double poisson_moment(std::uint32_t k, double lambda) {
  if (k < 1) raise(errc::domain, "poisson_moment requires k >= 1");
  if (!(lambda > 0)) raise(errc::domain, "poisson_moment requires lambda > 0");
  auto row = surjection_row(k);
  long double sum = 0.0L, lp = 1.0L;
  mpz_class rf = 1;
  for (std::uint32_t r = 1; r <= k; ++r) {
    lp *= (long double)lambda;
    rf *= r;
    mpq_class q(row[r - 1], rf);
    q.canonicalize();
    sum += lp * (long double)q.get_d();
  }
  return (double)sum;
}

double growth_lower_bound(std::uint32_t k, std::uint32_t m) {
  if (k < 1 || m < 1) raise(errc::domain, "growth_lower_bound requires k, m >= 1");
  long double logsum = 0.0L;
  for (std::uint32_t p = 2; p <= m; ++p) {
    bool prime = true;
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    logsum += (long double)m * (k - 1) * std::log1p(1.0L / (long double)(p - 1)) -
              (long double)(k - 1) * std::log((long double)p);
  }
  return (double)std::exp(logsum);
}

namespace {

// Leading principal minors of a symmetric matrix by Gaussian elimination
// with partial pivoting, each minor computed from its own submatrix.
std::vector<double> leading_minors(const std::vector<std::vector<long double>>& H) {
  std::size_t n = H.size();
  std::vector<double> minors(n);
  for (std::size_t t = 1; t <= n; ++t) {
    std::vector<std::vector<long double>> A(t, std::vector<long double>(t));
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) A[i][j] = H[i][j];
    long double det = 1.0L;
    for (std::size_t c = 0; c < t; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < t; ++r)
        if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
      if (A[piv][c] == 0.0L) {
        det = 0.0L;
        break;
      }
      if (piv != c) {
        std::swap(A[piv], A[c]);
        det = -det;
      }
      det *= A[c][c];
      for (std::size_t r = c + 1; r < t; ++r) {
        long double f = A[r][c] / A[c][c];
        for (std::size_t j = c; j < t; ++j) A[r][j] -= f * A[c][j];
      }
    }
    minors[t - 1] = (double)det;
  }
  return minors;
}

}  // namespace

HankelReport hankel_positivity(std::uint32_t m, std::uint32_t N, std::uint64_t P,
                               const PrimeTable& pt) {
  if (m < 1) raise(errc::domain, "hankel_positivity requires m >= 1");
  if (N > 5) raise(errc::bounds, "hankel_positivity supports N <= 5");
  std::uint32_t top = 2 * N + 1;
  std::vector<long double> mom(top + 1);
  mom[0] = 1.0L;
  double max_tail = 0;
  for (std::uint32_t j = 1; j <= top; ++j) {
    auto r = mu(j, m, P, pt);
    mom[j] = (long double)r.value;
    max_tail = std::max(max_tail, r.tail_log_bound);
  }

  HankelReport rep;
  // Entry-wise relative truncation error exp(tail)-1, amplified by the
  // normalized elimination; a safety factor covers roundoff on top.
  rep.tolerance = 4.0 * (double)(N + 1) * (double)(N + 1) * std::expm1(max_tail) + 1e-9;

  for (int shift = 0; shift <= 1; ++shift) {
    std::size_t n = N + 1;
    std::vector<std::vector<long double>> H(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) H[i][j] = mom[i + j + shift];
    // Unit-diagonal normalization keeps the minors on a comparable scale.
    std::vector<long double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(H[i][i] > 0.0L)) {
        rep.indeterminate = true;
        return rep;
      }
      d[i] = 1.0L / std::sqrt(H[i][i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) H[i][j] *= d[i] * d[j];
    auto minors = leading_minors(H);
    for (double v : minors)
      if (!std::isfinite(v)) {
        rep.indeterminate = true;
        return rep;
      }
    (shift == 0 ? rep.minors_shift0 : rep.minors_shift1) = minors;
  }
  rep.positive = true;
  for (const auto* ms : {&rep.minors_shift0, &rep.minors_shift1})
    for (double v : *ms)
      if (v <= -rep.tolerance) rep.positive = false;
  return rep;
}

}  // namespace singseries
