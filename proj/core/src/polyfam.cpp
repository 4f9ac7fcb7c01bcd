#include "singseries/polyfam.hpp"

#include <algorithm>
#include <cctype>

#include "singseries/errors.hpp"
#include "singseries/exactmath.hpp"
#include "singseries/polymod.hpp"
#include "singseries/primes.hpp"

namespace singseries {

namespace {

constexpr std::uint64_t kMaxExponent = 1024;

void strip_zeros(std::vector<mpz_class>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

bool integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return false;
  return true;
}

std::string squeeze_lower(const std::string& in) {
  std::string out;
  out.reserve(in.size());
  for (char c : in)
    if (!std::isspace((unsigned char)c)) out.push_back((char)std::tolower((unsigned char)c));
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

IntPolynomial parse_coeff_list(const std::string& text) {
  auto tokens = split_on(text, ',');
  std::vector<mpz_class> coeffs;
  for (const auto& t : tokens) {
    if (!integer_token(t)) raise(errc::domain, "malformed coefficient list: '" + t + "'");
    coeffs.emplace_back(t);
  }
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_expression(const std::string& text) {
  if (text.empty()) raise(errc::domain, "empty polynomial expression");
  std::vector<mpz_class> coeffs;
  std::size_t pos = 0;
  auto fail = [&]() { raise(errc::domain, "malformed polynomial expression: '" + text + "'"); };
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t dstart = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    std::string digits = text.substr(dstart, pos - dstart);
    bool has_x = false;
    std::uint64_t exp = 0;
    if (pos < text.size() && text[pos] == '*') {
      ++pos;
      if (pos >= text.size() || text[pos] != 'x') fail();
    }
    if (pos < text.size() && text[pos] == 'x') {
      has_x = true;
      ++pos;
      exp = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::size_t estart = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == estart) fail();
        std::string estr = text.substr(estart, pos - estart);
        if (estr.size() > 6) raise(errc::bounds, "exponent too large");
        exp = std::stoull(estr);
      }
    }
    if (digits.empty() && !has_x) fail();
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-') fail();
    if (exp > kMaxExponent) raise(errc::bounds, "exponent too large");
    mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits);
    if (sign < 0) c = -c;
    if (coeffs.size() <= exp) coeffs.resize(exp + 1, mpz_class(0));
    coeffs[exp] += c;
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  strip_zeros(coeffs_);
}

IntPolynomial IntPolynomial::parse(const std::string& text) {
  std::string s = squeeze_lower(text);
  if (s.empty()) raise(errc::domain, "empty polynomial text");
  if (s.find('x') != std::string::npos) return parse_expression(s);
  return parse_coeff_list(s);
}

std::uint32_t IntPolynomial::degree() const {
  if (coeffs_.empty()) raise(errc::domain, "degree of the zero polynomial");
  return (std::uint32_t)(coeffs_.size() - 1);
}

const mpz_class& IntPolynomial::coeff(std::size_t i) const {
  static const mpz_class zero = 0;
  return i < coeffs_.size() ? coeffs_[i] : zero;
}

const mpz_class& IntPolynomial::leading() const {
  if (coeffs_.empty()) raise(errc::domain, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& c : coeffs_) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return abs(g);
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

IntPolynomial IntPolynomial::shifted(const mpz_class& t) const {
  if (coeffs_.empty()) return IntPolynomial{};
  std::size_t n = coeffs_.size();
  std::vector<mpz_class> out(n, mpz_class(0));
  // out[j] = sum_{i >= j} a_i C(i, j) t^{i-j}
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class tp = 1;
    for (std::size_t d = 0;; ++d) {  // d = i - j
      std::size_t j = i - d;
      out[j] += coeffs_[i] * binomial_mpz(i, j) * tp;
      if (j == 0) break;
      tp *= t;
    }
  }
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::text() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] == 0) continue;
    mpz_class a = abs(coeffs_[i]);
    bool neg = coeffs_[i] < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (i == 0 || a != 1) out += a.get_str();
    if (i > 0) {
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

bool IntPolynomial::operator<(const IntPolynomial& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return coeffs_.size() < o.coeffs_.size();
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    int c = cmp(coeffs_[i], o.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

namespace {

std::vector<std::uint64_t> all_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> divs{1};
  if (n == 1) return divs;
  auto fac = factor_u64(n);
  for (auto [p, e] : fac) {
    std::size_t base = divs.size();
    std::uint64_t pe = 1;
    for (unsigned i = 0; i < e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

bool is_irreducible(const IntPolynomial& f, bool assume_high_degree) {
  if (f.zero() || f.degree() == 0) return false;
  std::uint32_t d = f.degree();
  if (d == 1) return true;
  // Work with the primitive part; content does not affect irreducibility over Q.
  mpz_class ct = f.content();
  std::vector<mpz_class> c = f.coeffs();
  for (auto& x : c) x /= ct;
  if (d == 2) {
    mpz_class disc = c[1] * c[1] - 4 * c[2] * c[0];
    if (disc < 0) return true;
    return mpz_perfect_square_p(disc.get_mpz_t()) == 0;
  }
  if (d == 3) {
    if (c[0] == 0) return false;
    // Monicize: g(Y) = Y^3 + c2 Y^2 + c1 c3 Y + c0 c3^2; rational roots of f
    // correspond to integer roots of g, which divide the constant term.
    mpz_class g0 = c[0] * c[3] * c[3];
    mpz_class g1 = c[1] * c[3];
    mpz_class g2 = c[2];
    mpz_class a = abs(g0);
    if (!a.fits_ulong_p())
      raise(errc::capability, "cubic rational root test: constant term exceeds 64 bits");
    for (std::uint64_t dv : all_divisors(a.get_ui())) {
      for (int s : {1, -1}) {
        mpz_class y = (unsigned long)dv;
        if (s < 0) y = -y;
        mpz_class val = ((y + g2) * y + g1) * y + g0;
        if (val == 0) return false;
      }
    }
    return true;
  }
  if (!assume_high_degree)
    raise(errc::capability, "irreducibility testing is exact only up to degree 3");
  return true;
}

mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.zero() || b.zero()) raise(errc::domain, "resultant of the zero polynomial");
  std::uint32_t da = a.degree(), db = b.degree();
  std::size_t n = (std::size_t)da + db;
  if (n == 0) return 1;
  // Sylvester matrix, descending coefficients.
  std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (std::uint32_t r = 0; r < db; ++r)
    for (std::uint32_t i = 0; i <= da; ++i) M[r][r + i] = a.coeff(da - i);
  for (std::uint32_t r = 0; r < da; ++r)
    for (std::uint32_t i = 0; i <= db; ++i) M[db + r][r + i] = b.coeff(db - i);
  // Bareiss fraction-free elimination.
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && M[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[n - 1][n - 1] : mpz_class(-M[n - 1][n - 1]);
}

PolyFamily::PolyFamily(std::vector<IntPolynomial> members) : members_(std::move(members)) {
  if (members_.empty()) raise(errc::domain, "family must have at least one member");
}

PolyFamily PolyFamily::parse(const std::string& text) {
  std::string s = squeeze_lower(text);
  if (s.empty()) raise(errc::domain, "empty family text");
  std::vector<IntPolynomial> members;
  if (s.find(';') != std::string::npos) {
    for (const auto& part : split_on(s, ';')) members.push_back(IntPolynomial::parse(part));
    return PolyFamily(std::move(members));
  }
  auto tokens = split_on(s, ',');
  bool all_int = true;
  for (const auto& t : tokens)
    if (!integer_token(t)) all_int = false;
  if (all_int && s.find('x') == std::string::npos) {
    members.push_back(parse_coeff_list(s));
  } else {
    for (const auto& t : tokens) members.push_back(parse_expression(t));
  }
  return PolyFamily(std::move(members));
}

std::uint64_t PolyFamily::peg() const {
  std::uint64_t prod = 1;
  for (const auto& f : members_) {
    if (f.zero() || f.degree() == 0) raise(errc::domain, "peg requires nonconstant members");
    prod *= f.degree();
  }
  return prod;
}

mpz_class PolyFamily::coeff_size() const {
  mpz_class s = 0;
  for (const auto& f : members_) s += f.height();
  return s;
}

std::string PolyFamily::text() const {
  std::string out;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (j) out += "; ";
    out += members_[j].text();
  }
  return out;
}

PrimitivityReport PolyFamily::primitivity(bool assume_irreducible) const {
  for (std::size_t i = 0; i + 1 < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j)
      if (members_[i] == members_[j])
        return {false, "members " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " are identical"};
  for (std::size_t j = 0; j < members_.size(); ++j)
    if (!is_irreducible(members_[j], assume_irreducible))
      return {false, "member " + std::to_string(j + 1) + " is not irreducible over Q"};
  for (std::size_t j = 0; j < members_.size(); ++j)
    if (members_[j].leading() <= 0)
      return {false, "member " + std::to_string(j + 1) + " has nonpositive leading coefficient"};
  for (std::size_t j = 0; j < members_.size(); ++j)
    if (members_[j].content() != 1)
      return {false, "member " + std::to_string(j + 1) + " has content " +
                         members_[j].content().get_str()};
  return {true, ""};
}

bool PolyFamily::is_primitive(bool assume_irreducible) const {
  return primitivity(assume_irreducible).primitive;
}

namespace {

std::vector<std::uint64_t> poly_mul_fp(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b, std::uint64_t p) {
  std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  return prod;
}

}  // namespace

FamilyNu nu_p_family(const PolyFamily& f, std::uint64_t p) {
  if (p < 2 || p > (std::uint64_t(1) << 31))
    raise(errc::bounds, "nu_p_family requires prime p <= 2^31");
  std::vector<std::vector<std::uint64_t>> reduced;
  reduced.reserve(f.m());
  for (const auto& g : f.members()) {
    if (g.zero()) raise(errc::domain, "nu_p of a family with a zero member");
    std::vector<std::uint64_t> r(g.coeffs().size());
    bool all_zero = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = mpz_fdiv_ui(g.coeffs()[i].get_mpz_t(), (unsigned long)p);
      if (r[i] != 0) all_zero = false;
    }
    if (all_zero) return {(std::uint32_t)p, true};
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.size() >= 2) reduced.push_back(std::move(r));  // constants contribute no roots
  }
  if (reduced.empty()) return {0, false};
  if (p <= 101) {
    std::uint32_t count = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
      for (const auto& r : reduced) {
        std::uint64_t acc = 0;
        for (std::size_t i = r.size(); i-- > 0;) acc = (mulmod_u64(acc, x, p) + r[i]) % p;
        if (acc == 0) {
          ++count;
          break;
        }
      }
    }
    return {count, false};
  }
  bool all_linear = true;
  for (const auto& r : reduced)
    if (r.size() != 2) all_linear = false;
  if (all_linear) {
    std::vector<std::uint64_t> roots;
    roots.reserve(reduced.size());
    for (const auto& r : reduced) {
      std::uint64_t inv = powmod_u64(r[1], p - 2, p);
      roots.push_back(mulmod_u64(p - r[0] % p, inv, p) % p);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return {(std::uint32_t)roots.size(), false};
  }
  std::vector<std::uint64_t> prod = reduced[0];
  for (std::size_t i = 1; i < reduced.size(); ++i) prod = poly_mul_fp(prod, reduced[i], p);
  return {count_roots_fp(std::move(prod), p), false};
}

PolyFamily compose(const PolyFamily& f, const KTuple& h) {
  std::vector<IntPolynomial> out;
  out.reserve(f.m() * h.k());
  for (std::uint64_t hi : h.entries())
    for (const auto& g : f.members()) out.push_back(g.shifted(mpz_class(hi)));
  return PolyFamily(std::move(out));
}

std::vector<ShiftRelation> shift_relations(const PolyFamily& f, bool assume_irreducible) {
  auto rep = f.primitivity(assume_irreducible);
  if (!rep.primitive)
    raise(errc::domain, "shift relations require a primitive family: " + rep.violation);
  std::vector<ShiftRelation> rels;
  for (std::size_t j1 = 0; j1 < f.m(); ++j1)
    for (std::size_t j2 = 0; j2 < f.m(); ++j2) {
      if (j1 == j2) continue;
      const auto& a = f.member(j1);
      const auto& b = f.member(j2);
      if (a.degree() != b.degree() || a.leading() != b.leading()) continue;
      std::uint32_t d = a.degree();
      // f_{j1}(X) = f_{j2}(X + delta) forces
      // delta = (a_{d-1}(j1) - a_{d-1}(j2)) / (d * lead).
      mpz_class num = a.coeff(d - 1) - b.coeff(d - 1);
      mpz_class den = mpz_class(d) * a.leading();
      if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
      mpz_class delta = num / den;
      if (b.shifted(delta) == a) rels.push_back({j1, j2, delta});
    }
  return rels;
}

namespace {

std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

DegeneracyGraph degeneracy_graph(const PolyFamily& f, const KTuple& h, bool assume_irreducible) {
  auto rels = shift_relations(f, assume_irreducible);
  const auto& e = h.entries();
  DegeneracyGraph g;
  g.vertex_count = e.size();
  for (std::size_t i1 = 0; i1 + 1 < e.size(); ++i1)
    for (std::size_t i2 = i1 + 1; i2 < e.size(); ++i2) {
      bool hit = e[i1] == e[i2];
      if (!hit) {
        mpz_class diff = mpz_class(e[i2]) - mpz_class(e[i1]);
        for (const auto& r : rels)
          if (r.delta == diff) {
            hit = true;
            break;
          }
      }
      if (hit) g.edges.emplace_back(i1, i2);
    }
  std::vector<std::size_t> parent(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) parent[i] = i;
  for (auto [a, b] : g.edges) parent[uf_find(parent, a)] = uf_find(parent, b);
  std::vector<std::size_t> size(e.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) ++size[uf_find(parent, i)];
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (size[i] >= 1) ++g.components;
    if (size[i] >= 2) ++g.nontrivial_components;
  }
  return g;
}

bool composed_is_primitive(const PolyFamily& f, const KTuple& h, bool assume_irreducible) {
  return degeneracy_graph(f, h, assume_irreducible).edges.empty();
}

std::size_t distinct_member_count(const PolyFamily& f, const KTuple& h) {
  auto composed = compose(f, h);
  auto members = composed.members();
  std::sort(members.begin(), members.end());
  return (std::size_t)(std::unique(members.begin(), members.end()) - members.begin());
}

mpz_class pairwise_resultant_product(const PolyFamily& composed) {
  mpz_class prod = 1;
  const auto& ms = composed.members();
  for (std::size_t i = 0; i + 1 < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (ms[i] == ms[j]) return 0;
      prod *= abs(resultant(ms[i], ms[j]));
    }
  return prod;
}

}  // namespace singseries
