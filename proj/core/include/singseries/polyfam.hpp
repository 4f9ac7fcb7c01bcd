#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "singseries/tuples.hpp"

namespace singseries {

// Integer polynomial, ascending exact coefficients. The zero polynomial is
// representable; degree() on it is a domain error.
class IntPolynomial {
public:
  IntPolynomial() = default;  // zero polynomial
  explicit IntPolynomial(std::vector<mpz_class> ascending_coeffs);

  // Accepts either a comma-separated coefficient list "a0,a1,...,ad" or an
  // expression like "2x^3 - x + 5" (terms c, c*x, c*x^e, x^e; optional '*';
  // whitespace ignored; x case-insensitive). Domain error on malformed text.
  static IntPolynomial parse(const std::string& text);

  bool zero() const { return coeffs_.empty(); }
  std::uint32_t degree() const;              // domain error on the zero polynomial
  const mpz_class& coeff(std::size_t i) const;  // 0 beyond the degree
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& leading() const;          // domain error on the zero polynomial
  mpz_class height() const;                  // max |coeff|, 0 for the zero polynomial
  mpz_class content() const;                 // gcd of coefficients, 0 for zero

  mpz_class eval(const mpz_class& x) const;
  IntPolynomial shifted(const mpz_class& t) const;  // f(X + t)
  std::string text() const;                         // canonical rendering

  bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator<(const IntPolynomial& o) const;  // arbitrary total order (degree, then coeffs)

private:
  std::vector<mpz_class> coeffs_;  // empty <=> zero; back() != 0 otherwise
};

// Irreducibility over Q for content-reduced polynomials. Exact for degrees
// 1..3 (perfect-square discriminant / rational root test); degree 0 and the
// zero polynomial are not irreducible. Degree >= 4 raises a capability error
// unless assume_high_degree is set, in which case it is taken on faith.
bool is_irreducible(const IntPolynomial& f, bool assume_high_degree = false);

// Resultant of two nonzero polynomials: Sylvester matrix determinant,
// computed exactly (fraction-free elimination). res = 0 iff common factor.
mpz_class resultant(const IntPolynomial& a, const IntPolynomial& b);

struct PrimitivityReport {
  bool primitive;
  std::string violation;  // empty when primitive; names the first failed condition
};

struct FamilyNu {
  std::uint32_t nu;  // |union of member root sets mod p|; p when saturated
  bool saturated;    // some member vanishes identically mod p
};

// A relation f_{j1}(X) = f_{j2}(X + delta) between distinct members.
// Relations come in mirror pairs: (j1, j2, delta) and (j2, j1, -delta).
struct ShiftRelation {
  std::size_t j1, j2;
  mpz_class delta;
};

// Degeneracy structure of a composition: vertices are the tuple positions,
// an edge (i1, i2) means some pair of members collides after shifting, i.e.
// h[i2] - h[i1] = delta(j1, j2) for a shift relation (or h[i1] = h[i2]).
struct DegeneracyGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i1 < i2, deduplicated
  std::size_t components = 0;             // connected components (c)
  std::size_t nontrivial_components = 0;  // components with >= 2 vertices (d)
};

// Family of integer polynomials (the members). Nonempty.
class PolyFamily {
public:
  explicit PolyFamily(std::vector<IntPolynomial> members);  // domain error when empty

  // Splits on ';' into member texts. Without ';': if every comma-separated
  // token is a bare integer the whole text is one coefficient list, else
  // each comma-separated token is one member expression.
  static PolyFamily parse(const std::string& text);

  std::size_t m() const { return members_.size(); }
  const std::vector<IntPolynomial>& members() const { return members_; }
  const IntPolynomial& member(std::size_t j) const { return members_[j]; }

  std::uint64_t peg() const;       // product of member degrees (domain error on constants)
  mpz_class coeff_size() const;    // sum of member heights
  std::string text() const;        // members joined with "; "

  // Primitive: pairwise distinct members, each irreducible with positive
  // leading coefficient and content 1. The report names the first violation
  // in that order.
  PrimitivityReport primitivity(bool assume_irreducible = false) const;
  bool is_primitive(bool assume_irreducible = false) const;

private:
  std::vector<IntPolynomial> members_;
};

// nu_p of a family: distinct residues a mod p killing some member
// (p prime, bounds error above 2^31). Saturated when a member reduces to
// the zero polynomial mod p.
FamilyNu nu_p_family(const PolyFamily& f, std::uint64_t p);

// Members f_j(X + h_i), outer loop over tuple entries i, inner over members
// j (so blocks of m consecutive members share one shift).
PolyFamily compose(const PolyFamily& f, const KTuple& h);

// All shift relations among members. Domain error when the family is not
// primitive (relations are only meaningful there).
std::vector<ShiftRelation> shift_relations(const PolyFamily& f, bool assume_irreducible = false);

DegeneracyGraph degeneracy_graph(const PolyFamily& f, const KTuple& h,
                                 bool assume_irreducible = false);

// True iff the composition has no collisions (the degeneracy graph has no
// edges, equivalently all k*m composed members are distinct).
bool composed_is_primitive(const PolyFamily& f, const KTuple& h, bool assume_irreducible = false);

std::size_t distinct_member_count(const PolyFamily& f, const KTuple& h);

// |prod resultant(g_a, g_b)| over unordered pairs of composed members;
// zero iff two composed members share a factor (for irreducible members:
// iff two coincide, i.e. the composition is degenerate).
mpz_class pairwise_resultant_product(const PolyFamily& composed);

}  // namespace singseries
