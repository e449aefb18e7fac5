#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polydep/numeric.hpp"

namespace polydep {

using Integer = mpz_class;
using Rational = mpq_class;

// Univariate polynomial with arbitrary-precision integer coefficients,
// stored low-to-high. Trailing zeros are trimmed on construction, so the zero
// polynomial has an empty coefficient vector and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  // Parses "[a0,a1,...,an]". Rejects empty lists and a zero last entry.
  static IntPolynomial parse(std::string_view text);
  static IntPolynomial monomial(const Integer& c, int k);
  static IntPolynomial constant(const Integer& c);

  std::string to_string() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  // Coefficient of X^i, zero beyond the degree.
  Integer coeff(int i) const;
  const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  const Integer& leading() const { return coeffs_.back(); }

  Integer evaluate(const Integer& x) const;
  Rational evaluate(const Rational& x) const;
  IntPolynomial derivative() const;
  // f(c X)
  IntPolynomial scale_variable(const Integer& c) const;
  // f(-X)
  IntPolynomial negate_variable() const;
  IntPolynomial operator-() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const Integer& c, const IntPolynomial& a);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  // Orders by degree, then by coefficient sequence from low to high.
  friend bool operator<(const IntPolynomial& a, const IntPolynomial& b);

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

struct ContentPrimitive {
  Integer content;
  int sign = 1;
  IntPolynomial primitive;
};

Integer height(const IntPolynomial& f);
Integer content(const IntPolynomial& f);
ContentPrimitive content_primitive(const IntPolynomial& f);
IntPolynomial primitive_part(const IntPolynomial& f);
IntPolynomial reciprocal(const IntPolynomial& f);
Integer resultant(const IntPolynomial& f, const IntPolynomial& g);
Integer discriminant(const IntPolynomial& f);
bool is_squarefree(const IntPolynomial& f);

// Exact division; throws InvalidInput when g does not divide f over Z.
IntPolynomial exact_quotient(const IntPolynomial& f, const IntPolynomial& g);
// Returns true and sets q when g divides f over Z.
bool divides(const IntPolynomial& g, const IntPolynomial& f, IntPolynomial* q = nullptr);
// Pseudo-division: lc(g)^(deg f - deg g + 1) f = q g + r.
void pseudo_divide(const IntPolynomial& f, const IntPolynomial& g, IntPolynomial& q,
                   IntPolynomial& r);
// Primitive gcd with positive leading coefficient (gcd of two constants is 1).
IntPolynomial gcd(const IntPolynomial& f, const IntPolynomial& g);

// Index of the first non-zero coefficient (multiplicity of the root 0).
int zero_multiplicity(const IntPolynomial& f);
IntPolynomial strip_zero_roots(const IntPolynomial& f);

// Squarefree decomposition of the primitive part: non-constant pairwise
// coprime primitive factors g_i with positive leading coefficient and
// distinct multiplicities such that primitive(f) = prod g_i^m_i.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& f);
// Product of the distinct irreducible factors of the primitive part.
IntPolynomial squarefree_part(const IntPolynomial& f);

// Certified enclosure of the Mahler measure, width <= 2^-precision * M(f).
RealEnclosure mahler_measure(const IntPolynomial& f, long precision);

// Cheap helpers shared by several modules.
Rational root_product(const IntPolynomial& f);  // (-1)^n a0 / an
Integer binomial(unsigned n, unsigned k);

}  // namespace polydep
