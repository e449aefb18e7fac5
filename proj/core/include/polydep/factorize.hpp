#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polydep/intpoly.hpp"

namespace polydep {

struct Factorization {
  int sign = 1;
  Integer content = 1;
  // Primitive irreducible factors with positive leading coefficient, sorted
  // by (degree, coefficients), and their multiplicities.
  std::vector<std::pair<IntPolynomial, int>> factors;

  IntPolynomial expand() const;
  std::string to_json() const;
};

Factorization factor(const IntPolynomial& f);
bool is_irreducible(const IntPolynomial& f);

// Irreducible factors of a primitive squarefree polynomial (unsorted).
std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f);

// Degrees k for which some divisor of f over Q has degree exactly k.
std::vector<int> divisor_degrees(const Factorization& fac);

}  // namespace polydep
