#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "polydep/intpoly.hpp"

namespace oracle {

using polydep::IntPolynomial;

// Distinct non-zero roots by Durand-Kerner in long double, run on the
// squarefree part with zero roots removed.
std::vector<std::complex<long double>> distinct_nonzero_roots(const IntPolynomial& f);

// Exhaustive search for k in [-bound, bound]^m, k != 0, with prod z_i^k_i = 1,
// screened in long double and confirmed to 1e-40 with Newton-polished roots.
// The entries follow the order of distinct_nonzero_roots.
std::optional<std::vector<int>> exponent_search(const IntPolynomial& f, int bound = 12);

// Same decision, with the hit reordered to the library's root order and
// certified by the library's norm-gap check.
struct Decision {
  bool dependent = false;
  std::vector<int> relation;  // library root order
};
Decision certified_exponent_search(const IntPolynomial& f, int bound = 12);

// Reordering of oracle roots onto library enclosures by nearest centre.
std::vector<int> match_library_order(const IntPolynomial& f, const std::vector<std::complex<long double>>& roots);

// True iff f has an integer divisor of degree k, by trial division over all
// candidates within the coefficient bound C(k, i) * ||f||_2.
bool has_divisor_of_degree(const IntPolynomial& f, int k);
bool irreducible_by_search(const IntPolynomial& f);

// Sum k_i z_i = 0 for some small integer vector, in long double, |k| <= bound.
bool small_linear_relation(const IntPolynomial& f, int bound);

}  // namespace oracle
