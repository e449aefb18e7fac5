#pragma once

#include <vector>

#include "polydep/intpoly.hpp"

namespace polydep {

// Rational polynomial on each interval [breakpoints[j], breakpoints[j+1]];
// zero outside [breakpoints.front(), breakpoints.back()].
struct PiecewisePolynomial {
  std::vector<Rational> breakpoints;
  std::vector<std::vector<Rational>> pieces;  // low-to-high coefficients

  Rational lo() const { return breakpoints.front(); }
  Rational hi() const { return breakpoints.back(); }
  Rational evaluate(const Rational& x) const;
  Rational integrate(const Rational& a, const Rational& b) const;
  bool is_continuous() const;
};

// Density of the sum of m independent uniforms on [-1, 1].
PiecewisePolynomial uniform_sum_density(int m);

// Volume of |x_i| <= 1 (i < n), |x_1 + ... + x_{n-1}| <= 1 in R^(n-1).
Rational nu(int n);

}  // namespace polydep
