#pragma once

#include <string>
#include <vector>

#include "polydep/intpoly.hpp"
#include "polydep/numeric.hpp"

namespace polydep {

// Closed disk containing exactly one distinct root of the polynomial it was
// computed from. Real roots have an imaginary centre of exactly zero.
struct RootEnclosure {
  BigFloat re;
  BigFloat im;
  BigFloat radius;
  int multiplicity = 1;

  bool is_real() const { return im.is_zero(); }
  ComplexBall ball(mpfr_prec_t prec) const;
  // log2 of the radius, rounded up; very negative for tiny disks.
  long radius_log2() const;
  std::string to_string(int digits = 20) const;
};

struct RootProfile {
  int zero_multiplicity = 0;
  std::vector<RootEnclosure> nonzero_roots;
  // conjugate[i] is the index of the enclosure of the complex conjugate of
  // root i (i itself for real roots).
  std::vector<int> conjugate;
};

// Target radii are given as 2^-bits to keep the interface exact.
std::vector<RootEnclosure> isolate_roots(const IntPolynomial& f, const BigFloat& target_radius);
std::vector<RootEnclosure> isolate_roots(const IntPolynomial& f, long target_bits);

RootProfile root_profile(const IntPolynomial& f, const BigFloat& target_radius);
RootProfile root_profile(const IntPolynomial& f, long target_bits);

RootEnclosure refine(const RootEnclosure& enclosure, const IntPolynomial& f,
                     const BigFloat& target_radius);
RootEnclosure refine(const RootEnclosure& enclosure, const IntPolynomial& f, long target_bits);

// Double-precision certified isolation for squarefree polynomials whose
// coefficients fit in doubles. Returns false when certification fails
// (clusters, overflow); callers then fall back to multiprecision.
struct FastRoot {
  double re;
  double im;
  double radius;
};
bool fast_isolate(const double* coeffs, int degree, std::vector<FastRoot>& out);

}  // namespace polydep
