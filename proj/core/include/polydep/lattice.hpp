#pragma once

#include <optional>
#include <vector>

#include "polydep/intpoly.hpp"
#include "polydep/numeric.hpp"

namespace polydep {

using IntegerVector = std::vector<Integer>;

struct IntegerMatrix {
  std::vector<IntegerVector> rows;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Exact integral LLL with Lovasz parameter delta in (1/4, 1). If transform is
// given it receives the unimodular U with U * basis = result.
IntegerMatrix lll_reduce(const IntegerMatrix& basis, const Rational& delta = Rational(99, 100),
                         IntegerMatrix* transform = nullptr);

struct RelationCandidate {
  IntegerVector coefficients;
  // Upper bound on |sum k_i v_i| (maximum over the linear forms searched).
  BigFloat residual;
};

// Integer relation search on one linear form via the scaled-identity
// embedding. Returns the shortest reduced-basis vector with max|k_i| <= bound
// and residual below 2^(-scale_bits/2), normalised so that its first non-zero
// entry is positive. Absence is not a proof that no relation exists.
std::optional<RelationCandidate> find_relation(const std::vector<Ball>& values, const Integer& bound,
                                               long scale_bits);

// Several simultaneous linear forms over the same unknowns. forms[r][i] is the
// coefficient of unknown i in form r. Only the first `bounded` unknowns are
// subject to the bound; the rest are auxiliary integers (for instance the
// multiple of 2*pi in an argument relation). All passing reduced-basis
// vectors are returned, shortest first.
//
// For multiplicative relations among z_1..z_m pass the two forms
//   (log|z_1|, ..., log|z_m|, 0) and (arg z_1, ..., arg z_m, 2*pi)
// with bounded = m: a relation prod z_i^k_i = 1 is then an exact integer
// relation with one auxiliary unknown.
std::vector<RelationCandidate> find_relations(const std::vector<std::vector<Ball>>& forms,
                                              std::size_t bounded, const Integer& bound,
                                              long scale_bits);

}  // namespace polydep
