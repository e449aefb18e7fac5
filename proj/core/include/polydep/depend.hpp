#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polydep/intpoly.hpp"
#include "polydep/roots.hpp"

namespace polydep {

enum class Verdict { Dependent, Independent, Unknown };
enum class Certificate { ClosedForm, NormGapCertified };
enum class Reason {
  EmptyRootSet,
  ConstantTermUnit,
  SingleRootOfUnity,
  Degenerate,
  RationalExponentMatrix,
  PrimeDegreeLemma,
  QuadraticCaseAnalysis,
  QuarticCaseAnalysis,
  ReducibleNormReduction,
  QuadraticPairAnalysis,
  LatticeCertified,
  SumOfRootsZero,
  ZeroRoot,
};

const char* to_string(Verdict v);
const char* to_string(Certificate c);
const char* to_string(Reason r);

// Outcome of a dependence test. The relation is indexed by the distinct
// non-zero roots in root_profile order (for linear dependence: the zero root,
// if present, first, then the non-zero roots in profile order).
struct DependenceVerdict {
  Verdict tag = Verdict::Unknown;
  std::vector<Integer> relation;            // Dependent only
  std::optional<Certificate> certificate;  // Dependent only
  std::optional<Reason> reason;            // Dependent and Independent
  std::optional<Integer> searched_bound;   // Unknown only

  static DependenceVerdict dependent(std::vector<Integer> k, Certificate c, Reason r);
  static DependenceVerdict independent(Reason r);
  static DependenceVerdict unknown(const Integer& bound);

  bool is_dependent() const { return tag == Verdict::Dependent; }
  bool is_independent() const { return tag == Verdict::Independent; }
  bool is_unknown() const { return tag == Verdict::Unknown; }
  std::string to_json() const;
};

struct SearchParameters {
  // Exponent bound K; empty means max(12, ceil(8 (log(nH))^(n-1))).
  std::optional<long> exponent_bound;
  long precision_start = 64;
  Rational lll_delta = Rational(99, 100);
  long max_precision = 1L << 20;
  // Multiplies the working precision of norm-gap certification; 2 is used to
  // re-verify certificates at doubled precision.
  int verification_scale = 1;

  long effective_bound(const IntPolynomial& f) const;
};

enum class NormConstraint { NoConstraint, SumZero };

struct RationalGroupStructure {
  enum class Tag { Trivial, PlusMinusOne, CyclicNoMinusOne, CyclicWithMinusOne, Undetermined };
  Tag tag = Tag::Undetermined;
  Rational g = 1;        // generator for Cyclic tags; g0 for Undetermined
  long searched_bound = 0;
  std::string to_json() const;
};

IntPolynomial ratio_polynomial(const IntPolynomial& f);
bool is_degenerate(const IntPolynomial& f);
// Orders m > 1 such that some quotient of two distinct non-zero roots is a
// primitive m-th root of unity.
std::vector<int> degenerate_orders(const IntPolynomial& f);

DependenceVerdict rational_dependence(const std::vector<Rational>& values);
NormConstraint norm_sum_constraint(const IntPolynomial& f);
bool prime_degree_independent(const IntPolynomial& f);
DependenceVerdict quadratic_classify(const IntPolynomial& f);
DependenceVerdict quartic_classify(const IntPolynomial& f, const SearchParameters& params = {});
bool certify_relation(const RootProfile& profile, const IntPolynomial& f, const std::vector<Integer>& k,
                      const SearchParameters& params = {});
DependenceVerdict multiplicative_dependence(const IntPolynomial& f, const SearchParameters& params = {});
RationalGroupStructure gamma_structure(const IntPolynomial& f, const SearchParameters& params = {});
bool norm_integer_filter(const IntPolynomial& f);
DependenceVerdict linear_dependence(const IntPolynomial& f, const SearchParameters& params = {});
// Norm-gap check of sum k_i z_i = 0 over the roots indexed as in
// linear_dependence.
bool certify_linear_relation(const IntPolynomial& f, const std::vector<Integer>& k,
                             const SearchParameters& params = {});

}  // namespace polydep
