#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "polydep/depend.hpp"
#include "polydep/error.hpp"
#include "polydep/factorize.hpp"

using namespace polydep;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

std::vector<Integer> K(std::initializer_list<long> v) { return std::vector<Integer>(v.begin(), v.end()); }

std::vector<Rational> Q(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

template <class F>
void for_each_monic(int n, long H, F&& f) {
  std::vector<long> a(n, -H);
  while (true) {
    std::vector<Integer> v(a.begin(), a.end());
    v.push_back(1);
    f(IntPolynomial(v));
    int i = 0;
    while (i < n && a[i] == H) a[i++] = -H;
    if (i == n) break;
    ++a[i];
  }
}

bool recertifies(const IntPolynomial& f, const DependenceVerdict& v) {
  SearchParameters p;
  p.verification_scale = 2;
  return certify_relation(root_profile(f, 64), f, v.relation, p);
}

}  // namespace

TEST(Depend, RatioPolynomialExamples) {
  EXPECT_EQ(ratio_polynomial(P("[-2,1]")), P("[-2,2]"));
  EXPECT_EQ(ratio_polynomial(P("[1,0,1]")), P("[1,0,-2,0,1]"));
  // 4 (x-1)^2 (x-2) (x-1/2)
  EXPECT_EQ(ratio_polynomial(P("[2,-3,1]")), P("[4,-18,28,-18,4]"));
  EXPECT_THROW(ratio_polynomial(P("[0,1,1]")), InvalidInput);
  EXPECT_THROW(ratio_polynomial(P("[1,2,1]")), InvalidInput);
}

TEST(Depend, RatioPolynomialRootsAreQuotients) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 2;
    std::vector<Integer> v(n + 1);
    for (auto& x : v) x = c(rng);
    if (v[n] == 0) v[n] = 2;
    if (v[0] == 0) v[0] = 3;
    IntPolynomial f(v);
    if (!is_squarefree(f)) continue;
    IntPolynomial R = ratio_polynomial(f);
    ASSERT_EQ(R.degree(), n * n);
    auto z = oracle::distinct_nonzero_roots(f);
    for (const auto& a : z) {
      for (const auto& b : z) {
        std::complex<long double> q = a / b, acc = 0;
        long double scale = 0, pw = 1;
        for (int i = R.degree(); i >= 0; --i) acc = acc * q + static_cast<long double>(R[i].get_d());
        for (int i = 0; i <= R.degree(); ++i, pw *= std::abs(q)) scale += std::fabs(R[i].get_d()) * pw;
        EXPECT_LE(std::abs(acc), 1e-9L * scale) << f.to_string();
      }
    }
    // (x - 1)^n divides R exactly
    IntPolynomial d{1};
    for (int i = 0; i < n; ++i) d = d * IntPolynomial{-1, 1};
    EXPECT_TRUE(divides(d, R));
  }
}

TEST(Depend, Degeneracy) {
  EXPECT_TRUE(is_degenerate(P("[2,0,1]")));
  EXPECT_TRUE(is_degenerate(P("[1,1,1]")));
  EXPECT_FALSE(is_degenerate(P("[-1,-1,1]")));
  EXPECT_THROW(is_degenerate(P("[1,1]")), InvalidInput);
}

TEST(Depend, DegeneracyAgreesWithNumericQuotients) {
  // Oracle: some quotient of distinct roots has modulus 1 and a power q^m = 1, m <= 30.
  for_each_monic(3, 4, [](const IntPolynomial& f) {
    auto z = oracle::distinct_nonzero_roots(f);
    bool hit = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (i == j) continue;
        std::complex<long double> q = z[i] / z[j], p = 1;
        for (int m = 1; m <= 30 && !hit; ++m) {
          p *= q;
          hit = std::abs(p - std::complex<long double>(1)) < 1e-9L;
        }
      }
    }
    ASSERT_EQ(is_degenerate(f), hit) << f.to_string();
  });
}

TEST(Depend, RationalDependence) {
  DependenceVerdict a = rational_dependence(Q({2, 4}));
  ASSERT_TRUE(a.is_dependent());
  EXPECT_EQ(a.relation, K({2, -1}));
  EXPECT_TRUE(rational_dependence(Q({2, 3})).is_independent());
  DependenceVerdict c = rational_dependence(Q({-2, 4}));
  ASSERT_TRUE(c.is_dependent());
  EXPECT_EQ(c.relation, K({2, -1}));
  EXPECT_THROW(rational_dependence(Q({0, 2})), InvalidInput);
}

TEST(Depend, RationalDependenceAgainstBruteForce) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<long> c(-30, 30);
  for (int t = 0; t < 400; ++t) {
    std::vector<Rational> v;
    for (int i = 0; i < 3; ++i) {
      long p = c(rng), q = c(rng);
      if (p == 0) p = 1;
      if (q == 0) q = 1;
      Rational r(p, q);
      r.canonicalize();
      v.push_back(r);
    }
    DependenceVerdict d = rational_dependence(v);
    ASSERT_FALSE(d.is_unknown());
    if (d.is_dependent()) {
      Rational prod = 1;
      for (std::size_t i = 0; i < v.size(); ++i) {
        Rational pw = 1;
        long e = d.relation[i].get_si();
        for (long s = 0; s < std::labs(e); ++s) pw *= v[i];
        prod *= e >= 0 ? pw : 1 / pw;
      }
      EXPECT_EQ(prod, 1);
    } else {
      // No relation with exponents up to 6.
      for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b)
          for (int e = -6; e <= 6; ++e) {
            if (a == 0 && b == 0 && e == 0) continue;
            double s = a * std::log(std::fabs(v[0].get_d())) + b * std::log(std::fabs(v[1].get_d())) +
                       e * std::log(std::fabs(v[2].get_d()));
            ASSERT_GT(std::fabs(s), 1e-9);
          }
    }
  }
}

TEST(Depend, NormConstraintAndPrimeDegree) {
  EXPECT_EQ(norm_sum_constraint(P("[3,1,0,1]")), NormConstraint::SumZero);
  EXPECT_EQ(norm_sum_constraint(P("[-1,-1,1]")), NormConstraint::NoConstraint);
  EXPECT_EQ(norm_sum_constraint(P("[1,1,0,0,1]")), NormConstraint::NoConstraint);
  EXPECT_THROW(norm_sum_constraint(P("[-1,0,1]")), InvalidInput);
  EXPECT_TRUE(prime_degree_independent(P("[3,1,0,1]")));
  EXPECT_FALSE(prime_degree_independent(P("[-2,0,0,1]")));
  EXPECT_FALSE(prime_degree_independent(P("[1,1,0,1]")));
  EXPECT_THROW(prime_degree_independent(P("[2,0,0,0,1]")), InvalidInput);
}

TEST(Depend, QuadraticClassify) {
  DependenceVerdict a = quadratic_classify(P("[-1,-1,1]"));
  ASSERT_TRUE(a.is_dependent());
  EXPECT_EQ(a.relation, K({2, 2}));
  EXPECT_TRUE(quadratic_classify(P("[2,0,1]")).is_dependent());
  DependenceVerdict c = quadratic_classify(P("[2,1,1]"));
  ASSERT_TRUE(c.is_independent());
  EXPECT_EQ(*c.reason, Reason::QuadraticCaseAnalysis);
  EXPECT_FALSE(oracle::exponent_search(P("[2,1,1]")).has_value());
  EXPECT_THROW(quadratic_classify(P("[-1,0,1]")), InvalidInput);
}

TEST(Depend, QuarticClassify) {
  EXPECT_TRUE(quartic_classify(P("[1,1,0,0,1]")).is_dependent());
  EXPECT_TRUE(quartic_classify(P("[-2,0,0,0,1]")).is_dependent());
  DependenceVerdict v = quartic_classify(P("[2,1,0,0,1]"));
  ASSERT_FALSE(v.is_unknown());
  EXPECT_EQ(v.is_dependent(), oracle::certified_exponent_search(P("[2,1,0,0,1]")).dependent);
  EXPECT_THROW(quartic_classify(P("[4,0,0,0,1]")), InvalidInput);
}

TEST(Depend, CertifyRelation) {
  IntPolynomial g = P("[-1,-1,1]");
  RootProfile p = root_profile(g, 64);
  EXPECT_TRUE(certify_relation(p, g, K({2, 2})));
  EXPECT_FALSE(certify_relation(p, g, K({1, 1})));
  IntPolynomial i = P("[1,0,1]");
  EXPECT_TRUE(certify_relation(root_profile(i, 64), i, K({1, 1})));
  EXPECT_THROW(certify_relation(p, g, K({1})), InvalidInput);
}

TEST(Depend, MultiplicativeExamples) {
  DependenceVerdict a = multiplicative_dependence(P("[8,-6,1]"));
  ASSERT_TRUE(a.is_dependent());
  EXPECT_EQ(a.relation, K({2, -1}));
  EXPECT_TRUE(multiplicative_dependence(P("[6,-5,1]")).is_independent());
  DependenceVerdict c = multiplicative_dependence(P("[3,1,0,0,0,1]"));
  ASSERT_TRUE(c.is_independent());
  EXPECT_EQ(*c.reason, Reason::PrimeDegreeLemma);
  EXPECT_TRUE(multiplicative_dependence(P("[0,0,1]")).is_independent());
  EXPECT_TRUE(multiplicative_dependence(P("[0,3,1]")).is_independent());
  EXPECT_TRUE(multiplicative_dependence(P("[0,1,1]")).is_dependent());
  EXPECT_THROW(multiplicative_dependence(IntPolynomial()), InvalidInput);
  EXPECT_EQ(multiplicative_dependence(P("[-1,-1,1]")).to_json(),
            R"({"verdict":"dependent","relation":[2,2],"certificate":"closed_form","reason":"constant_term_unit"})");
}

TEST(Depend, GammaStructure) {
  using T = RationalGroupStructure::Tag;
  EXPECT_EQ(gamma_structure(P("[-1,-1,1]")).tag, T::PlusMinusOne);
  RationalGroupStructure b = gamma_structure(P("[-2,0,1]"));
  EXPECT_EQ(b.tag, T::CyclicWithMinusOne);
  EXPECT_EQ(b.g, 2);
  // The roots generate the cube roots of unity, which contain no -1.
  EXPECT_EQ(gamma_structure(P("[1,1,1]")).tag, T::Trivial);
  RationalGroupStructure d = gamma_structure(P("[3,1,0,1]"));
  EXPECT_TRUE(d.tag == T::CyclicNoMinusOne || d.tag == T::CyclicWithMinusOne || d.tag == T::Undetermined);
  if (d.tag != T::Undetermined) EXPECT_EQ(abs(d.g), 3);
  EXPECT_THROW(gamma_structure(P("[-1,0,1]")), InvalidInput);
}

TEST(Depend, NormIntegerFilter) {
  EXPECT_FALSE(norm_integer_filter(P("[-1,-1,1]")));
  EXPECT_TRUE(norm_integer_filter(P("[3,1,0,1]")));
  EXPECT_FALSE(norm_integer_filter(P("[1,-3,1]")));
  EXPECT_THROW(norm_integer_filter(P("[-1,0,1]")), InvalidInput);
}

TEST(Depend, LinearDependence) {
  DependenceVerdict a = linear_dependence(P("[3,0,1]"));
  ASSERT_TRUE(a.is_dependent());
  EXPECT_EQ(a.relation, K({1, 1}));
  DependenceVerdict b = linear_dependence(P("[1,-3,0,1]"));
  ASSERT_TRUE(b.is_dependent());
  EXPECT_EQ(b.relation, K({1, 1, 1}));
  DependenceVerdict c = linear_dependence(P("[-1,-1,1]"));
  EXPECT_TRUE(c.is_unknown());
  EXPECT_TRUE(linear_dependence(P("[0,-1,1]")).is_dependent());
  EXPECT_THROW(linear_dependence(P("[1,1]")), InvalidInput);
}

TEST(Depend, LinearDependenceCertifiedHitsAreReal) {
  for_each_monic(3, 3, [](const IntPolynomial& f) {
    if (f[0] == 0) return;
    DependenceVerdict v = linear_dependence(f);
    ASSERT_FALSE(v.is_independent());
    if (v.is_dependent()) {
      EXPECT_TRUE(oracle::small_linear_relation(f, 12)) << f.to_string();
      EXPECT_TRUE(certify_linear_relation(f, v.relation)) << f.to_string();
    }
  });
}

TEST(Depend, OracleEquivalenceSmallHeights) {
  for (int n = 2; n <= 4; ++n) {
    long H = n == 4 ? 2 : 5;
    for_each_monic(n, H, [](const IntPolynomial& f) {
      DependenceVerdict v = multiplicative_dependence(f);
      ASSERT_FALSE(v.is_unknown()) << f.to_string();
      oracle::Decision d = oracle::certified_exponent_search(f);
      ASSERT_EQ(v.is_dependent(), d.dependent) << f.to_string();
      if (v.is_dependent()) ASSERT_TRUE(recertifies(f, v)) << f.to_string();
    });
  }
}

TEST(Depend, StructuralProperties) {
  for_each_monic(3, 4, [](const IntPolynomial& f) {
    DependenceVerdict v = multiplicative_dependence(f);
    IntPolynomial g = squarefree_part(strip_zero_roots(f));
    if (g.degree() >= 2 && is_degenerate(g)) ASSERT_TRUE(v.is_dependent()) << f.to_string();
    if (abs(f[0]) == 1 && is_squarefree(f)) ASSERT_TRUE(v.is_dependent()) << f.to_string();
    if (is_irreducible(f) && !is_degenerate(f) && v.is_dependent()) {
      for (int i = 0; i < 3; ++i) {
        Integer others = 0;
        for (int j = 0; j < 3; ++j) {
          if (j != i) others += abs(v.relation[j]);
        }
        ASSERT_FALSE(v.relation[i] != 0 && abs(v.relation[i]) >= others) << f.to_string();
      }
    }
  });
  for_each_monic(2, 10, [](const IntPolynomial& f) {
    if (is_irreducible(f)) ASSERT_FALSE(quadratic_classify(f).is_unknown());
  });
  for_each_monic(4, 2, [](const IntPolynomial& f) {
    if (is_irreducible(f)) ASSERT_FALSE(quartic_classify(f).is_unknown());
  });
}

TEST(Depend, PrimeDegreeIndependenceRandom) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> c(-20, 20);
  int checked = 0;
  while (checked < 150) {
    int n = checked % 2 == 0 ? 3 : 5;
    std::vector<Integer> v(n + 1);
    for (auto& x : v) x = c(rng);
    v[n] = 1;
    IntPolynomial f(v);
    if (abs(v[0]) <= 1 || !is_irreducible(f)) continue;
    bool middle = false;
    for (int j = 1; j < n; ++j) middle = middle || v[j] != 0;
    if (!middle) continue;
    ++checked;
    EXPECT_TRUE(multiplicative_dependence(f).is_independent()) << f.to_string();
    if (n == 3) {
      EXPECT_FALSE(oracle::exponent_search(f).has_value()) << f.to_string();
    }
  }
}
