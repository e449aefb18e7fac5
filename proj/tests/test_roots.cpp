#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "polydep/error.hpp"
#include "polydep/roots.hpp"

using namespace polydep;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

bool disk_contains(const RootEnclosure& e, double re, double im) {
  double d = std::hypot(e.re.to_double() - re, e.im.to_double() - im);
  return d <= e.radius.to_double() * (1 + 1e-9) + 1e-300;
}

double dist(const RootEnclosure& a, const RootEnclosure& b) {
  return std::hypot(a.re.to_double() - b.re.to_double(), a.im.to_double() - b.im.to_double());
}

}  // namespace

TEST(Roots, IsolateExamples) {
  auto r = isolate_roots(P("[-2,0,1]"), 20);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& e : r) {
    EXPECT_EQ(e.multiplicity, 1);
    EXPECT_LE(e.radius.to_double(), std::ldexp(1.0, -20));
    EXPECT_NEAR(std::fabs(e.re.to_double()), std::sqrt(2.0), 1e-6);
  }
  r = isolate_roots(P("[1,0,1]"), 30);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& e : r) EXPECT_NEAR(std::fabs(e.im.to_double()), 1.0, 1e-9);
  r = isolate_roots(P("[1,-2,1]"), 30);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].multiplicity, 2);
  EXPECT_TRUE(disk_contains(r[0], 1.0, 0.0));
}

TEST(Roots, ProfileExamples) {
  RootProfile p = root_profile(P("[0,-1,0,1]"), 30);
  EXPECT_EQ(p.zero_multiplicity, 1);
  ASSERT_EQ(p.nonzero_roots.size(), 2u);
  p = root_profile(P("[0,0,1]"), 30);
  EXPECT_EQ(p.zero_multiplicity, 2);
  EXPECT_TRUE(p.nonzero_roots.empty());
  p = root_profile(P("[1,1,1]"), 30);
  ASSERT_EQ(p.nonzero_roots.size(), 2u);
  EXPECT_EQ(p.conjugate[0], 1);
  EXPECT_EQ(p.conjugate[1], 0);
  for (const auto& e : p.nonzero_roots) EXPECT_NEAR(e.re.to_double(), -0.5, 1e-9);
}

TEST(Roots, RefineExamples) {
  auto r = isolate_roots(P("[-2,0,1]"), 10);
  const RootEnclosure& pos = r[0].re.sign() > 0 ? r[0] : r[1];
  RootEnclosure fine = refine(pos, P("[-2,0,1]"), 100);
  EXPECT_LE(fine.radius.to_double(), std::ldexp(1.0, -100));
  BigFloat s(256);
  mpfr_sqrt_ui(s.get(), 2, MPFR_RNDN);
  BigFloat d(256);
  mpfr_sub(d.get(), fine.re.get(), s.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  EXPECT_TRUE(d <= fine.radius);

  RootEnclosure same = refine(pos, P("[-2,0,1]"), 10);
  EXPECT_TRUE(mpfr_equal_p(same.re.get(), pos.re.get()));
  EXPECT_TRUE(mpfr_equal_p(same.radius.get(), pos.radius.get()));

  auto g = isolate_roots(P("[-1,-1,1]"), 10);
  const RootEnclosure& gp = g[0].re.sign() > 0 ? g[0] : g[1];
  RootEnclosure gf = refine(gp, P("[-1,-1,1]"), 170);
  BigFloat phi(512);
  mpfr_sqrt_ui(phi.get(), 5, MPFR_RNDN);
  mpfr_add_ui(phi.get(), phi.get(), 1, MPFR_RNDN);
  mpfr_div_ui(phi.get(), phi.get(), 2, MPFR_RNDN);
  mpfr_sub(d.get(), gf.re.get(), phi.get(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  EXPECT_TRUE(d <= gf.radius);
  EXPECT_LT(gf.radius.to_double(), 1e-50);

  EXPECT_THROW(refine(pos, P("[-3,0,1]"), 400), InvalidInput);
}

TEST(Roots, RandomInvariants) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int t = 0; t < 400; ++t) {
    int n = 1 + t % 6;
    std::vector<Integer> v(n + 1);
    for (auto& x : v) x = c(rng);
    if (v[n] == 0) v[n] = 1;
    if (t % 5 == 0) v[0] = 0;
    IntPolynomial f(v);
    RootProfile p = root_profile(f, 40);
    int total = p.zero_multiplicity;
    for (const auto& e : p.nonzero_roots) total += e.multiplicity;
    ASSERT_EQ(total, n) << f.to_string();
    for (std::size_t i = 0; i < p.nonzero_roots.size(); ++i) {
      EXPECT_EQ(p.conjugate[p.conjugate[i]], static_cast<int>(i));
      for (std::size_t j = i + 1; j < p.nonzero_roots.size(); ++j) {
        EXPECT_GT(dist(p.nonzero_roots[i], p.nonzero_roots[j]),
                  p.nonzero_roots[i].radius.to_double() + p.nonzero_roots[j].radius.to_double());
      }
    }
    // Newton identity: sum of roots with multiplicity is -a_{n-1}/a_n.
    double sr = 0, si = 0, rad = 0;
    for (const auto& e : p.nonzero_roots) {
      sr += e.multiplicity * e.re.to_double();
      si += e.multiplicity * e.im.to_double();
      rad += e.multiplicity * e.radius.to_double();
    }
    double expect = -v[n - 1].get_d() / v[n].get_d();
    EXPECT_LE(std::hypot(sr - expect, si), rad + 1e-9 * (1 + std::fabs(expect)));
    // Disks agree with the independent Durand-Kerner roots of the squarefree part.
    auto dk = oracle::distinct_nonzero_roots(f);
    ASSERT_EQ(dk.size(), p.nonzero_roots.size());
    for (const auto& z : dk) {
      double best = 1e300;
      for (const auto& e : p.nonzero_roots) {
        best = std::min(best, std::hypot(e.re.to_double() - static_cast<double>(z.real()),
                                         e.im.to_double() - static_cast<double>(z.imag())));
      }
      EXPECT_LT(best, 1e-6);
    }
    // Monotone refinement.
    RootProfile q = root_profile(f, 80);
    ASSERT_EQ(q.nonzero_roots.size(), p.nonzero_roots.size());
    for (std::size_t i = 0; i < q.nonzero_roots.size(); ++i) {
      EXPECT_LE(dist(q.nonzero_roots[i], p.nonzero_roots[i]) + q.nonzero_roots[i].radius.to_double(),
                p.nonzero_roots[i].radius.to_double() * (1 + 1e-9) + 1e-300);
    }
  }
}

TEST(Roots, FastIsolateAgreesWithMultiprecision) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> c(-30, 30);
  std::vector<FastRoot> fr;
  int certified = 0;
  for (int t = 0; t < 2000; ++t) {
    double a[5];
    std::vector<Integer> v(5);
    for (int i = 0; i < 4; ++i) {
      v[i] = c(rng);
      a[i] = v[i].get_d();
    }
    v[4] = 1;
    a[4] = 1;
    if (!fast_isolate(a, 4, fr)) continue;
    ++certified;
    RootProfile p = root_profile(IntPolynomial(v), 60);
    ASSERT_EQ(p.nonzero_roots.size() + p.zero_multiplicity, 4u);
    for (const auto& e : p.nonzero_roots) {
      bool inside = false;
      for (const auto& r : fr) inside = inside || std::hypot(e.re.to_double() - r.re, e.im.to_double() - r.im) <= r.radius;
      EXPECT_TRUE(inside);
    }
  }
  EXPECT_GT(certified, 1900);
}
