#include <random>

#include <gtest/gtest.h>

#include "polydep/error.hpp"
#include "polydep/intpoly.hpp"

using namespace polydep;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

BigFloat bf(double x) { return BigFloat(x, 128); }

IntPolynomial random_poly(std::mt19937& rng, int max_deg, long H) {
  std::uniform_int_distribution<int> deg(1, max_deg);
  std::uniform_int_distribution<long> c(-H, H);
  int n = deg(rng);
  std::vector<Integer> v(n + 1);
  for (auto& x : v) x = c(rng);
  while (v[n] == 0) v[n] = c(rng);
  return IntPolynomial(v);
}

}  // namespace

TEST(IntPoly, ParseAndPrint) {
  EXPECT_EQ(P("[-1,-1,1]").degree(), 2);
  EXPECT_EQ(P(" [ 3 , -5 , 1 ] ").to_string(), "[3,-5,1]");
  EXPECT_THROW(P("[]"), InvalidInput);
  EXPECT_THROW(P("[1,0]"), InvalidInput);
  EXPECT_THROW(P("[1,a]"), InvalidInput);
  EXPECT_THROW(P("1,2"), InvalidInput);
}

TEST(IntPoly, Height) {
  EXPECT_EQ(height(P("[1,-5,3]")), 5);
  EXPECT_EQ(height(P("[0,1]")), 1);
  EXPECT_EQ(height(P("[-1,-1,1]")), 1);
  EXPECT_THROW(height(IntPolynomial()), InvalidInput);
}

TEST(IntPoly, MahlerExamples) {
  RealEnclosure m = mahler_measure(P("[-3,2]"), 64);
  EXPECT_TRUE(m.contains(bf(3.0)));
  m = mahler_measure(P("[-1,-1,1]"), 64);
  BigFloat phi(128);
  mpfr_sqrt_ui(phi.get(), 5, MPFR_RNDN);
  mpfr_add_ui(phi.get(), phi.get(), 1, MPFR_RNDN);
  mpfr_div_ui(phi.get(), phi.get(), 2, MPFR_RNDN);
  EXPECT_TRUE(m.low <= bf(1.6180339887498949) && bf(1.6180339887498947) <= m.high);
  EXPECT_LT(m.width().to_double(), 1e-18);
  m = mahler_measure(P("[1,0,1]"), 64);
  EXPECT_TRUE(m.contains(bf(1.0)));
  m = mahler_measure(P("[7]"), 64);
  EXPECT_TRUE(m.contains(bf(7.0)));
  EXPECT_THROW(mahler_measure(IntPolynomial(), 64), InvalidInput);
}

TEST(IntPoly, ContentPrimitive) {
  auto a = content_primitive(P("[-6,0,6]"));
  EXPECT_EQ(a.content, 6);
  EXPECT_EQ(a.sign, 1);
  EXPECT_EQ(a.primitive, P("[-1,0,1]"));
  auto b = content_primitive(P("[-1,0,1]"));
  EXPECT_EQ(b.content, 1);
  EXPECT_EQ(b.primitive, P("[-1,0,1]"));
  auto c = content_primitive(P("[2,-4]"));
  EXPECT_EQ(c.content, 2);
  EXPECT_EQ(c.sign, -1);
  EXPECT_EQ(c.primitive, P("[-1,2]"));
}

TEST(IntPoly, Reciprocal) {
  EXPECT_EQ(reciprocal(P("[2,3,1]")), P("[1,3,2]"));
  EXPECT_EQ(reciprocal(P("[1,0,1]")), P("[1,0,1]"));
  EXPECT_EQ(reciprocal(P("[-1,-1,1]")), P("[1,-1,-1]"));
  EXPECT_THROW(reciprocal(P("[0,1,1]")), InvalidInput);
}

TEST(IntPoly, Resultant) {
  EXPECT_EQ(resultant(P("[-2,1]"), P("[-3,1]")), -1);
  EXPECT_EQ(resultant(P("[1,0,1]"), P("[-1,1]")), 2);
  EXPECT_EQ(resultant(P("[-2,0,1]"), P("[-2,0,1]")), 0);
}

TEST(IntPoly, Squarefree) {
  EXPECT_TRUE(is_squarefree(P("[-1,0,1]")));
  EXPECT_FALSE(is_squarefree(P("[0,0,1]")));
  EXPECT_FALSE(is_squarefree(P("[1,-2,1]")));
  EXPECT_THROW(is_squarefree(P("[3]")), InvalidInput);
}

TEST(IntPoly, ResultantAgainstRootProductFormula) {
  // Res(f, g) = lc(f)^deg g * prod g(r) over roots of f; with f = prod (X - r_i) linear factors.
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> r(-6, 6);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + t % 3;
    IntPolynomial f{1};
    std::vector<long> roots;
    for (int i = 0; i < n; ++i) {
      roots.push_back(r(rng));
      f = f * IntPolynomial{-roots.back(), 1};
    }
    IntPolynomial g = random_poly(rng, 3, 5);
    Integer expect = 1;
    for (long x : roots) expect *= g.evaluate(Integer(x));
    EXPECT_EQ(resultant(f, g), expect);
  }
}

TEST(IntPoly, ResultantSymmetry) {
  std::mt19937 rng(11);
  for (int t = 0; t < 300; ++t) {
    IntPolynomial f = random_poly(rng, 5, 9), g = random_poly(rng, 5, 9);
    int s = (f.degree() * g.degree()) % 2 == 0 ? 1 : -1;
    EXPECT_EQ(resultant(f, g), s * resultant(g, f));
  }
}

TEST(IntPoly, MahlerInequalitiesAndMultiplicativity) {
  std::mt19937 rng(3);
  for (int t = 0; t < 1500; ++t) {
    IntPolynomial f = random_poly(rng, 6, 20);
    int n = f.degree();
    RealEnclosure m = mahler_measure(f, 40);
    double H = height(f).get_d();
    EXPECT_LE(H * std::pow(2.0, -n), m.high.to_double() * (1 + 1e-12));
    EXPECT_LE(m.low.to_double(), H * std::sqrt(n + 1.0) * (1 + 1e-12));
    if (f[0] != 0) {
      RealEnclosure r = mahler_measure(reciprocal(f), 40);
      EXPECT_TRUE(r.overlaps(m));
    }
  }
  for (int t = 0; t < 300; ++t) {
    IntPolynomial g = random_poly(rng, 3, 10), h = random_poly(rng, 3, 10);
    RealEnclosure mg = mahler_measure(g, 60), mh = mahler_measure(h, 60), mgh = mahler_measure(g * h, 60);
    BigFloat lo(128), hi(128);
    mpfr_mul(lo.get(), mg.low.get(), mh.low.get(), MPFR_RNDD);
    mpfr_mul(hi.get(), mg.high.get(), mh.high.get(), MPFR_RNDU);
    EXPECT_TRUE(mgh.low <= hi && lo <= mgh.high);
  }
}

TEST(IntPoly, ReciprocalInvolution) {
  std::mt19937 rng(5);
  for (int t = 0; t < 500; ++t) {
    IntPolynomial f = random_poly(rng, 6, 30);
    if (f[0] == 0) continue;
    EXPECT_EQ(reciprocal(reciprocal(f)), f);
  }
}
