#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "polydep/error.hpp"
#include "polydep/volume.hpp"

using namespace polydep;

namespace {

// Hit rate of |x_1 + ... + x_{n-1}| <= 1 for uniform points of [-1, 1]^(n-1).
double nu_monte_carlo(int n, int samples, std::mt19937_64& rng, double* se) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  long hits = 0;
  for (int s = 0; s < samples; ++s) {
    double sum = 0;
    for (int i = 0; i < n - 1; ++i) sum += u(rng);
    if (std::fabs(sum) <= 1) ++hits;
  }
  double p = static_cast<double>(hits) / samples;
  *se = std::sqrt(p * (1 - p) / samples);
  return p;
}

}  // namespace

TEST(Volume, DensityBaseCases) {
  PiecewisePolynomial d1 = uniform_sum_density(1);
  EXPECT_EQ(d1.lo(), -1);
  EXPECT_EQ(d1.hi(), 1);
  EXPECT_EQ(d1.evaluate(Rational(1, 3)), Rational(1, 2));
  EXPECT_EQ(d1.evaluate(2), 0);
  PiecewisePolynomial d2 = uniform_sum_density(2);
  EXPECT_EQ(d2.evaluate(0), Rational(1, 2));
  EXPECT_EQ(d2.evaluate(1), Rational(1, 4));
  EXPECT_EQ(d2.evaluate(2), 0);
  EXPECT_EQ(uniform_sum_density(3).evaluate(0), Rational(3, 8));
  EXPECT_THROW(uniform_sum_density(0), InvalidInput);
}

TEST(Volume, DensityProperties) {
  for (int m = 1; m <= 9; ++m) {
    PiecewisePolynomial d = uniform_sum_density(m);
    EXPECT_EQ(d.integrate(d.lo(), d.hi()), 1) << m;
    EXPECT_EQ(d.lo(), -m);
    EXPECT_EQ(d.hi(), m);
    if (m >= 2) EXPECT_TRUE(d.is_continuous()) << m;
    for (int j = 0; j <= 4 * m; ++j) {
      Rational x(j, 4);
      EXPECT_EQ(d.evaluate(x), d.evaluate(-x)) << m;
      EXPECT_GE(d.evaluate(x), 0);
    }
  }
}

TEST(Volume, DensityMatchesSimulation) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int m = 4, N = 200000;
  long in = 0;
  for (int s = 0; s < N; ++s) {
    double t = 0;
    for (int i = 0; i < m; ++i) t += u(rng);
    if (t >= 0.5 && t <= 2) ++in;
  }
  double p = static_cast<double>(in) / N;
  double exact = uniform_sum_density(m).integrate(Rational(1, 2), 2).get_d();
  EXPECT_NEAR(p, exact, 4 * std::sqrt(exact * (1 - exact) / N));
}

TEST(Volume, NuValues) {
  EXPECT_EQ(nu(2), 2);
  EXPECT_EQ(nu(3), 3);
  EXPECT_EQ(nu(4), Rational(16, 3));
  EXPECT_THROW(nu(1), InvalidInput);
}

TEST(Volume, NuBoundsAndMonotoneRatio) {
  Rational prev = 1;
  for (int n = 2; n <= 12; ++n) {
    Rational v = nu(n);
    Rational cube = 1;
    for (int i = 0; i < n - 1; ++i) cube *= 2;
    EXPECT_GT(v, 0);
    EXPECT_LE(v, cube);
    Rational r = v / cube;
    if (n > 2) EXPECT_LT(r, prev) << n;
    prev = r;
  }
}

TEST(Volume, NuMonteCarlo) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 8; ++n) {
    double se = 0;
    double p = nu_monte_carlo(n, 200000, rng, &se);
    Rational cube = 1;
    for (int i = 0; i < n - 1; ++i) cube *= 2;
    double exact = Rational(nu(n) / cube).get_d();
    EXPECT_LE(std::fabs(p - exact), 4 * std::max(se, 1e-4)) << n;
  }
}
