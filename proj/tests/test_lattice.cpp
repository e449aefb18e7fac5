#include <random>

#include <gtest/gtest.h>

#include "polydep/error.hpp"
#include "polydep/lattice.hpp"

using namespace polydep;

namespace {

Ball log_of(long x, mpfr_prec_t prec) { return Ball::log(Ball(Integer(x), prec)); }

std::vector<Ball> logs(std::initializer_list<long> xs, mpfr_prec_t prec = 256) {
  std::vector<Ball> v;
  for (long x : xs) v.push_back(log_of(x, prec));
  return v;
}

Integer det(const std::vector<std::vector<Integer>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    d += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
  }
  return d;
}

Integer norm2(const IntegerVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace

TEST(Lattice, ReduceExamples) {
  IntegerMatrix id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_EQ(lll_reduce(id).rows, id.rows);
  IntegerMatrix b{{{1, 0}, {10, 1}}};
  IntegerMatrix t;
  IntegerMatrix r = lll_reduce(b, Rational(99, 100), &t);
  for (const auto& row : r.rows) EXPECT_LE(norm2(row), 2);
  Integer d = det(t.rows);
  EXPECT_TRUE(d == 1 || d == -1);
  IntegerMatrix o{{{2, 0}, {0, 3}}};
  EXPECT_EQ(lll_reduce(o).rows, o.rows);
  IntegerMatrix dep{{{1, 2}, {2, 4}}};
  EXPECT_THROW(lll_reduce(dep), InvalidInput);
}

TEST(Lattice, RandomBasesKeepLatticeAndMeetBound) {
  std::mt19937 rng(6);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int t = 0; t < 200; ++t) {
    IntegerMatrix b;
    for (int i = 0; i < 3; ++i) b.rows.push_back({c(rng), c(rng), c(rng)});
    if (det(b.rows) == 0) continue;
    IntegerMatrix tr;
    IntegerMatrix r = lll_reduce(b, Rational(99, 100), &tr);
    Integer d = det(tr.rows);
    ASSERT_TRUE(d == 1 || d == -1);
    // r = tr * b
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Integer s = 0;
        for (int k = 0; k < 3; ++k) s += tr.rows[i][k] * b.rows[k][j];
        ASSERT_EQ(s, r.rows[i][j]);
      }
    }
    // Brute-force shortest vector over small combinations of the reduced basis.
    Integer best = -1;
    for (long x = -6; x <= 6; ++x) {
      for (long y = -6; y <= 6; ++y) {
        for (long z = -6; z <= 6; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          IntegerVector v(3);
          for (int j = 0; j < 3; ++j) v[j] = x * r.rows[0][j] + y * r.rows[1][j] + z * r.rows[2][j];
          Integer n = norm2(v);
          if (best < 0 || n < best) best = n;
        }
      }
    }
    // |b1|^2 <= 2^(r-1) lambda_1^2
    EXPECT_LE(norm2(r.rows[0]), 4 * best);
  }
}

TEST(Lattice, FindRelationExamples) {
  auto a = find_relation(logs({2, 4, 8}), 10, 200);
  ASSERT_TRUE(a.has_value());
  IntegerVector k = a->coefficients;
  if (k[0] < 0)
    for (auto& x : k) x = -x;
  EXPECT_EQ(k, (IntegerVector{1, 1, -1}));
  EXPECT_FALSE(find_relation(logs({2, 3}), 10, 200).has_value());
  auto c = find_relation(logs({2, 3, 12}), 10, 200);
  ASSERT_TRUE(c.has_value());
  k = c->coefficients;
  if (k[0] < 0)
    for (auto& x : k) x = -x;
  EXPECT_EQ(k, (IntegerVector{2, 1, -1}));
  EXPECT_THROW(find_relation(logs({2, 3}, 40), 10, 200), PrecisionError);
}

TEST(Lattice, PlantedRelations) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> e(-10, 10), p(0, 5);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  int recovered = 0, trials = 1000;
  for (int t = 0; t < trials; ++t) {
    // Values x, y, x^a y^b with random small primes.
    long x = primes[p(rng)], y = primes[p(rng)];
    if (x == y) y = x == 2 ? 3 : 2;
    int ea = e(rng), eb = e(rng);
    if (ea == 0 && eb == 0) ea = 1;
    Ball lx = log_of(x, 300), ly = log_of(y, 300);
    Ball lz = Ball(Integer(ea), 300) * lx + Ball(Integer(eb), 300) * ly;
    auto cand = find_relation({lx, ly, lz}, 10, 240);
    if (!cand) continue;
    const IntegerVector& k = cand->coefficients;
    // Certify exactly: k0*log x + k1*log y + k2*(ea log x + eb log y) = 0 iff both prime exponents vanish.
    Integer cx = k[0] + k[2] * ea, cy = k[1] + k[2] * eb;
    bool nonzero = k[0] != 0 || k[1] != 0 || k[2] != 0;
    bool bounded = abs(k[0]) <= 10 && abs(k[1]) <= 10 && abs(k[2]) <= 10;
    EXPECT_TRUE(bounded);
    if (cx == 0 && cy == 0 && nonzero) ++recovered;
  }
  EXPECT_GE(recovered, trials * 99 / 100);
}
