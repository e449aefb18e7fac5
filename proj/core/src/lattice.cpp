#include "polydep/lattice.hpp"

#include <algorithm>

#include "polydep/error.hpp"

namespace polydep {

namespace {

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(IntegerVector& a, const Integer& q, const IntegerVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

Integer round_div(const Integer& num, const Integer& den) {
  // Nearest integer to num/den for den > 0.
  Integer t = 2 * num + den, q;
  Integer d2 = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d2.get_mpz_t());
  return q;
}

}  // namespace

IntegerMatrix lll_reduce(const IntegerMatrix& basis, const Rational& delta, IntegerMatrix* transform) {
  if (!(delta > Rational(1, 4) && delta < 1)) throw InvalidInput("lll_reduce: delta must lie in (1/4, 1)");
  std::size_t n = basis.rows.size();
  std::vector<IntegerVector> b = basis.rows;
  for (const auto& r : b) {
    if (r.size() != basis.column_count()) throw InvalidInput("lll_reduce: ragged matrix");
  }
  std::vector<IntegerVector> H(n, IntegerVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) H[i][i] = 1;
  IntegerMatrix out;
  if (n == 0) {
    if (transform) transform->rows = H;
    return out;
  }
  const Integer& dp = delta.get_num();
  const Integer& dq = delta.get_den();
  // d[i + 1] holds d_i of the integral algorithm; d[0] = 1.
  std::vector<Integer> d(n + 1, 0);
  std::vector<IntegerVector> lam(n, IntegerVector(n, 0));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw InvalidInput("lll_reduce: rows are linearly dependent");
  auto redi = [&](std::size_t k, std::size_t l) {
    Integer twice = 2 * lam[k][l];
    if (abs(twice) > d[l + 1]) {
      Integer q = round_div(lam[k][l], d[l + 1]);
      axpy(b[k], q, b[l]);
      axpy(H[k], q, H[l]);
      lam[k][l] -= q * d[l + 1];
      for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };
  std::size_t kmax = 0;
  auto swapi = [&](std::size_t k) {
    std::swap(b[k], b[k - 1]);
    std::swap(H[k], H[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Integer l = lam[k][k - 1];
    Integer B = (d[k - 1] * d[k + 1] + l * l);
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d[k].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lam[i][k];
      Integer v = d[k + 1] * lam[i][k - 1] - l * t;
      mpz_divexact(lam[i][k].get_mpz_t(), v.get_mpz_t(), d[k].get_mpz_t());
      Integer w = B * t + l * lam[i][k];
      mpz_divexact(lam[i][k - 1].get_mpz_t(), w.get_mpz_t(), d[k + 1].get_mpz_t());
    }
    d[k] = B;
  };
  std::size_t k = 1;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        Integer u = dot(b[k], b[j]);
        for (std::size_t i = 0; i < j; ++i) {
          u = d[i + 1] * u - lam[k][i] * lam[j][i];
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i].get_mpz_t());
        }
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw InvalidInput("lll_reduce: rows are linearly dependent");
          d[k + 1] = u;
        }
      }
    }
    while (true) {
      redi(k, k - 1);
      Integer lhs = dq * d[k + 1] * d[k - 1];
      Integer rhs = dp * d[k] * d[k] - dq * lam[k][k - 1] * lam[k][k - 1];
      if (lhs < rhs) {
        swapi(k);
        if (k > 1) --k;
      } else {
        for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
        ++k;
        break;
      }
    }
  }
  out.rows = b;
  if (transform) transform->rows = H;
  return out;
}

namespace {

// round(2^s * x) for the midpoint of a ball.
Integer scaled_round(const Ball& x, long s) {
  BigFloat t(x.precision() + 8);
  mpfr_mul_2si(t.get(), x.mid().get(), s, MPFR_RNDN);
  Integer r;
  mpfr_get_z(r.get_mpz_t(), t.get(), MPFR_RNDN);
  return r;
}

}  // namespace

std::vector<RelationCandidate> find_relations(const std::vector<std::vector<Ball>>& forms,
                                              std::size_t bounded, const Integer& bound,
                                              long scale_bits) {
  if (forms.empty() || forms[0].empty()) throw InvalidInput("find_relations: no values");
  if (scale_bits <= 0) throw InvalidInput("find_relations: scale_bits must be positive");
  std::size_t m = forms[0].size();
  for (const auto& f : forms) {
    if (f.size() != m) throw InvalidInput("find_relations: forms of different lengths");
    for (const auto& v : f) {
      BigFloat w = v.enclosure().width();
      BigFloat lim = pow2(-scale_bits);
      if (!(w < lim)) {
        throw PrecisionError("find_relations: enclosure wider than 2^-" + std::to_string(scale_bits) +
                             "; refine the inputs");
      }
    }
  }
  IntegerMatrix basis;
  for (std::size_t i = 0; i < m; ++i) {
    IntegerVector row(m + forms.size(), 0);
    row[i] = 1;
    for (std::size_t r = 0; r < forms.size(); ++r) row[m + r] = scaled_round(forms[r][i], scale_bits);
    basis.rows.push_back(row);
  }
  IntegerMatrix red = lll_reduce(basis);
  mpfr_prec_t prec = forms[0][0].precision();
  BigFloat threshold = pow2(-(scale_bits / 2));
  std::vector<RelationCandidate> out;
  for (const auto& row : red.rows) {
    IntegerVector k(row.begin(), row.begin() + static_cast<long>(m));
    bool ok = std::any_of(k.begin(), k.begin() + static_cast<long>(bounded), [](const Integer& c) { return c != 0; });
    for (std::size_t i = 0; ok && i < bounded; ++i) ok = abs(k[i]) <= bound;
    if (!ok) continue;
    BigFloat worst(Ball::kRadiusPrecision);
    bool pass = true;
    for (std::size_t r = 0; r < forms.size() && pass; ++r) {
      Ball s(prec);
      for (std::size_t i = 0; i < m; ++i) {
        if (k[i] != 0) s = s + Ball(k[i], prec) * forms[r][i];
      }
      BigFloat up = s.abs_upper();
      if (!(up < threshold)) pass = false;
      if (up > worst) worst = up;
    }
    if (!pass) continue;
    auto first = std::find_if(k.begin(), k.end(), [](const Integer& c) { return c != 0; });
    if (first != k.end() && *first < 0) {
      for (auto& c : k) c = -c;
    }
    out.push_back(RelationCandidate{k, worst});
  }
  std::stable_sort(out.begin(), out.end(), [](const RelationCandidate& a, const RelationCandidate& b) {
    return dot(a.coefficients, a.coefficients) < dot(b.coefficients, b.coefficients);
  });
  return out;
}

std::optional<RelationCandidate> find_relation(const std::vector<Ball>& values, const Integer& bound,
                                               long scale_bits) {
  if (values.empty()) throw InvalidInput("find_relation: empty value list");
  auto all = find_relations({values}, values.size(), bound, scale_bits);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace polydep
