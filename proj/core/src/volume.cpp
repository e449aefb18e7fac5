#include "polydep/volume.hpp"

#include <algorithm>

#include "polydep/error.hpp"

namespace polydep {

namespace {

using RPoly = std::vector<Rational>;

Rational eval(const RPoly& p, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

RPoly antiderivative(const RPoly& p) {
  RPoly r(p.size() + 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i] / Rational(static_cast<long>(i + 1));
  return r;
}

// p(x + c)
RPoly shift(const RPoly& p, const Rational& c) {
  RPoly r(p.size(), Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) {
    // r = r * (x + c) + p[i]
    RPoly next(p.size(), Rational(0));
    for (std::size_t k = 0; k + 1 < p.size(); ++k) next[k + 1] += r[k];
    for (std::size_t k = 0; k < p.size(); ++k) next[k] += r[k] * c;
    next[0] += p[i];
    r = std::move(next);
  }
  return r;
}

RPoly add(RPoly a, const RPoly& b, const Rational& sb) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sb * b[i];
  return a;
}

// Continuous antiderivative F with F(lo) = 0, as pieces plus constants.
struct Primitive {
  const PiecewisePolynomial* f;
  std::vector<RPoly> pieces;
  Rational total;

  explicit Primitive(const PiecewisePolynomial& g) : f(&g) {
    Rational acc = 0;
    for (std::size_t j = 0; j < g.pieces.size(); ++j) {
      RPoly a = antiderivative(g.pieces[j]);
      a[0] += acc - eval(a, g.breakpoints[j]);
      acc = eval(a, g.breakpoints[j + 1]);
      pieces.push_back(std::move(a));
    }
    total = acc;
  }

  // F as a polynomial valid on an interval whose midpoint is x.
  RPoly at(const Rational& x) const {
    if (x <= f->lo()) return RPoly{Rational(0)};
    if (x >= f->hi()) return RPoly{total};
    auto it = std::upper_bound(f->breakpoints.begin(), f->breakpoints.end(), x);
    std::size_t j = static_cast<std::size_t>(it - f->breakpoints.begin()) - 1;
    return pieces[j];
  }
};

}  // namespace

Rational PiecewisePolynomial::evaluate(const Rational& x) const {
  if (x < lo() || x > hi()) return 0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  std::size_t j = static_cast<std::size_t>(it - breakpoints.begin());
  if (j > pieces.size()) j = pieces.size();
  return eval(pieces[j - 1], x);
}

Rational PiecewisePolynomial::integrate(const Rational& a, const Rational& b) const {
  if (b < a) return -integrate(b, a);
  Primitive p(*this);
  auto value = [&](const Rational& x) {
    if (x <= lo()) return Rational(0);
    if (x >= hi()) return p.total;
    return eval(p.at(x), x);
  };
  return value(b) - value(a);
}

bool PiecewisePolynomial::is_continuous() const {
  for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
    if (eval(pieces[j], breakpoints[j + 1]) != eval(pieces[j + 1], breakpoints[j + 1])) return false;
  }
  return true;
}

PiecewisePolynomial uniform_sum_density(int m) {
  if (m < 1) throw InvalidInput("uniform_sum_density: m must be positive");
  PiecewisePolynomial f;
  f.breakpoints = {Rational(-1), Rational(1)};
  f.pieces = {RPoly{Rational(1, 2)}};
  for (int step = 1; step < m; ++step) {
    // (f * u)(x) = (F(x + 1) - F(x - 1)) / 2
    Primitive big(f);
    std::vector<Rational> bps;
    for (const auto& b : f.breakpoints) {
      bps.push_back(b - 1);
      bps.push_back(b + 1);
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    PiecewisePolynomial g;
    g.breakpoints = bps;
    for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
      Rational mid = (bps[j] + bps[j + 1]) / 2;
      RPoly up = shift(big.at(mid + 1), Rational(1));
      RPoly down = shift(big.at(mid - 1), Rational(-1));
      RPoly piece = add(up, down, Rational(-1));
      for (auto& c : piece) c /= 2;
      while (piece.size() > 1 && piece.back() == 0) piece.pop_back();
      g.pieces.push_back(std::move(piece));
    }
    f = std::move(g);
  }
  return f;
}

Rational nu(int n) {
  if (n < 2) throw InvalidInput("nu: n must be at least 2");
  PiecewisePolynomial f = uniform_sum_density(n - 1);
  Rational scale = 1;
  for (int i = 1; i < n; ++i) scale *= 2;
  return scale * f.integrate(Rational(-1), Rational(1));
}

}  // namespace polydep
