#include "polydep/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "polydep/error.hpp"
#include "polydep/fastball.hpp"

namespace polydep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr mpfr_prec_t kMaxLevelZeroPrecision = 1L << 16;
constexpr int kMaxLevels = 40;

// ---------------------------------------------------------------------------
// Double-precision Aberth iteration.

using cd = std::complex<double>;

void horner(const double* a, int n, cd z, cd& p, cd& dp) {
  p = a[n];
  dp = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
}

double cauchy_bound(const double* a, int n) {
  // Fujiwara's bound on the moduli of the roots.
  double lead = std::fabs(a[n]);
  double r = 0.0;
  for (int k = 1; k <= n; ++k) {
    double c = std::fabs(a[n - k]) / lead;
    if (k == n) c /= 2.0;
    if (c > 0.0) r = std::max(r, std::pow(c, 1.0 / k));
  }
  return r > 0.0 ? 2.0 * r : 1.0;
}

bool aberth_double(const double* a, int n, std::vector<cd>& z) {
  double bound = cauchy_bound(a, n);
  z.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * kPi * k / n + 0.7;
    z[static_cast<std::size_t>(k)] = std::polar(bound * 0.5, t);
  }
  std::vector<double> last(static_cast<std::size_t>(n), HUGE_VAL);
  std::vector<char> frozen(static_cast<std::size_t>(n), 0);
  for (int iter = 0; iter < 400; ++iter) {
    bool done = true;
    for (int j = 0; j < n; ++j) {
      if (frozen[static_cast<std::size_t>(j)]) continue;
      cd zj = z[static_cast<std::size_t>(j)];
      cd p, dp;
      horner(a, n, zj, p, dp);
      if (p == 0.0) {
        frozen[static_cast<std::size_t>(j)] = 1;
        continue;
      }
      cd ratio = p / dp;
      cd s = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i != j) s += 1.0 / (zj - z[static_cast<std::size_t>(i)]);
      }
      cd corr = ratio / (1.0 - ratio * s);
      if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) return false;
      z[static_cast<std::size_t>(j)] = zj - corr;
      double c = std::sqrt(std::norm(corr)), scale = std::max(1e-300, std::sqrt(std::norm(zj)));
      // Converged, or stalled at rounding level.
      if (c <= 1e-15 * scale || (c <= 1e-11 * scale && c >= 0.5 * last[static_cast<std::size_t>(j)])) {
        frozen[static_cast<std::size_t>(j)] = 1;
      } else {
        done = false;
      }
      last[static_cast<std::size_t>(j)] = c;
    }
    if (done) return true;
  }
  return true;
}

DComplexBall eval_ball(const double* a, int n, DComplexBall z) {
  DComplexBall acc = DComplexBall::exact(a[n], 0.0);
  for (int i = n - 1; i >= 0; --i) acc = acc * z + DComplexBall::exact(a[i], 0.0);
  return acc;
}

// Pairs approximate roots into exact conjugate pairs and snaps the rest to the
// real axis. Returns false if the approximations are not conjugation-closed.
template <class C, class IsSmall, class Dist>
bool symmetrize(std::vector<C>& z, IsSmall is_small_imag, Dist dist) {
  std::size_t n = z.size();
  std::vector<int> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_small_imag(z[i])) {
      used[i] = 1;
      z[i] = C(z[i].real(), 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i] || z[i].imag() < 0) continue;
    std::size_t best = n;
    double bd = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k] || k == i || z[k].imag() >= 0) continue;
      double d = dist(z[k], std::conj(z[i]));
      if (best == n || d < bd) {
        best = k;
        bd = d;
      }
    }
    if (best == n) return false;
    used[i] = used[best] = 1;
    z[best] = std::conj(z[i]);
  }
  return std::all_of(used.begin(), used.end(), [](int u) { return u == 1; });
}

}  // namespace

bool fast_isolate(const double* a, int n, std::vector<FastRoot>& out) {
  out.clear();
  if (n < 1 || a[n] == 0.0) return false;
  if (n == 1) {
    DBall q = DBall::exact(-a[0]) / DBall::exact(a[1]);
    out.push_back({q.mid, 0.0, q.rad > 0 ? DBall::up(2.0 * q.rad) : 0.0});
    return std::isfinite(out[0].radius);
  }
  std::vector<cd> z;
  if (!aberth_double(a, n, z)) return false;
  auto small = [](const cd& w) { return std::fabs(w.imag()) <= 1e-12 * std::max(1.0, std::sqrt(std::norm(w))); };
  auto dist = [](const cd& u, const cd& v) { return std::sqrt(std::norm(u - v)); };
  if (!symmetrize(z, small, dist)) return false;
  out.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    DComplexBall zj = DComplexBall::exact(z[static_cast<std::size_t>(j)].real(), z[static_cast<std::size_t>(j)].imag());
    DComplexBall den = DComplexBall::exact(a[n], 0.0);
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      den = den * (zj - DComplexBall::exact(z[static_cast<std::size_t>(i)].real(), z[static_cast<std::size_t>(i)].imag()));
    }
    if (den.contains_zero()) return false;
    DComplexBall w = eval_ball(a, n, zj) / den;
    double rho = DBall::up(n * w.abs_upper());
    if (!std::isfinite(rho)) return false;
    out[static_cast<std::size_t>(j)] = {zj.re.mid, zj.im.mid, DBall::up(2.0 * rho)};
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const FastRoot& u = out[static_cast<std::size_t>(j)];
      const FastRoot& v = out[static_cast<std::size_t>(k)];
      double dx = u.re - v.re, dy = u.im - v.im;
      double d = std::sqrt(dx * dx + dy * dy) * (1.0 - 0x1p-48);
      if (!(d > DBall::up(u.radius + v.radius))) return false;
    }
  }
  // Conjugate disks of a conjugate pair must carry the same radius.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      FastRoot& u = out[static_cast<std::size_t>(j)];
      FastRoot& v = out[static_cast<std::size_t>(k)];
      if (j != k && u.im != 0.0 && u.re == v.re && u.im == -v.im) {
        u.radius = v.radius = std::max(u.radius, v.radius);
      }
    }
  }
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// Multiprecision complex arithmetic (round to nearest, non-rigorous); used only
// to produce approximations that are certified separately.

struct MC {
  BigFloat re, im;
  explicit MC(mpfr_prec_t p) : re(p), im(p) {}
  MC(const BigFloat& r, const BigFloat& i, mpfr_prec_t p) : re(p), im(p) {
    mpfr_set(re.get(), r.get(), MPFR_RNDN);
    mpfr_set(im.get(), i.get(), MPFR_RNDN);
  }
};

void mc_mul(MC& out, const MC& a, const MC& b, mpfr_prec_t p) {
  BigFloat t1(p), t2(p), t3(p), t4(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(out.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t3.get(), t4.get(), MPFR_RNDN);
}

void mc_div(MC& out, const MC& a, const MC& b, mpfr_prec_t p) {
  BigFloat d(p), t1(p), t2(p), nr(p), ni(p);
  mpfr_sqr(d.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t1.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), d.get(), t1.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(nr.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(ni.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), nr.get(), d.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), ni.get(), d.get(), MPFR_RNDN);
}

void mc_horner(const IntPolynomial& g, const MC& z, MC& p, MC& dp, mpfr_prec_t prec) {
  int n = g.degree();
  mpfr_set_z(p.re.get(), g[static_cast<std::size_t>(n)].get_mpz_t(), MPFR_RNDN);
  mpfr_set_zero(p.im.get(), 1);
  mpfr_set_zero(dp.re.get(), 1);
  mpfr_set_zero(dp.im.get(), 1);
  MC t(prec);
  for (int i = n - 1; i >= 0; --i) {
    mc_mul(t, dp, z, prec);
    mpfr_add(dp.re.get(), t.re.get(), p.re.get(), MPFR_RNDN);
    mpfr_add(dp.im.get(), t.im.get(), p.im.get(), MPFR_RNDN);
    mc_mul(t, p, z, prec);
    mpfr_add_z(p.re.get(), t.re.get(), g[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
    mpfr_set(p.im.get(), t.im.get(), MPFR_RNDN);
  }
}

double mc_abs_d(const MC& z) { return std::hypot(z.re.to_double(), z.im.to_double()); }

ComplexBall ball_eval(const IntPolynomial& g, const ComplexBall& z) {
  mpfr_prec_t prec = z.precision();
  int n = g.degree();
  ComplexBall acc(Ball(g[static_cast<std::size_t>(n)], prec), Ball(prec));
  for (int i = n - 1; i >= 0; --i) {
    acc = acc * z;
    acc.re = acc.re + Ball(g[static_cast<std::size_t>(i)], prec);
  }
  return acc;
}

ComplexBall point_ball(const BigFloat& re, const BigFloat& im, mpfr_prec_t prec) {
  BigFloat zero(Ball::kRadiusPrecision);
  return ComplexBall(Ball(re, zero, prec), Ball(im, zero, prec));
}

// Enclosures of all roots of one squarefree factor, refined level by level.
struct Disk {
  BigFloat re, im, rad;
};

// |x - y| rounded in the requested direction.
void abs_diff(mpfr_ptr out, mpfr_srcptr x, mpfr_srcptr y, bool up) {
  if (mpfr_cmp(x, y) >= 0) {
    mpfr_sub(out, x, y, up ? MPFR_RNDU : MPFR_RNDD);
  } else {
    mpfr_sub(out, y, x, up ? MPFR_RNDU : MPFR_RNDD);
  }
}

bool disks_disjoint(const Disk& a, const Disk& b) {
  mpfr_prec_t p = std::max(a.re.precision(), b.re.precision()) + 8;
  BigFloat dx(p), dy(p), d(p), s(Ball::kRadiusPrecision);
  abs_diff(dx.get(), a.re.get(), b.re.get(), false);
  abs_diff(dy.get(), a.im.get(), b.im.get(), false);
  mpfr_hypot(d.get(), dx.get(), dy.get(), MPFR_RNDD);
  mpfr_add(s.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  return mpfr_cmp(d.get(), s.get()) > 0;
}

bool disk_contains(const Disk& outer, const Disk& inner) {
  if (mpfr_inf_p(outer.rad.get())) return true;
  mpfr_prec_t p = std::max(outer.re.precision(), inner.re.precision()) + 8;
  BigFloat dx(p), dy(p), d(p);
  abs_diff(dx.get(), outer.re.get(), inner.re.get(), true);
  abs_diff(dy.get(), outer.im.get(), inner.im.get(), true);
  mpfr_hypot(d.get(), dx.get(), dy.get(), MPFR_RNDU);
  mpfr_add(d.get(), d.get(), inner.rad.get(), MPFR_RNDU);
  return mpfr_cmp(d.get(), outer.rad.get()) <= 0;
}

class FactorRoots {
 public:
  FactorRoots(IntPolynomial g, int multiplicity) : g_(std::move(g)), mult_(multiplicity) {
    init_level_zero();
  }

  const std::vector<Disk>& disks() const { return disks_; }
  const std::vector<int>& conj() const { return conj_; }
  int multiplicity() const { return mult_; }
  const IntPolynomial& poly() const { return g_; }
  // Level-zero centres define the deterministic output order.
  const std::vector<std::pair<double, double>>& order_keys() const { return keys_; }

  void advance();

 private:
  void init_level_zero();
  bool certify_approximations(std::vector<MC>& z, mpfr_prec_t prec);
  void set_conjugates();

  IntPolynomial g_;
  int mult_;
  mpfr_prec_t prec_ = 53;
  std::vector<Disk> disks_;
  std::vector<int> conj_;
  std::vector<std::pair<double, double>> keys_;
};

void FactorRoots::set_conjugates() {
  std::size_t n = disks_.size();
  conj_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (disks_[i].im.is_zero()) {
      conj_[i] = static_cast<int>(i);
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i && mpfr_equal_p(disks_[i].re.get(), disks_[k].re.get()) &&
          mpfr_cmpabs(disks_[i].im.get(), disks_[k].im.get()) == 0 &&
          disks_[i].im.sign() == -disks_[k].im.sign()) {
        conj_[i] = static_cast<int>(k);
      }
    }
  }
}

bool FactorRoots::certify_approximations(std::vector<MC>& z, mpfr_prec_t prec) {
  int n = g_.degree();
  std::vector<Disk> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ComplexBall zj = point_ball(z[static_cast<std::size_t>(j)].re, z[static_cast<std::size_t>(j)].im, prec);
    ComplexBall den(Ball(g_.leading(), prec), Ball(prec));
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      den = den * (zj - point_ball(z[static_cast<std::size_t>(i)].re, z[static_cast<std::size_t>(i)].im, prec));
    }
    if (den.contains_zero()) return false;
    ComplexBall w = ball_eval(g_, zj) / den;
    Disk d{BigFloat(prec), BigFloat(prec), BigFloat(Ball::kRadiusPrecision)};
    mpfr_set(d.re.get(), z[static_cast<std::size_t>(j)].re.get(), MPFR_RNDN);
    mpfr_set(d.im.get(), z[static_cast<std::size_t>(j)].im.get(), MPFR_RNDN);
    BigFloat up = w.abs_upper();
    mpfr_mul_ui(d.rad.get(), up.get(), static_cast<unsigned long>(2 * n), MPFR_RNDU);
    out.push_back(std::move(d));
  }
  for (std::size_t j = 0; j < out.size(); ++j) {
    for (std::size_t k = j + 1; k < out.size(); ++k) {
      if (!disks_disjoint(out[j], out[k])) return false;
    }
  }
  disks_ = std::move(out);
  prec_ = prec;
  return true;
}

void FactorRoots::init_level_zero() {
  int n = g_.degree();
  if (n < 1) throw InvalidInput("root isolation of a constant");
  if (n == 1) {
    // Rational root: rounding error is the only uncertainty.
    Rational r(-g_[0], g_[1]);
    r.canonicalize();
    Disk d{BigFloat(64), BigFloat(64), BigFloat(Ball::kRadiusPrecision)};
    int t = mpfr_set_q(d.re.get(), r.get_mpq_t(), MPFR_RNDN);
    if (t != 0) mpfr_set_ui_2exp(d.rad.get(), 1, mpfr_get_exp(d.re.get()) - 64 + 1, MPFR_RNDU);
    disks_.push_back(std::move(d));
    prec_ = 64;
    set_conjugates();
    keys_.emplace_back(r.get_d(), 0.0);
    return;
  }
  bool fits = true;
  std::vector<double> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const Integer& c = g_[static_cast<std::size_t>(i)];
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > 52) fits = false;
    a[static_cast<std::size_t>(i)] = c.get_d();
  }
  std::vector<FastRoot> fr;
  if (fits && fast_isolate(a.data(), n, fr)) {
    for (const auto& r : fr) {
      Disk d{BigFloat(r.re, 53), BigFloat(r.im, 53), BigFloat(r.radius, Ball::kRadiusPrecision)};
      disks_.push_back(std::move(d));
    }
    prec_ = 53;
  } else {
    // Multiprecision Aberth with doubling precision until certification.
    std::vector<cd> seed;
    bool have_seed = false;
    if (std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); })) {
      have_seed = aberth_double(a.data(), n, seed);
    }
    bool ok = false;
    for (mpfr_prec_t prec = 128; prec <= kMaxLevelZeroPrecision && !ok; prec *= 2) {
      std::vector<MC> z;
      z.reserve(static_cast<std::size_t>(n));
      double bound = std::isfinite(cauchy_bound(a.data(), n)) ? cauchy_bound(a.data(), n) : 1e300;
      for (int k = 0; k < n; ++k) {
        MC w(prec);
        cd s = have_seed && std::isfinite(std::abs(seed[static_cast<std::size_t>(k)]))
                   ? seed[static_cast<std::size_t>(k)]
                   : std::polar(bound * 0.5, 2.0 * kPi * k / n + 0.7);
        // Perturb seeds slightly so clustered seeds separate.
        s += std::polar(1e-8 * std::max(1.0, std::abs(s)), 1.3 * k + 0.2);
        mpfr_set_d(w.re.get(), s.real(), MPFR_RNDN);
        mpfr_set_d(w.im.get(), s.imag(), MPFR_RNDN);
        z.push_back(std::move(w));
      }
      MC p(prec), dp(prec), ratio(prec), sum(prec), t(prec), one(prec);
      mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
      for (int iter = 0; iter < 2000; ++iter) {
        bool done = true;
        for (int j = 0; j < n; ++j) {
          MC& zj = z[static_cast<std::size_t>(j)];
          mc_horner(g_, zj, p, dp, prec);
          if (p.re.is_zero() && p.im.is_zero()) continue;
          mc_div(ratio, p, dp, prec);
          mpfr_set_zero(sum.re.get(), 1);
          mpfr_set_zero(sum.im.get(), 1);
          for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            MC diff(prec);
            mpfr_sub(diff.re.get(), zj.re.get(), z[static_cast<std::size_t>(i)].re.get(), MPFR_RNDN);
            mpfr_sub(diff.im.get(), zj.im.get(), z[static_cast<std::size_t>(i)].im.get(), MPFR_RNDN);
            mc_div(t, one, diff, prec);
            mpfr_add(sum.re.get(), sum.re.get(), t.re.get(), MPFR_RNDN);
            mpfr_add(sum.im.get(), sum.im.get(), t.im.get(), MPFR_RNDN);
          }
          mc_mul(t, ratio, sum, prec);
          mpfr_ui_sub(t.re.get(), 1, t.re.get(), MPFR_RNDN);
          mpfr_neg(t.im.get(), t.im.get(), MPFR_RNDN);
          MC corr(prec);
          mc_div(corr, ratio, t, prec);
          if (!mpfr_number_p(corr.re.get()) || !mpfr_number_p(corr.im.get())) break;
          mpfr_sub(zj.re.get(), zj.re.get(), corr.re.get(), MPFR_RNDN);
          mpfr_sub(zj.im.get(), zj.im.get(), corr.im.get(), MPFR_RNDN);
          BigFloat ca(prec), za(prec);
          mpfr_hypot(ca.get(), corr.re.get(), corr.im.get(), MPFR_RNDN);
          mpfr_hypot(za.get(), zj.re.get(), zj.im.get(), MPFR_RNDN);
          mpfr_mul_2si(za.get(), za.get(), -(prec - 8), MPFR_RNDN);
          if (mpfr_cmp(ca.get(), za.get()) > 0 && !mpfr_zero_p(ca.get())) done = false;
        }
        if (done) break;
      }
      // Symmetrize using a precision-scaled tolerance.
      std::size_t nn = z.size();
      std::vector<int> used(nn, 0);
      bool sym_ok = true;
      for (std::size_t i = 0; i < nn; ++i) {
        BigFloat ai(prec), az(prec);
        mpfr_abs(ai.get(), z[i].im.get(), MPFR_RNDN);
        mpfr_hypot(az.get(), z[i].re.get(), z[i].im.get(), MPFR_RNDN);
        if (mpfr_cmp_ui(az.get(), 1) < 0) mpfr_set_ui(az.get(), 1, MPFR_RNDN);
        mpfr_mul_2si(az.get(), az.get(), -(prec / 2), MPFR_RNDN);
        if (mpfr_cmp(ai.get(), az.get()) <= 0) {
          used[i] = 1;
          mpfr_set_zero(z[i].im.get(), 1);
        }
      }
      for (std::size_t i = 0; i < nn && sym_ok; ++i) {
        if (used[i] || z[i].im.sign() < 0) continue;
        std::size_t best = nn;
        BigFloat bd(prec);
        for (std::size_t k = 0; k < nn; ++k) {
          if (used[k] || k == i || z[k].im.sign() >= 0) continue;
          BigFloat dx(prec), dy(prec), d(prec);
          mpfr_sub(dx.get(), z[k].re.get(), z[i].re.get(), MPFR_RNDN);
          mpfr_add(dy.get(), z[k].im.get(), z[i].im.get(), MPFR_RNDN);
          mpfr_hypot(d.get(), dx.get(), dy.get(), MPFR_RNDN);
          if (best == nn || mpfr_cmp(d.get(), bd.get()) < 0) {
            best = k;
            bd = d;
          }
        }
        if (best == nn) {
          sym_ok = false;
          break;
        }
        used[i] = used[best] = 1;
        mpfr_set(z[best].re.get(), z[i].re.get(), MPFR_RNDN);
        mpfr_neg(z[best].im.get(), z[i].im.get(), MPFR_RNDN);
      }
      if (!sym_ok || !std::all_of(used.begin(), used.end(), [](int u) { return u == 1; })) continue;
      ok = certify_approximations(z, prec);
    }
    if (!ok) throw PrecisionError("root isolation failed to certify separation");
  }
  set_conjugates();
  // Conjugate disks share a radius.
  for (std::size_t i = 0; i < disks_.size(); ++i) {
    std::size_t k = static_cast<std::size_t>(conj_[i]);
    if (k != i && conj_[i] >= 0) {
      mpfr_max(disks_[i].rad.get(), disks_[i].rad.get(), disks_[k].rad.get(), MPFR_RNDU);
      mpfr_set(disks_[k].rad.get(), disks_[i].rad.get(), MPFR_RNDU);
    }
  }
  if (std::any_of(conj_.begin(), conj_.end(), [](int c) { return c < 0; })) {
    throw PrecisionError("root isolation produced an unpaired complex root");
  }
  for (const auto& d : disks_) keys_.emplace_back(d.re.to_double(), d.im.to_double());
}

void FactorRoots::advance() {
  mpfr_prec_t prec = prec_ * 2;
  int n = g_.degree();
  if (n == 1) {
    Rational r(-g_[0], g_[1]);
    r.canonicalize();
    Disk& d = disks_[0];
    if (d.rad.is_zero()) {
      prec_ = prec;
      return;
    }
    Disk nd{BigFloat(prec), BigFloat(prec), BigFloat(Ball::kRadiusPrecision)};
    int t = mpfr_set_q(nd.re.get(), r.get_mpq_t(), MPFR_RNDN);
    if (t != 0) mpfr_set_ui_2exp(nd.rad.get(), 1, mpfr_get_exp(nd.re.get()) - prec + 1, MPFR_RNDU);
    if (disk_contains(d, nd)) d = std::move(nd);
    prec_ = prec;
    return;
  }
  IntPolynomial dg = g_.derivative();
  std::vector<Disk> next = disks_;
  for (std::size_t j = 0; j < disks_.size(); ++j) {
    const Disk& old = disks_[j];
    if (old.im.sign() < 0) continue;  // filled from its conjugate below
    for (mpfr_prec_t p = prec; p <= 4 * prec; p *= 2) {
      MC z(old.re, old.im, p), val(p), der(p), step(p);
      bool real = old.im.is_zero();
      for (int it = 0; it < 64; ++it) {
        mc_horner(g_, z, val, der, p);
        if (val.re.is_zero() && val.im.is_zero()) break;
        mc_div(step, val, der, p);
        if (real) mpfr_set_zero(step.im.get(), 1);
        if (!mpfr_number_p(step.re.get()) || !mpfr_number_p(step.im.get())) break;
        mpfr_sub(z.re.get(), z.re.get(), step.re.get(), MPFR_RNDN);
        mpfr_sub(z.im.get(), z.im.get(), step.im.get(), MPFR_RNDN);
        double s = mc_abs_d(step), a = std::max(mc_abs_d(z), 1e-300);
        if (s == 0.0 || std::log2(s / a) < -static_cast<double>(p) + 4) break;
      }
      ComplexBall zb = point_ball(z.re, z.im, p);
      ComplexBall gv = ball_eval(g_, zb);
      ComplexBall dv = ball_eval(dg, zb);
      BigFloat dl = dv.abs_lower();
      if (dl.is_zero()) continue;
      BigFloat rho(Ball::kRadiusPrecision);
      BigFloat gu = gv.abs_upper();
      mpfr_div(rho.get(), gu.get(), dl.get(), MPFR_RNDU);
      mpfr_mul_ui(rho.get(), rho.get(), static_cast<unsigned long>(2 * n), MPFR_RNDU);
      Disk cand{BigFloat(p), BigFloat(p), rho};
      mpfr_set(cand.re.get(), z.re.get(), MPFR_RNDN);
      mpfr_set(cand.im.get(), z.im.get(), MPFR_RNDN);
      if (disk_contains(old, cand)) {
        next[j] = std::move(cand);
        break;
      }
    }
  }
  for (std::size_t j = 0; j < disks_.size(); ++j) {
    if (disks_[j].im.sign() < 0) {
      std::size_t k = static_cast<std::size_t>(conj_[j]);
      next[j].re = next[k].re;
      next[j].im = next[k].im;
      mpfr_neg(next[j].im.get(), next[j].im.get(), MPFR_RNDN);
      next[j].rad = next[k].rad;
    }
  }
  disks_ = std::move(next);
  prec_ = prec;
}

bool radius_le(const BigFloat& r, const BigFloat& target) { return mpfr_cmp(r.get(), target.get()) <= 0; }

struct Isolation {
  std::vector<FactorRoots> factors;
  // (factor index, root index) in output order.
  std::vector<std::pair<std::size_t, std::size_t>> order;
};

Isolation isolate_all(const IntPolynomial& f, const BigFloat& target) {
  if (f.degree() < 1) throw InvalidInput("isolate_roots: degree must be at least 1");
  if (mpfr_sgn(target.get()) <= 0) throw InvalidInput("isolate_roots: target radius must be positive");
  Isolation iso;
  for (auto& [g, m] : squarefree_decomposition(f)) iso.factors.emplace_back(g, m);
  for (int level = 0; level <= kMaxLevels; ++level) {
    std::vector<int> need(iso.factors.size(), 0);
    for (std::size_t a = 0; a < iso.factors.size(); ++a) {
      for (const auto& d : iso.factors[a].disks()) {
        if (!radius_le(d.rad, target)) need[a] = 1;
      }
    }
    for (std::size_t a = 0; a < iso.factors.size(); ++a) {
      for (std::size_t b = a + 1; b < iso.factors.size(); ++b) {
        for (const auto& da : iso.factors[a].disks()) {
          for (const auto& db : iso.factors[b].disks()) {
            if (!disks_disjoint(da, db)) need[a] = need[b] = 1;
          }
        }
      }
    }
    if (std::none_of(need.begin(), need.end(), [](int v) { return v != 0; })) break;
    if (level == kMaxLevels) throw PrecisionError("root refinement did not reach the target radius");
    for (std::size_t a = 0; a < iso.factors.size(); ++a) {
      if (need[a]) iso.factors[a].advance();
    }
  }
  // Real roots ascending; then complex pairs by upper member, upper first.
  std::vector<std::pair<std::size_t, std::size_t>> real, upper;
  for (std::size_t a = 0; a < iso.factors.size(); ++a) {
    const auto& fr = iso.factors[a];
    for (std::size_t i = 0; i < fr.disks().size(); ++i) {
      if (fr.disks()[i].im.is_zero()) real.emplace_back(a, i);
      else if (fr.disks()[i].im.sign() > 0) upper.emplace_back(a, i);
    }
  }
  auto key = [&](const std::pair<std::size_t, std::size_t>& x) {
    return iso.factors[x.first].order_keys()[x.second];
  };
  auto less = [&](const auto& x, const auto& y) {
    auto kx = key(x), ky = key(y);
    if (kx != ky) return kx < ky;
    return x < y;
  };
  std::sort(real.begin(), real.end(), less);
  std::sort(upper.begin(), upper.end(), less);
  iso.order = real;
  for (const auto& u : upper) {
    iso.order.push_back(u);
    iso.order.emplace_back(u.first, static_cast<std::size_t>(iso.factors[u.first].conj()[u.second]));
  }
  return iso;
}

RootEnclosure to_enclosure(const Disk& d, int mult) {
  RootEnclosure e{d.re, d.im, d.rad, mult};
  return e;
}

}  // namespace

ComplexBall RootEnclosure::ball(mpfr_prec_t prec) const {
  return ComplexBall::from_disk(re, im, radius, prec);
}

long RootEnclosure::radius_log2() const {
  if (radius.is_zero()) return -(1L << 30);
  return mpfr_get_exp(radius.get());
}

std::string RootEnclosure::to_string(int digits) const {
  std::string c = re.to_string(digits);
  if (!is_real()) {
    std::string i = im.to_string(digits);
    c += (i[0] == '-' ? "" : "+") + i + "i";
  }
  return c + " ± " + radius.to_string(3);
}

std::vector<RootEnclosure> isolate_roots(const IntPolynomial& f, const BigFloat& target_radius) {
  Isolation iso = isolate_all(f, target_radius);
  std::vector<RootEnclosure> out;
  for (const auto& [a, i] : iso.order) {
    out.push_back(to_enclosure(iso.factors[a].disks()[i], iso.factors[a].multiplicity()));
  }
  return out;
}

std::vector<RootEnclosure> isolate_roots(const IntPolynomial& f, long target_bits) {
  return isolate_roots(f, pow2(-target_bits));
}

RootProfile root_profile(const IntPolynomial& f, const BigFloat& target_radius) {
  if (f.degree() < 1) throw InvalidInput("root_profile: degree must be at least 1");
  RootProfile prof;
  prof.zero_multiplicity = zero_multiplicity(f);
  IntPolynomial g = strip_zero_roots(f);
  if (g.degree() < 1) return prof;
  prof.nonzero_roots = isolate_roots(g, target_radius);
  std::size_t n = prof.nonzero_roots.size();
  prof.conjugate.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (prof.nonzero_roots[i].is_real()) {
      prof.conjugate[i] = static_cast<int>(i);
    } else if (prof.nonzero_roots[i].im.sign() > 0) {
      prof.conjugate[i] = static_cast<int>(i + 1);
      prof.conjugate[i + 1] = static_cast<int>(i);
    }
  }
  return prof;
}

RootProfile root_profile(const IntPolynomial& f, long target_bits) {
  return root_profile(f, pow2(-target_bits));
}

RootEnclosure refine(const RootEnclosure& enclosure, const IntPolynomial& f,
                     const BigFloat& target_radius) {
  if (mpfr_sgn(target_radius.get()) <= 0) throw InvalidInput("refine: target radius must be positive");
  if (radius_le(enclosure.radius, target_radius)) return enclosure;
  if (f.degree() < 1) throw InvalidInput("refine: constant polynomial");
  Disk outer{enclosure.re, enclosure.im, enclosure.radius};
  // The enclosure must contain exactly one root of f; recomputing the
  // isolation and selecting the unique disk inside it keeps this exact.
  IntPolynomial g = strip_zero_roots(f);
  std::vector<RootEnclosure> all;
  if (g.degree() >= 1) all = isolate_roots(g, target_radius);
  if (zero_multiplicity(f) > 0) {
    RootEnclosure z{BigFloat(53), BigFloat(53), BigFloat(Ball::kRadiusPrecision),
                    zero_multiplicity(f)};
    all.push_back(z);
  }
  const RootEnclosure* found = nullptr;
  int count = 0;
  for (const auto& e : all) {
    Disk inner{e.re, e.im, e.radius};
    if (disk_contains(outer, inner)) {
      found = &e;
      ++count;
    } else if (!disks_disjoint(outer, inner)) {
      ++count;  // straddles the boundary: ambiguous
    }
  }
  if (count != 1 || found == nullptr) {
    throw InvalidInput("refine: enclosure is not consistent with the polynomial");
  }
  RootEnclosure out = *found;
  out.multiplicity = found->multiplicity;
  return out;
}

RootEnclosure refine(const RootEnclosure& enclosure, const IntPolynomial& f, long target_bits) {
  return refine(enclosure, f, pow2(-target_bits));
}

}  // namespace polydep
