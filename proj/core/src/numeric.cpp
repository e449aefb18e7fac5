#include "polydep/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

#include "polydep/error.hpp"

namespace polydep {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, value.get_mpz_t(), rnd);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, value.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

BigFloat pow2(long e, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

BigFloat RealEnclosure::width() const {
  BigFloat w(std::max(low.precision(), high.precision()));
  mpfr_sub(w.get(), high.get(), low.get(), MPFR_RNDU);
  return w;
}

BigFloat RealEnclosure::midpoint() const {
  BigFloat m(std::max(low.precision(), high.precision()) + 1);
  mpfr_add(m.get(), high.get(), low.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

namespace {

// Upper bound for the rounding error of a round-to-nearest result.
void ulp_bound(mpfr_ptr out, mpfr_srcptr x, mpfr_prec_t prec) {
  if (mpfr_zero_p(x) || !mpfr_number_p(x)) {
    mpfr_set_zero(out, 1);
    return;
  }
  mpfr_set_ui_2exp(out, 1, mpfr_get_exp(x) - prec, MPFR_RNDU);
}

void abs_up(mpfr_ptr out, mpfr_srcptr x) { mpfr_abs(out, x, MPFR_RNDU); }

}  // namespace

Ball::Ball(mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrecision) {}

Ball::Ball(const mpz_class& value, mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrecision) {
  int t = mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN);
  add_rounding_error(t);
}

Ball::Ball(const mpq_class& value, mpfr_prec_t prec) : mid_(prec), rad_(kRadiusPrecision) {
  int t = mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN);
  add_rounding_error(t);
}

Ball::Ball(const BigFloat& mid, const BigFloat& rad, mpfr_prec_t prec)
    : mid_(prec), rad_(kRadiusPrecision) {
  int t = mpfr_set(mid_.get(), mid.get(), MPFR_RNDN);
  mpfr_abs(rad_.get(), rad.get(), MPFR_RNDU);
  add_rounding_error(t);
}

void Ball::add_rounding_error(int ternary) {
  if (ternary == 0) return;
  BigFloat e(kRadiusPrecision);
  ulp_bound(e.get(), mid_.get(), mid_.precision());
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

void Ball::add_error(const BigFloat& err) {
  BigFloat e(kRadiusPrecision);
  abs_up(e.get(), err.get());
  mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
}

bool Ball::contains_zero() const {
  BigFloat a(mid_.precision());
  mpfr_abs(a.get(), mid_.get(), MPFR_RNDN);
  return mpfr_cmp(a.get(), rad_.get()) <= 0;
}

BigFloat Ball::abs_upper() const {
  BigFloat r(mid_.precision() + 2);
  mpfr_abs(r.get(), mid_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), rad_.get(), MPFR_RNDU);
  return r;
}

BigFloat Ball::abs_lower() const {
  BigFloat r(mid_.precision() + 2);
  mpfr_abs(r.get(), mid_.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

RealEnclosure Ball::enclosure() const {
  RealEnclosure e{BigFloat(mid_.precision() + 2), BigFloat(mid_.precision() + 2)};
  mpfr_sub(e.low.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(e.high.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return e;
}

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball operator-(const Ball& a) {
  Ball r(a.precision());
  mpfr_neg(r.mid_.get(), a.mid_.get(), MPFR_RNDN);
  mpfr_set(r.rad_.get(), a.rad_.get(), MPFR_RNDU);
  return r;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  BigFloat x(Ball::kRadiusPrecision), y(Ball::kRadiusPrecision);
  abs_up(x.get(), a.mid_.get());
  mpfr_mul(x.get(), x.get(), b.rad_.get(), MPFR_RNDU);
  abs_up(y.get(), b.mid_.get());
  mpfr_mul(y.get(), y.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(x.get(), x.get(), y.get(), MPFR_RNDU);
  mpfr_mul(y.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), x.get(), y.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw PrecisionError("division by a ball containing zero");
  mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Ball r(prec);
  int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  BigFloat num(Ball::kRadiusPrecision), den(Ball::kRadiusPrecision);
  abs_up(num.get(), r.mid_.get());
  BigFloat e(Ball::kRadiusPrecision);
  ulp_bound(e.get(), r.mid_.get(), prec);
  mpfr_add(num.get(), num.get(), e.get(), MPFR_RNDU);
  mpfr_mul(num.get(), num.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_abs(den.get(), b.mid_.get(), MPFR_RNDD);
  mpfr_sub(den.get(), den.get(), b.rad_.get(), MPFR_RNDD);
  mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  r.add_rounding_error(t);
  return r;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball r(prec);
  mpfr_const_pi(r.mid_.get(), MPFR_RNDN);
  r.add_rounding_error(1);
  return r;
}

Ball from_endpoints(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec) {
  Ball r(prec);
  BigFloat s(prec + 2);
  mpfr_add(s.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(s.get(), s.get(), 1, MPFR_RNDN);
  mpfr_set(r.mid_.get(), s.get(), MPFR_RNDN);
  BigFloat d1(Ball::kRadiusPrecision), d2(Ball::kRadiusPrecision);
  mpfr_sub(d1.get(), hi.get(), r.mid_.get(), MPFR_RNDU);
  mpfr_sub(d2.get(), r.mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(r.rad_.get(), d1.get(), d2.get(), MPFR_RNDU);
  if (mpfr_sgn(r.rad_.get()) < 0) mpfr_set_zero(r.rad_.get(), 1);
  return r;
}

Ball Ball::log(const Ball& x) {
  mpfr_prec_t prec = x.precision();
  BigFloat lo(prec + 2), hi(prec + 2);
  mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDU);
  if (mpfr_sgn(lo.get()) <= 0) throw PrecisionError("logarithm of a ball touching zero");
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return from_endpoints(lo, hi, prec);
}

ComplexBall ComplexBall::from_disk(const BigFloat& cre, const BigFloat& cim,
                                   const BigFloat& radius, mpfr_prec_t prec) {
  return ComplexBall(Ball(cre, radius, prec), Ball(cim, radius, prec));
}

BigFloat ComplexBall::abs_upper() const {
  BigFloat a = re.abs_upper(), b = im.abs_upper();
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

BigFloat ComplexBall::abs_lower() const {
  BigFloat a = re.abs_lower(), b = im.abs_lower();
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDD);
  return r;
}

BigFloat ComplexBall::disk_radius() const {
  BigFloat r(Ball::kRadiusPrecision);
  mpfr_hypot(r.get(), re.rad().get(), im.rad().get(), MPFR_RNDU);
  return r;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re + b.re, a.im + b.im);
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re - b.re, a.im - b.im);
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  Ball den = b.re * b.re + b.im * b.im;
  Ball nre = a.re * b.re + a.im * b.im;
  Ball nim = a.im * b.re - a.re * b.im;
  return ComplexBall(nre / den, nim / den);
}

ComplexBall pow(const ComplexBall& z, unsigned long k) {
  mpfr_prec_t prec = z.precision();
  ComplexBall result(Ball(mpz_class(1), prec), Ball(mpz_class(0), prec));
  ComplexBall base = z;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

ComplexBall scale(const ComplexBall& z, const mpz_class& c) {
  Ball s(c, z.precision());
  return ComplexBall(z.re * s, z.im * s);
}

Ball arg(const ComplexBall& z) {
  mpfr_prec_t prec = z.precision();
  BigFloat lowabs = z.abs_lower();
  if (mpfr_zero_p(lowabs.get())) throw PrecisionError("argument of a ball containing zero");
  Ball r(prec);
  BigFloat theta(prec);
  mpfr_atan2(theta.get(), z.im.mid().get(), z.re.mid().get(), MPFR_RNDN);
  BigFloat cabs(prec);
  mpfr_hypot(cabs.get(), z.re.mid().get(), z.im.mid().get(), MPFR_RNDD);
  BigFloat rho = z.disk_radius();
  BigFloat t(Ball::kRadiusPrecision);
  mpfr_div(t.get(), rho.get(), cabs.get(), MPFR_RNDU);
  if (mpfr_cmp_ui(t.get(), 1) >= 0) throw PrecisionError("argument of a ball too close to zero");
  // asin(t) <= t * pi / 2 on [0, 1].
  mpfr_mul_d(t.get(), t.get(), 1.5708, MPFR_RNDU);
  BigFloat e(Ball::kRadiusPrecision);
  ulp_bound(e.get(), theta.get(), prec);
  mpfr_mul_2ui(e.get(), e.get(), 1, MPFR_RNDU);
  mpfr_add(t.get(), t.get(), e.get(), MPFR_RNDU);
  return Ball(theta, t, prec);
}

Ball log_abs(const ComplexBall& z) {
  mpfr_prec_t prec = z.precision();
  BigFloat lo = z.abs_lower(), hi = z.abs_upper();
  if (mpfr_zero_p(lo.get())) throw PrecisionError("logarithm of a ball containing zero");
  BigFloat l(prec + 2), h(prec + 2);
  mpfr_log(l.get(), lo.get(), MPFR_RNDD);
  mpfr_log(h.get(), hi.get(), MPFR_RNDU);
  return from_endpoints(l, h, prec);
}

}  // namespace polydep
