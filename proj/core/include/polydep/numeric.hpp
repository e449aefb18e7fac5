#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace polydep {

// Owning wrapper around an mpfr_t. Arithmetic is explicit: callers pick the
// rounding mode, which is what interval code needs.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(double value, mpfr_prec_t prec);
  BigFloat(const mpz_class& value, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const mpq_class& value, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  // Decimal scientific notation with the given number of significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

int compare(const BigFloat& a, const BigFloat& b);
inline bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }

// 2^e as a BigFloat (exact).
BigFloat pow2(long e, mpfr_prec_t prec = 32);

// Closed interval [low, high] with low <= high, guaranteed to contain the value.
struct RealEnclosure {
  BigFloat low;
  BigFloat high;

  bool contains(const BigFloat& x) const { return low <= x && x <= high; }
  bool overlaps(const RealEnclosure& o) const { return low <= o.high && o.low <= high; }
  BigFloat width() const;
  BigFloat midpoint() const;
};

// Midpoint-radius real ball. All operations return balls that contain every
// exact result obtainable from points of the operands.
class Ball {
 public:
  static constexpr mpfr_prec_t kRadiusPrecision = 32;

  explicit Ball(mpfr_prec_t prec = 64);
  Ball(const mpz_class& value, mpfr_prec_t prec);
  Ball(const mpq_class& value, mpfr_prec_t prec);
  Ball(const BigFloat& mid, const BigFloat& rad, mpfr_prec_t prec);

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  mpfr_prec_t precision() const { return mid_.precision(); }

  bool contains_zero() const;
  // Rigorous bounds on |x| over the ball.
  BigFloat abs_upper() const;
  BigFloat abs_lower() const;
  RealEnclosure enclosure() const;

  void add_error(const BigFloat& err);

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a);

  static Ball pi(mpfr_prec_t prec);
  // Natural logarithm; requires the ball to be strictly positive.
  static Ball log(const Ball& x);

 private:
  friend Ball from_endpoints(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec);
  void add_rounding_error(int ternary);
  BigFloat mid_;
  BigFloat rad_;
};

Ball from_endpoints(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec);

// Rectangular complex ball: independent real and imaginary balls.
struct ComplexBall {
  Ball re;
  Ball im;

  explicit ComplexBall(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  ComplexBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
  // Disk |z - center| <= radius, represented by its bounding square.
  static ComplexBall from_disk(const BigFloat& cre, const BigFloat& cim, const BigFloat& radius,
                               mpfr_prec_t prec);

  mpfr_prec_t precision() const { return re.precision(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  BigFloat abs_upper() const;
  BigFloat abs_lower() const;
  // Radius of a disk around the midpoint containing the whole rectangle.
  BigFloat disk_radius() const;

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
};

ComplexBall pow(const ComplexBall& z, unsigned long k);
ComplexBall scale(const ComplexBall& z, const mpz_class& c);
// A real enclosure of some continuous branch of arg over the ball; requires
// the ball to exclude zero.
Ball arg(const ComplexBall& z);
Ball log_abs(const ComplexBall& z);

}  // namespace polydep
