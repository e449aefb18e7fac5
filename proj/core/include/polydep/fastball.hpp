#pragma once

#include <cmath>
#include <limits>

namespace polydep {

// Double-precision midpoint-radius ball. Every result radius is inflated so
// that it dominates the round-to-nearest errors of both the midpoint and the
// radius computation itself. Overflow or NaN degrade to an infinite radius.
struct DBall {
  double mid = 0.0;
  double rad = 0.0;

  static constexpr double kEps = 0x1p-52;
  static double up(double x) {
    double r = x * (1.0 + 0x1p-50) + std::numeric_limits<double>::denorm_min();
    return std::isfinite(r) ? r : std::numeric_limits<double>::infinity();
  }
  static DBall exact(double v) { return DBall{v, 0.0}; }
  static DBall make(double m, double r) {
    if (!std::isfinite(m)) return DBall{0.0, std::numeric_limits<double>::infinity()};
    return DBall{m, up(r + std::fabs(m) * kEps)};
  }

  bool contains_zero() const { return !(std::fabs(mid) > rad); }
  double abs_upper() const { return up(std::fabs(mid) + rad); }
  double abs_lower() const {
    double v = (std::fabs(mid) - rad) * (1.0 - 0x1p-50);
    return v > 0.0 ? v : 0.0;
  }
};

inline DBall operator+(DBall a, DBall b) { return DBall::make(a.mid + b.mid, a.rad + b.rad); }
inline DBall operator-(DBall a, DBall b) { return DBall::make(a.mid - b.mid, a.rad + b.rad); }
inline DBall operator-(DBall a) { return DBall{-a.mid, a.rad}; }
inline DBall operator*(DBall a, DBall b) {
  double m = a.mid * b.mid;
  double r = std::fabs(a.mid) * b.rad + std::fabs(b.mid) * a.rad + a.rad * b.rad;
  return DBall::make(m, r);
}
inline DBall operator/(DBall a, DBall b) {
  double den = std::fabs(b.mid) - b.rad;
  if (!(den > 0.0)) return DBall{0.0, std::numeric_limits<double>::infinity()};
  double m = a.mid / b.mid;
  double r = (a.rad + DBall::up(std::fabs(m) * (1.0 + DBall::kEps)) * b.rad) /
             (den * (1.0 - 0x1p-50));
  return DBall::make(m, r);
}

struct DComplexBall {
  DBall re;
  DBall im;

  static DComplexBall exact(double r, double i) { return {DBall::exact(r), DBall::exact(i)}; }
  static DComplexBall disk(double r, double i, double radius) {
    return {DBall{r, radius}, DBall{i, radius}};
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  double abs_upper() const { return DBall::up(std::hypot(re.abs_upper(), im.abs_upper())); }
  double abs_lower() const {
    return std::hypot(re.abs_lower(), im.abs_lower()) * (1.0 - 0x1p-50);
  }
  // Smallest r such that the rectangle lies in the disk of radius r around the
  // midpoint.
  double disk_radius() const { return DBall::up(std::hypot(re.rad, im.rad)); }
};

inline DComplexBall operator+(DComplexBall a, DComplexBall b) {
  return {a.re + b.re, a.im + b.im};
}
inline DComplexBall operator-(DComplexBall a, DComplexBall b) {
  return {a.re - b.re, a.im - b.im};
}
inline DComplexBall operator*(DComplexBall a, DComplexBall b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DComplexBall operator/(DComplexBall a, DComplexBall b) {
  DBall den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline DComplexBall pow(DComplexBall z, unsigned k) {
  DComplexBall r = DComplexBall::exact(1.0, 0.0);
  while (k > 0) {
    if (k & 1U) r = r * z;
    k >>= 1;
    if (k > 0) z = z * z;
  }
  return r;
}

}  // namespace polydep
