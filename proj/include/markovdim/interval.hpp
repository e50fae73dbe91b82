#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace markovdim {

// Closed interval [lo, hi] over doubles with outward-rounded arithmetic:
// every operation returns an interval that contains the exact result of the
// operation applied to any points of its operands.  Rounding is handled by
// widening each primitive result by one ulp on each side, which dominates the
// <= 0.5 ulp error of correctly rounded IEEE primitives.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }
  static Interval point(double x) { return Interval(x, x); }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline double step_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline Interval operator+(const Interval& a, const Interval& b) {
  return {step_down(a.lo + b.lo), step_up(a.hi + b.hi)};
}
inline Interval operator+(double a, const Interval& b) {
  return Interval::point(a) + b;
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {step_down(a.lo - b.hi), step_up(a.hi - b.lo)};
}
inline Interval operator*(const Interval& a, const Interval& b) {
  const double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  double lo = *std::min_element(c, c + 4);
  double hi = *std::max_element(c, c + 4);
  return {step_down(lo), step_up(hi)};
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0)
    throw std::domain_error("Interval division by interval containing zero");
  const double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  double lo = *std::min_element(c, c + 4);
  double hi = *std::max_element(c, c + 4);
  return {step_down(lo), step_up(hi)};
}
inline Interval reciprocal(const Interval& a) {
  if (a.lo <= 0.0 && a.hi >= 0.0)
    throw std::domain_error("Interval reciprocal of interval containing zero");
  return {step_down(1.0 / a.hi), step_up(1.0 / a.lo)};
}
inline Interval sqrt_outward(const Interval& a) {
  if (a.lo < 0.0) throw std::domain_error("Interval sqrt of negative interval");
  return {step_down(std::sqrt(a.lo)), step_up(std::sqrt(a.hi))};
}

// base^sigma for base > 0, sigma >= 0 (monotone increasing in base); the
// result of std::pow is widened by 4 ulps per side to cover libm slop.
inline Interval pow_outward(const Interval& base, double sigma) {
  if (base.lo <= 0.0) throw std::domain_error("pow_outward: base must be positive");
  double lo = std::pow(base.lo, sigma);
  double hi = std::pow(base.hi, sigma);
  for (int i = 0; i < 4; ++i) {
    lo = step_down(lo);
    hi = step_up(hi);
  }
  return {lo, hi};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

}  // namespace markovdim
