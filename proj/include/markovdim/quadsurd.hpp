#pragma once

#include <gmpxx.h>

#include <string>

#include "markovdim/interval.hpp"

namespace markovdim {

// Exact real quadratic surd (p + q*sqrt(d)) / r with integer p, q, d >= 0,
// r > 0.  Normal form: r > 0, gcd(p, q, r) = 1, and d squarefree (square
// factors are absorbed into q; d = 0 and q = 0 for rationals).  All
// comparisons are exact, including across different radicands.
class QuadSurd {
 public:
  QuadSurd() : p_(0), q_(0), d_(0), r_(1) {}
  QuadSurd(long value) : p_(value), q_(0), d_(0), r_(1) {}  // NOLINT(runtime/explicit)
  explicit QuadSurd(const mpq_class& value)
      : p_(value.get_num()), q_(0), d_(0), r_(value.get_den()) {
    normalize(true);
  }
  QuadSurd(mpz_class p, mpz_class q, mpz_class d, mpz_class r);

  static QuadSurd sqrt_of(long d) { return QuadSurd(0, 1, d, 1); }

  const mpz_class& p() const { return p_; }
  const mpz_class& q() const { return q_; }
  const mpz_class& d() const { return d_; }
  const mpz_class& r() const { return r_; }
  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QuadSurd operator-() const;
  QuadSurd operator+(const QuadSurd& o) const;  // requires compatible radicands
  QuadSurd operator-(const QuadSurd& o) const;
  QuadSurd reciprocal() const;
  QuadSurd scaled(const mpq_class& c) const;
  QuadSurd shifted(long n) const;  // value + n

  int sign() const;
  int cmp(const QuadSurd& o) const;  // exact; works across radicands
  bool operator==(const QuadSurd& o) const { return cmp(o) == 0; }
  bool operator!=(const QuadSurd& o) const { return cmp(o) != 0; }
  bool operator<(const QuadSurd& o) const { return cmp(o) < 0; }
  bool operator<=(const QuadSurd& o) const { return cmp(o) <= 0; }
  bool operator>(const QuadSurd& o) const { return cmp(o) > 0; }
  bool operator>=(const QuadSurd& o) const { return cmp(o) >= 0; }

  // Exact floor(value * scale) for integer scale > 0.
  mpz_class floor_scaled(const mpz_class& scale) const;

  // Decimal expansion truncated toward zero to `digits` fractional digits.
  std::string decimal(int digits) const;

  // Enclosing double interval (outward rounded).
  Interval to_interval() const;

  std::string str() const;  // "(p+q*sqrt(d))/r" debugging form

  // Exact sign of a + b*sqrt(D1) + c*sqrt(D2), D1, D2 >= 0.
  static int sign_two_radical(const mpz_class& a, const mpz_class& b,
                              const mpz_class& D1, const mpz_class& c,
                              const mpz_class& D2);
  // Exact sign of a + b*sqrt(D), D >= 0.
  static int sign_one_radical(const mpz_class& a, const mpz_class& b,
                              const mpz_class& D);

 private:
  struct NoExtract {};
  // Fast path used by arithmetic: d is already squarefree, skip extraction.
  QuadSurd(NoExtract, mpz_class p, mpz_class q, mpz_class d, mpz_class r);

  void normalize(bool extract_squares);

  mpz_class p_, q_, d_, r_;
};

// Exact truncated decimal of (hi - lo) where the radicands may differ
// (used for plateau lengths).  Truncation toward zero; requires hi >= lo.
std::string difference_decimal(const QuadSurd& lo, const QuadSurd& hi, int digits);

// Exact floor((hi - lo) * scale), radicands may differ.
mpz_class difference_floor_scaled(const QuadSurd& lo, const QuadSurd& hi,
                                  const mpz_class& scale);

// Parse a plain decimal string like "3.2658" or "-0.5" into an exact rational.
mpq_class parse_decimal(const std::string& text);

// Truncate an exact rational toward zero to `digits` fractional digits.
std::string decimal_of_rational(const mpq_class& value, int digits);

}  // namespace markovdim
