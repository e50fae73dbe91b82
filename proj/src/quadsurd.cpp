#include "markovdim/quadsurd.hpp"

#include <stdexcept>

namespace markovdim {

namespace {

int sgn(const mpz_class& x) { return mpz_sgn(x.get_mpz_t()); }

// Strip the square part of d into mult: d = mult^2 * d' with d' squarefree
// (exact for d < ~1e18: trial division to 1e6 plus a perfect-square test on
// the remainder covers every factorization shape that can occur below that).
mpz_class extract_square_part(mpz_class& d) {
  mpz_class mult = 1;
  if (d <= 3) return mult;
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    mult = s;
    d = 1;
    return mult;
  }
  mpz_class kernel = 1;  // odd-exponent small primes, kept out of the residual
  for (unsigned long f = 2; f <= 1000000UL; f += (f == 2 ? 1 : 2)) {
    // Once every prime <= f has been divided out completely, a residual
    // below f^3 has at most two prime factors, so its square part (if any)
    // is caught by the perfect-square test after the loop.
    if (mpz_cmp_ui(d.get_mpz_t(), f * f * f) < 0) break;
    if (!mpz_divisible_ui_p(d.get_mpz_t(), f)) continue;
    unsigned exponent = 0;
    do {
      mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), f);
      ++exponent;
    } while (mpz_divisible_ui_p(d.get_mpz_t(), f));
    for (unsigned k = 0; k + 1 < exponent; k += 2) mult *= static_cast<long>(f);
    if (exponent % 2 == 1) kernel *= static_cast<long>(f);
  }
  if (d > 1 && mpz_perfect_square_p(d.get_mpz_t())) {
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
    mult *= s;
    d = 1;
  }
  d *= kernel;
  return mult;
}

Interval mpz_to_interval(const mpz_class& z) {
  double v = z.get_d();  // truncated toward zero, so widen both sides
  return {step_down(v), step_up(v)};
}

}  // namespace

int QuadSurd::sign_one_radical(const mpz_class& a, const mpz_class& b,
                               const mpz_class& D) {
  if (D < 0) throw std::domain_error("sign_one_radical: negative radicand");
  if (sgn(b) == 0 || sgn(D) == 0) return sgn(a);
  if (sgn(a) == 0) return sgn(b);
  if (sgn(a) > 0 && sgn(b) > 0) return 1;
  if (sgn(a) < 0 && sgn(b) < 0) return -1;
  // Signs differ: compare a^2 with b^2 * D.
  mpz_class lhs = a * a;
  mpz_class rhs = b * b * D;
  int c = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
  if (c == 0) return 0;
  // a > 0 > b*sqrt(D): positive iff a^2 > b^2 D.  Mirror case negated.
  return sgn(a) > 0 ? (c > 0 ? 1 : -1) : (c > 0 ? -1 : 1);
}

int QuadSurd::sign_two_radical(const mpz_class& a, const mpz_class& b,
                               const mpz_class& D1, const mpz_class& c,
                               const mpz_class& D2) {
  if (sgn(b) == 0 || sgn(D1) == 0) return sign_one_radical(a, c, D2);
  if (sgn(c) == 0 || sgn(D2) == 0) return sign_one_radical(a, b, D1);
  if (D1 == D2) return sign_one_radical(a, b + c, D1);
  int sx = sign_one_radical(a, b, D1);  // X = a + b*sqrt(D1)
  int sy = sgn(c);                      // Y = c*sqrt(D2), never zero here
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // X and Y have opposite signs; compare X^2 with Y^2.
  // X^2 - Y^2 = (a^2 + b^2 D1 - c^2 D2) + 2ab*sqrt(D1).
  int t = sign_one_radical(a * a + b * b * D1 - c * c * D2, 2 * a * b, D1);
  return sx > 0 ? t : -t;
}

QuadSurd::QuadSurd(mpz_class p, mpz_class q, mpz_class d, mpz_class r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  normalize(true);
}

QuadSurd::QuadSurd(NoExtract, mpz_class p, mpz_class q, mpz_class d,
                   mpz_class r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  normalize(false);
}

void QuadSurd::normalize(bool extract_squares) {
  if (sgn(r_) == 0) throw std::domain_error("QuadSurd: zero denominator");
  if (sgn(d_) < 0) throw std::domain_error("QuadSurd: negative radicand");
  if (sgn(r_) < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  if (sgn(q_) == 0) d_ = 0;
  if (d_ == 1) {
    p_ += q_;
    q_ = 0;
    d_ = 0;
  }
  if (extract_squares && sgn(q_) != 0) {
    mpz_class mult = extract_square_part(d_);
    q_ *= mult;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
      d_ = 0;
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    r_ /= g;
  }
}

QuadSurd QuadSurd::operator-() const {
  return QuadSurd(NoExtract{}, -p_, -q_, d_, r_);
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
  if (!is_rational() && !o.is_rational() && d_ != o.d_)
    throw std::domain_error("QuadSurd: incompatible radicands in addition");
  mpz_class d = is_rational() ? o.d_ : d_;
  return QuadSurd(NoExtract{}, p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, d,
                  r_ * o.r_);
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const { return *this + (-o); }

QuadSurd QuadSurd::reciprocal() const {
  if (is_zero()) throw std::domain_error("QuadSurd: reciprocal of zero");
  // 1 / ((p + q sqrt(d))/r) = r (p - q sqrt(d)) / (p^2 - q^2 d)
  mpz_class den = p_ * p_ - q_ * q_ * d_;
  if (sgn(den) == 0)
    throw std::domain_error("QuadSurd: reciprocal hit zero norm");
  return QuadSurd(NoExtract{}, p_ * r_, -q_ * r_, d_, den);
}

QuadSurd QuadSurd::scaled(const mpq_class& c) const {
  return QuadSurd(NoExtract{}, p_ * c.get_num(), q_ * c.get_num(), d_,
                  r_ * c.get_den());
}

QuadSurd QuadSurd::shifted(long n) const {
  return QuadSurd(NoExtract{}, p_ + n * r_, q_, d_, r_);
}

int QuadSurd::sign() const { return sign_one_radical(p_, q_, d_); }

int QuadSurd::cmp(const QuadSurd& o) const {
  return sign_two_radical(p_ * o.r_ - o.p_ * r_, q_ * o.r_, d_, -(o.q_ * r_),
                          o.d_);
}

mpz_class QuadSurd::floor_scaled(const mpz_class& scale) const {
  if (scale <= 0) throw std::domain_error("floor_scaled: scale must be > 0");
  // value*scale = (A + B sqrt(d)) / r with A = p*scale, B = q*scale.
  mpz_class A = p_ * scale;
  mpz_class B = q_ * scale;
  mpz_class approx_num = A;
  if (sgn(B) != 0) {
    mpz_class s;
    mpz_class rad = B * B * d_;
    mpz_sqrt(s.get_mpz_t(), rad.get_mpz_t());  // floor sqrt
    approx_num += sgn(B) > 0 ? s : -(s + 1);
  }
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), approx_num.get_mpz_t(), r_.get_mpz_t());
  // Exact adjustment: n = floor iff value*scale - n >= 0 > value*scale - (n+1).
  while (sign_one_radical(A - (n + 1) * r_, B, d_) >= 0) ++n;
  while (sign_one_radical(A - n * r_, B, d_) < 0) --n;
  return n;
}

namespace {

std::string format_scaled(const mpz_class& scaled_abs, int digits, bool neg) {
  std::string s = scaled_abs.get_str();
  if (static_cast<int>(s.size()) <= digits)
    s = std::string(digits + 1 - s.size(), '0') + s;
  std::string out;
  if (neg) out += '-';
  out += s.substr(0, s.size() - digits);
  if (digits > 0) {
    out += '.';
    out += s.substr(s.size() - digits);
  }
  return out;
}

}  // namespace

std::string QuadSurd::decimal(int digits) const {
  if (digits < 0) throw std::invalid_argument("decimal: digits must be >= 0");
  if (sign() < 0) return "-" + (-*this).decimal(digits);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  return format_scaled(floor_scaled(scale), digits, false);
}

Interval QuadSurd::to_interval() const {
  Interval num = mpz_to_interval(p_);
  if (sgn(q_) != 0)
    num = num + mpz_to_interval(q_) * sqrt_outward(mpz_to_interval(d_));
  return num / mpz_to_interval(r_);
}

std::string QuadSurd::str() const {
  return "(" + p_.get_str() + "+" + q_.get_str() + "*sqrt(" + d_.get_str() +
         "))/" + r_.get_str();
}

mpz_class difference_floor_scaled(const QuadSurd& lo, const QuadSurd& hi,
                                  const mpz_class& scale) {
  if (hi.cmp(lo) < 0)
    throw std::domain_error("difference_floor_scaled: hi < lo");
  // (hi - lo)*scale = (A + B sqrt(dh) + C sqrt(dl)) / R
  mpz_class R = hi.r() * lo.r();
  mpz_class A = (hi.p() * lo.r() - lo.p() * hi.r()) * scale;
  mpz_class B = hi.q() * lo.r() * scale;
  mpz_class C = -(lo.q() * hi.r()) * scale;
  // Bracket with a double estimate, then binary-search the exact floor:
  // the answer is the largest n with (hi-lo)*scale - n >= 0.
  auto nonneg_minus = [&](const mpz_class& n) {
    return QuadSurd::sign_two_radical(A - n * R, B, hi.d(), C, lo.d()) >= 0;
  };
  double est = (hi.to_interval().hi - lo.to_interval().lo) * scale.get_d();
  mpz_class top(est);
  top += 2;
  while (nonneg_minus(top)) top *= 2;  // safety: ensure upper bracket
  mpz_class bot(0);                    // hi >= lo, so the floor is >= 0
  while (top - bot > 1) {
    mpz_class mid = (top + bot) / 2;
    if (nonneg_minus(mid))
      bot = mid;
    else
      top = mid;
  }
  return bot;
}

std::string difference_decimal(const QuadSurd& lo, const QuadSurd& hi,
                               int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  return format_scaled(difference_floor_scaled(lo, hi, scale), digits, false);
}

mpq_class parse_decimal(const std::string& text) {
  std::string t = text;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  auto dot = t.find('.');
  std::string digits = t;
  int frac = 0;
  if (dot != std::string::npos) {
    digits = t.substr(0, dot) + t.substr(dot + 1);
    frac = static_cast<int>(t.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("parse_decimal: bad decimal literal '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::string decimal_of_rational(const mpq_class& value, int digits) {
  return QuadSurd(value).decimal(digits);
}

}  // namespace markovdim
