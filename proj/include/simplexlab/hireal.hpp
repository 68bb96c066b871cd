#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace simplexlab {

// Exact rational number with arbitrary-size numerator and denominator.
using Rational = mpq_class;

// Parses "p/q", "p" or "-p/q"; the result is canonicalized (lowest terms,
// positive denominator). Throws DomainError on malformed input or q = 0.
Rational parse_rational(std::string_view text);

// Canonical "p/q" rendering, always with an explicit denominator ("0/1").
std::string canonical_string(const Rational& r);

// Decimal working precision. Never below kMinDigits.
class Precision {
 public:
  static constexpr int kMinDigits = 30;

  explicit Precision(int digits);

  int digits() const { return digits_; }
  mpfr_prec_t bits() const;

  Precision scaled(int factor) const { return Precision(digits_ * factor); }

  friend bool operator==(Precision, Precision) = default;
  friend auto operator<=>(Precision, Precision) = default;

 private:
  int digits_;
};

// Arbitrary-precision real backed by MPFR. Binary operations produce a
// result carrying the smaller of the two operand precisions.
class HiReal {
 public:
  HiReal();
  explicit HiReal(Precision p);
  HiReal(long value, Precision p);
  HiReal(double value, Precision p);
  HiReal(const Rational& value, Precision p);

  HiReal(const HiReal& other);
  HiReal(HiReal&& other) noexcept;
  HiReal& operator=(const HiReal& other);
  HiReal& operator=(HiReal&& other) noexcept;
  ~HiReal();

  // Parses a decimal literal such as "1e-60" or "-0.075". Throws DomainError.
  static HiReal parse(std::string_view text, Precision p);
  static HiReal pi(Precision p);
  // 10^exponent, correctly rounded.
  static HiReal pow10(long exponent, Precision p);

  Precision precision() const { return precision_; }
  // Same value re-rounded to `p`; exact when p is at least the current one.
  HiReal with_precision(Precision p) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Exact binary value as a rational.
  Rational to_rational() const;
  // Decimal exponent e with 10^(e-1) <= |x| < 10^e; 0 for zero.
  long decimal_exponent() const;

  // Fixed-point rendering with `significant` significant digits, e.g.
  // "0.0750000000". Zero renders as "0". Locale independent.
  std::string to_fixed(int significant) const;
  // Scientific rendering, e.g. "1.25e-61".
  std::string to_scientific(int significant) const;

  HiReal operator-() const;
  HiReal& operator+=(const HiReal& rhs);
  HiReal& operator-=(const HiReal& rhs);
  HiReal& operator*=(const HiReal& rhs);
  HiReal& operator/=(const HiReal& rhs);

  friend HiReal operator+(const HiReal& a, const HiReal& b);
  friend HiReal operator-(const HiReal& a, const HiReal& b);
  friend HiReal operator*(const HiReal& a, const HiReal& b);
  friend HiReal operator/(const HiReal& a, const HiReal& b);
  friend HiReal operator+(const HiReal& a, long b);
  friend HiReal operator-(const HiReal& a, long b);
  friend HiReal operator*(const HiReal& a, long b);
  friend HiReal operator/(const HiReal& a, long b);
  friend HiReal operator+(long a, const HiReal& b) { return b + a; }
  friend HiReal operator-(long a, const HiReal& b);
  friend HiReal operator*(long a, const HiReal& b) { return b * a; }
  friend HiReal operator/(long a, const HiReal& b);

  friend bool operator==(const HiReal& a, const HiReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend bool operator<(const HiReal& a, const HiReal& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const HiReal& a, const HiReal& b) { return b < a; }
  friend bool operator<=(const HiReal& a, const HiReal& b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
  friend bool operator>=(const HiReal& a, const HiReal& b) { return b <= a; }
  friend bool operator<(const HiReal& a, long b) { return mpfr_cmp_si(a.value_, b) < 0; }
  friend bool operator>(const HiReal& a, long b) { return mpfr_cmp_si(a.value_, b) > 0; }
  friend bool operator<=(const HiReal& a, long b) { return mpfr_cmp_si(a.value_, b) <= 0; }
  friend bool operator>=(const HiReal& a, long b) { return mpfr_cmp_si(a.value_, b) >= 0; }

  friend HiReal abs(const HiReal& x);
  friend HiReal sqrt(const HiReal& x);
  friend HiReal sin(const HiReal& x);
  friend HiReal cos(const HiReal& x);
  friend HiReal tan(const HiReal& x);
  friend HiReal asin(const HiReal& x);
  friend HiReal acos(const HiReal& x);
  friend HiReal atan(const HiReal& x);
  friend HiReal exp(const HiReal& x);
  friend HiReal log(const HiReal& x);
  friend HiReal log10(const HiReal& x);
  friend HiReal sinh(const HiReal& x);
  friend HiReal cosh(const HiReal& x);
  friend HiReal floor(const HiReal& x);
  friend HiReal min(const HiReal& a, const HiReal& b) { return b < a ? b : a; }
  friend HiReal max(const HiReal& a, const HiReal& b) { return a < b ? b : a; }

  mpfr_srcptr raw() const { return value_; }

 private:
  template <typename Fn>
  friend HiReal apply_unary(const HiReal& x, Fn fn);

  mpfr_t value_;
  Precision precision_;
};

// arccos with a clamp band: inputs within 10^(-digits+5) outside [-1, 1] are
// clamped, anything further out raises DomainError.
HiReal arccos_hp(const HiReal& u);

}  // namespace simplexlab
