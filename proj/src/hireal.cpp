#include "simplexlab/hireal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "simplexlab/errors.hpp"

namespace simplexlab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return DomainError("not a rational number: \"" + s + "\""); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (!part.empty() && (part.front() == '-' || part.front() == '+')) part.remove_prefix(1);
    return !part.empty() && std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw bad();
  if (num.front() == '+') num.erase(0, 1);
  if (den.front() == '+') den.erase(0, 1);
  mpz_class p(num, 10);
  mpz_class q(den, 10);
  if (q == 0) throw DomainError("zero denominator in \"" + s + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string canonical_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Precision::Precision(int digits) : digits_(digits) {
  if (digits < kMinDigits) {
    throw DomainError("precision below " + std::to_string(kMinDigits) + " digits: " + std::to_string(digits));
  }
}

mpfr_prec_t Precision::bits() const {
  // log2(10) bits per digit plus a few guard bits.
  return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.321928094887362)) + 16;
}

HiReal::HiReal() : HiReal(Precision(Precision::kMinDigits)) {}

HiReal::HiReal(Precision p) : precision_(p) {
  mpfr_init2(value_, p.bits());
  mpfr_set_zero(value_, 1);
}

HiReal::HiReal(long value, Precision p) : precision_(p) {
  mpfr_init2(value_, p.bits());
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HiReal::HiReal(double value, Precision p) : precision_(p) {
  mpfr_init2(value_, p.bits());
  mpfr_set_d(value_, value, MPFR_RNDN);
}

HiReal::HiReal(const Rational& value, Precision p) : precision_(p) {
  mpfr_init2(value_, p.bits());
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

HiReal::HiReal(const HiReal& other) : precision_(other.precision_) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

HiReal::HiReal(HiReal&& other) noexcept : precision_(other.precision_) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

HiReal& HiReal::operator=(const HiReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
    precision_ = other.precision_;
  }
  return *this;
}

HiReal& HiReal::operator=(HiReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(value_, other.value_);
    std::swap(precision_, other.precision_);
  }
  return *this;
}

HiReal::~HiReal() { mpfr_clear(value_); }

HiReal HiReal::parse(std::string_view text, Precision p) {
  HiReal r(p);
  const std::string s(text);
  if (s.empty() || mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: \"" + s + "\"");
  }
  return r;
}

HiReal HiReal::pi(Precision p) {
  HiReal r(p);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

HiReal HiReal::pow10(long exponent, Precision p) {
  HiReal r(p);
  mpfr_set_ui(r.value_, 10, MPFR_RNDN);
  mpfr_pow_si(r.value_, r.value_, exponent, MPFR_RNDN);
  return r;
}

HiReal HiReal::with_precision(Precision p) const {
  HiReal r(p);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

Rational HiReal::to_rational() const {
  if (!is_finite()) throw DomainError("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

long HiReal::decimal_exponent() const {
  if (is_zero()) return 0;
  mpfr_exp_t e = 0;
  std::unique_ptr<char, void (*)(char*)> digits(mpfr_get_str(nullptr, &e, 10, 20, value_, MPFR_RNDZ), mpfr_free_str);
  return static_cast<long>(e);
}

namespace {

struct DecimalDigits {
  bool negative = false;
  std::string digits;  // value = 0.digits * 10^exponent
  long exponent = 0;
};

DecimalDigits decimal_digits(mpfr_srcptr x, int significant) {
  mpfr_exp_t e = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(std::max(significant, 1)), x, MPFR_RNDN), mpfr_free_str);
  DecimalDigits d;
  std::string s(raw.get());
  if (!s.empty() && s.front() == '-') {
    d.negative = true;
    s.erase(0, 1);
  }
  d.digits = s;
  d.exponent = static_cast<long>(e);
  return d;
}

}  // namespace

std::string HiReal::to_fixed(int significant) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  const auto d = decimal_digits(value_, significant);
  std::string out = d.negative ? "-" : "";
  const long n = static_cast<long>(d.digits.size());
  if (d.exponent <= 0) {
    out += "0.";
    out.append(static_cast<size_t>(-d.exponent), '0');
    out += d.digits;
  } else if (d.exponent >= n) {
    out += d.digits;
    out.append(static_cast<size_t>(d.exponent - n), '0');
  } else {
    out += d.digits.substr(0, static_cast<size_t>(d.exponent));
    out += '.';
    out += d.digits.substr(static_cast<size_t>(d.exponent));
  }
  return out;
}

std::string HiReal::to_scientific(int significant) const {
  if (is_zero()) return "0";
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  const auto d = decimal_digits(value_, significant);
  std::string out = d.negative ? "-" : "";
  out += d.digits.substr(0, 1);
  if (d.digits.size() > 1) {
    out += '.';
    out += d.digits.substr(1);
  }
  out += "e" + std::to_string(d.exponent - 1);
  return out;
}

HiReal HiReal::operator-() const {
  HiReal r(precision_);
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

HiReal& HiReal::operator+=(const HiReal& rhs) { return *this = *this + rhs; }
HiReal& HiReal::operator-=(const HiReal& rhs) { return *this = *this - rhs; }
HiReal& HiReal::operator*=(const HiReal& rhs) { return *this = *this * rhs; }
HiReal& HiReal::operator/=(const HiReal& rhs) { return *this = *this / rhs; }

#define SIMPLEXLAB_BINARY(op, fn)                                    \
  HiReal operator op(const HiReal& a, const HiReal& b) {             \
    HiReal r(std::min(a.precision_, b.precision_));                  \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);                     \
    return r;                                                        \
  }
SIMPLEXLAB_BINARY(+, mpfr_add)
SIMPLEXLAB_BINARY(-, mpfr_sub)
SIMPLEXLAB_BINARY(*, mpfr_mul)
SIMPLEXLAB_BINARY(/, mpfr_div)
#undef SIMPLEXLAB_BINARY

#define SIMPLEXLAB_BINARY_SI(op, fn)                                 \
  HiReal operator op(const HiReal& a, long b) {                      \
    HiReal r(a.precision_);                                          \
    fn(r.value_, a.value_, b, MPFR_RNDN);                            \
    return r;                                                        \
  }
SIMPLEXLAB_BINARY_SI(+, mpfr_add_si)
SIMPLEXLAB_BINARY_SI(-, mpfr_sub_si)
SIMPLEXLAB_BINARY_SI(*, mpfr_mul_si)
SIMPLEXLAB_BINARY_SI(/, mpfr_div_si)
#undef SIMPLEXLAB_BINARY_SI

HiReal operator-(long a, const HiReal& b) {
  HiReal r(b.precision_);
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

HiReal operator/(long a, const HiReal& b) {
  HiReal r(b.precision_);
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

template <typename Fn>
HiReal apply_unary(const HiReal& x, Fn fn) {
  HiReal r(x.precision_);
  fn(r.value_, x.value_, MPFR_RNDN);
  return r;
}

HiReal abs(const HiReal& x) { return apply_unary(x, mpfr_abs); }
HiReal sqrt(const HiReal& x) { return apply_unary(x, mpfr_sqrt); }
HiReal sin(const HiReal& x) { return apply_unary(x, mpfr_sin); }
HiReal cos(const HiReal& x) { return apply_unary(x, mpfr_cos); }
HiReal tan(const HiReal& x) { return apply_unary(x, mpfr_tan); }
HiReal asin(const HiReal& x) { return apply_unary(x, mpfr_asin); }
HiReal acos(const HiReal& x) { return apply_unary(x, mpfr_acos); }
HiReal atan(const HiReal& x) { return apply_unary(x, mpfr_atan); }
HiReal exp(const HiReal& x) { return apply_unary(x, mpfr_exp); }
HiReal log(const HiReal& x) { return apply_unary(x, mpfr_log); }
HiReal log10(const HiReal& x) { return apply_unary(x, mpfr_log10); }
HiReal sinh(const HiReal& x) { return apply_unary(x, mpfr_sinh); }
HiReal cosh(const HiReal& x) { return apply_unary(x, mpfr_cosh); }
HiReal floor(const HiReal& x) {
  HiReal r(x.precision_);
  mpfr_floor(r.value_, x.value_);
  return r;
}

HiReal arccos_hp(const HiReal& u) {
  const Precision p = u.precision();
  const HiReal band = HiReal::pow10(-(p.digits() - 5), p);
  if (abs(u) > 1) {
    if (abs(u) - 1 > band) {
      throw DomainError("arccos argument outside [-1, 1]: " + u.to_scientific(20));
    }
    return u.sign() > 0 ? HiReal(p) : HiReal::pi(p);
  }
  return acos(u);
}

}  // namespace simplexlab
