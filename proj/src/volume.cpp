#include "simplexlab/volume.hpp"

#include <string>

#include "simplexlab/errors.hpp"

namespace simplexlab::volume {

HiReal Param::at(Precision p) const {
  if (const auto* q = std::get_if<Rational>(&value_)) return HiReal(*q, p);
  return std::get<HiReal>(value_).with_precision(p);
}

std::string Param::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return canonical_string(*q);
  const auto& r = std::get<HiReal>(value_);
  return r.to_scientific(r.precision().digits());
}

Angle Angle::from_t(const Param& t) {
  if (t.is_exact()) return pi_times(Rational(1, 2) + t.exact());
  // A few extra digits keep t + 1/2 exact for |t| < 1.
  const HiReal& real = t.real();
  const HiReal widened = real.with_precision(Precision(real.precision().digits() + 5));
  return Angle(Param(widened + HiReal(Rational(1, 2), widened.precision())));
}

HiReal Angle::radians(Precision p) const {
  if (in_pi_units_) return HiReal::pi(p) * value_.at(p);
  return value_.at(p);
}

Param Angle::t(Precision p) const {
  if (in_pi_units_ && value_.is_exact()) return Param(Rational(value_.exact() - Rational(1, 2)));
  const HiReal pi = HiReal::pi(p);
  return Param((radians(p) - pi / 2) / pi);
}

std::string Angle::to_string() const {
  if (in_pi_units_) return value_.to_string() + "pi";
  return value_.to_string();
}

namespace {

void validate_coefficient(int k) {
  if (k != 3 && k != 6) throw DomainError("Schlafli coefficient must be 3 or 6, got " + std::to_string(k));
}

}  // namespace

void validate(const VolumeOptions& options) { validate_coefficient(options.schlafli_coefficient); }

std::string to_string(Route route) {
  switch (route) {
    case Route::Ode:
      return "ode";
    case Route::Form8:
      return "form8";
    case Route::Closed10:
      return "closed10";
    case Route::MonteCarlo:
      return "montecarlo";
  }
  return "unknown";
}

Route parse_route(const std::string& name) {
  if (name == "ode" || name == "form7") return Route::Ode;
  if (name == "form8") return Route::Form8;
  if (name == "closed10") return Route::Closed10;
  if (name == "montecarlo") return Route::MonteCarlo;
  throw DomainError("unknown route \"" + name + "\"");
}

HiReal f_integrand(const HiReal& s) {
  const HiReal sn = sin(s);
  return arccos_hp(sn / (1 + 2 * sn));
}

bool in_domain(const Param& t, Domain domain) {
  if (domain == Domain::Narrow) {
    if (t.is_exact()) return abs(t.exact()) < Rational(1, 10);
    const HiReal v = t.at(Precision(60));
    return abs(v) < HiReal(Rational(1, 10), v.precision());
  }
  const Precision p(60);
  const HiReal v = t.at(p);
  const HiReal lower = -asin(HiReal(1L, p) / 3) / HiReal::pi(p);
  if (t.is_exact()) return lower < v && t.exact() <= Rational(1, 2);
  return lower < v && v <= HiReal(Rational(1, 2), p);
}

namespace {

void require_domain(const Param& t, Domain domain) {
  if (in_domain(t, domain)) return;
  throw DomainError("t = " + t.to_string() +
                    (domain == Domain::Narrow ? " outside the narrow band |t| < 1/10"
                                             : " outside the extended range (-arcsin(1/3)/pi, 1/2]"));
}

bool is_zero(const Param& t) {
  return t.is_exact() ? t.exact() == 0 : t.at(Precision(Precision::kMinDigits)).is_zero();
}

Precision result_precision(const HiReal& tol, const QuadratureOptions& q) { return Precision(starting_digits(tol, q)); }

}  // namespace

QuadratureResult eval_f(const Param& t, const HiReal& tol, Domain domain, const QuadratureOptions& quadrature) {
  require_domain(t, domain);
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (is_zero(t)) {
    const Precision p = result_precision(tol, quadrature);
    return QuadratureResult{HiReal(p), HiReal(p), 0, p.digits()};
  }
  // Tolerance on the raw integral, which is pi^2 f(t).
  const HiReal raw_tol = tol * 9;
  auto result = integrate(
      [&](Precision p) {
        return IntegrationProblem{f_integrand, HiReal(p), HiReal::pi(p) * t.at(p)};
      },
      raw_tol, quadrature);
  const Precision p = result.estimate.precision();
  const HiReal pi2 = HiReal::pi(p) * HiReal::pi(p);
  result.estimate /= pi2;
  result.error_bound /= pi2;
  return result;
}

HiReal schlafli_rate(const HiReal& phi, int schlafli_coefficient) {
  validate_coefficient(schlafli_coefficient);
  return schlafli_coefficient * simplex::dihedral_to_edge(phi);
}

VolumeResult vol_by_ode(const Angle& phi, const HiReal& tol, const VolumeOptions& options) {
  validate(options);
  const int k = options.schlafli_coefficient;
  // Rejects angles outside the dihedral domain before integrating.
  simplex::dihedral_to_edge(phi.radians(result_precision(tol, options.quadrature)));
  auto integral = integrate(
      [&](Precision p) {
        return IntegrationProblem{[](const HiReal& psi) { return simplex::dihedral_to_edge(psi); },
                                  HiReal::pi(p) / 2, phi.radians(p)};
      },
      tol / k, options.quadrature);
  const Precision p = integral.estimate.precision();
  const HiReal pi = HiReal::pi(p);
  return VolumeResult{phi.radians(p), phi.t(p), pi * pi / 8 + k * integral.estimate, Route::Ode,
                      k * integral.error_bound};
}

HiReal form8_ratio(const HiReal& s) {
  const HiReal half = s / 2;
  return (sin(half) + cos(half)) / sqrt(2 + 4 * sin(s));
}

VolumeResult vol_form8(const Param& t, const HiReal& tol, const VolumeOptions& options) {
  validate(options);
  require_domain(t, Domain::Narrow);
  const int k = options.schlafli_coefficient;
  auto integral = integrate(
      [&](Precision p) {
        return IntegrationProblem{[](const HiReal& s) { return arccos_hp(form8_ratio(s)); }, HiReal(p),
                                  HiReal::pi(p) * t.at(p)};
      },
      tol / (2 * k), options.quadrature);
  const Precision p = integral.estimate.precision();
  const HiReal pi = HiReal::pi(p);
  return VolumeResult{pi / 2 + pi * t.at(p), t, pi * pi / 8 + 2 * k * integral.estimate, Route::Form8,
                      2 * k * integral.error_bound};
}

HiReal halfangle_reduce(const HiReal& u) {
  const Precision p = u.precision();
  const HiReal band = HiReal::pow10(-(p.digits() - 5), p);
  if (abs(u) - 1 > band) throw DomainError("half-angle argument outside [-1, 1]: " + u.to_scientific(20));
  const HiReal reduced = arccos_hp(2 * u * u - 1);
  if (u >= 0) return reduced;
  return 2 * HiReal::pi(p) - reduced;
}

VolumeResult vol_closed_form(const Param& t, const HiReal& tol, const VolumeOptions& options) {
  validate(options);
  const int k = options.schlafli_coefficient;
  // |K pi^2 (f - f~)| <= tol needs |f - f~| <= tol / (K pi^2); 10 K bounds K pi^2.
  const auto f = eval_f(t, tol / (10 * k), options.domain, options.quadrature);
  const Precision p = f.estimate.precision();
  const HiReal pi = HiReal::pi(p);
  const HiReal pi2 = pi * pi;
  const HiReal tr = t.at(p);
  return VolumeResult{pi / 2 + pi * tr, t, pi2 / 8 + k * pi2 * tr - k * pi2 * f.estimate, Route::Closed10,
                      k * pi2 * f.error_bound};
}

}  // namespace simplexlab::volume
