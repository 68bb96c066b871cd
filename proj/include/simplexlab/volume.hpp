#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "simplexlab/hireal.hpp"
#include "simplexlab/quadrature.hpp"
#include "simplexlab/simplex.hpp"

// Volume of the regular simplex sigma(phi) by independent routes, and the
// normalized integral
//
//   f(t) = (1/pi^2) * integral_0^{pi t} arccos(sin s / (1 + 2 sin s)) ds
//
// whose rationality at rational t decides whether vol sigma(pi/2 + pi t) is a
// rational multiple of pi^2.
namespace simplexlab::volume {

// Scalar that is either exact (materialized late, at whatever precision the
// consumer works at) or an already-rounded real treated as exact.
class Param {
 public:
  Param(Rational exact) : value_(std::move(exact)) {}
  Param(HiReal real) : value_(std::move(real)) {}

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }
  const HiReal& real() const { return std::get<HiReal>(value_); }
  HiReal at(Precision p) const;
  std::string to_string() const;

 private:
  std::variant<Rational, HiReal> value_;
};

// Dihedral angle, either an exact rational multiple of pi or radians.
class Angle {
 public:
  static Angle pi_times(Rational multiple) { return Angle(Param(std::move(multiple))); }
  static Angle radians(HiReal value) { return Angle(std::move(value)); }
  // phi = pi/2 + pi t.
  static Angle from_t(const Param& t);

  HiReal radians(Precision p) const;
  // t = phi/pi - 1/2; exact when the angle is an exact multiple of pi.
  Param t(Precision p) const;
  std::string to_string() const;

 private:
  explicit Angle(Param pi_multiple) : value_(std::move(pi_multiple)), in_pi_units_(true) {}
  explicit Angle(HiReal radians) : value_(std::move(radians)), in_pi_units_(false) {}

  Param value_;
  bool in_pi_units_;
};

// Which range of t eval_f accepts.
enum class Domain {
  Narrow,    // |t| < 1/10
  Extended,  // -arcsin(1/3)/pi < t <= 1/2
};

// Coefficient K in d vol / d phi = K x(phi). The half-sum over six equal
// edges gives 3; 6 reproduces the doubled coefficients some derivations carry.
inline constexpr int kDefaultSchlafliCoefficient = 3;

struct VolumeOptions {
  int schlafli_coefficient = kDefaultSchlafliCoefficient;
  Domain domain = Domain::Narrow;
  QuadratureOptions quadrature;
};

void validate(const VolumeOptions& options);

enum class Route { Ode, Form8, Closed10, MonteCarlo };
std::string to_string(Route route);
// Accepts "ode" (alias "form7"), "form8", "closed10", "montecarlo".
Route parse_route(const std::string& name);

struct VolumeResult {
  HiReal phi;
  Param t;
  HiReal volume;
  Route route;
  HiReal error_bound;
};

// arccos(sin s / (1 + 2 sin s)); DomainError when sin s <= -1/3 (the ratio
// -1 itself, at sin s = -1/3 exactly, is accepted and gives pi).
HiReal f_integrand(const HiReal& s);

// True when t lies inside the domain's range.
bool in_domain(const Param& t, Domain domain);

// f(t) with absolute error bound <= tol.
QuadratureResult eval_f(const Param& t, const HiReal& tol, Domain domain = Domain::Narrow,
                        const QuadratureOptions& quadrature = {});

// d/dphi vol sigma(phi) = K x(phi).
HiReal schlafli_rate(const HiReal& phi, int schlafli_coefficient = kDefaultSchlafliCoefficient);

// pi^2/8 + integral_{pi/2}^{phi} schlafli_rate(psi) dpsi over the full
// dihedral domain.
VolumeResult vol_by_ode(const Angle& phi, const HiReal& tol, const VolumeOptions& options = {});

// pi^2/8 + 2K integral_0^{pi t} arccos((sin(s/2) + cos(s/2)) / sqrt(2 + 4 sin s)) ds,
// valid for |t| < 1/10 only.
VolumeResult vol_form8(const Param& t, const HiReal& tol, const VolumeOptions& options = {});

// Ratio inside the arccos of the substituted integrand.
HiReal form8_ratio(const HiReal& s);

// 2 arccos(u) through arccos(2u^2 - 1), choosing the branch by the sign of u.
HiReal halfangle_reduce(const HiReal& u);

// pi^2/8 + K pi^2 t - K pi^2 f(t).
VolumeResult vol_closed_form(const Param& t, const HiReal& tol, const VolumeOptions& options = {});

struct McEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

inline constexpr std::uint64_t kMonteCarloBlock = 1 << 16;

// 2 pi^2 * hits / n for n uniform points of S^3 (normalized 4-d standard
// normals from mt19937_64). Samples are split into fixed blocks of
// kMonteCarloBlock, each seeded from (seed, block index), so the estimate does
// not depend on `workers` (0 = hardware concurrency). n >= 10^4.
McEstimate mc_volume(const simplex::SphericalSimplex& s, std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

}  // namespace simplexlab::volume
