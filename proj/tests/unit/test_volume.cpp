#include <cmath>

#include "doctest.h"
#include "simplexlab/errors.hpp"
#include "simplexlab/volume.hpp"
#include "testing.hpp"

using namespace simplexlab;
using namespace simplexlab::volume;
using testing_support::Gen;
using testing_support::hr;
using testing_support::show;
using testing_support::ten_to;

namespace {

const Precision kP(60);

HiReal pi2(Precision p = kP) { return HiReal::pi(p) * HiReal::pi(p); }

Param exact(long p, long q) { return Param(Rational(p, q)); }

VolumeOptions extended(int k = kDefaultSchlafliCoefficient) {
  VolumeOptions o;
  o.schlafli_coefficient = k;
  o.domain = Domain::Extended;
  return o;
}

// Composite Simpson for f(t) in long double.
long double simpson_f(long double t) {
  const int n = 20000;
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double b = pi * t, h = b / n;
  auto g = [](long double s) { return std::acos(std::sin(s) / (1 + 2 * std::sin(s))); };
  long double sum = g(0) + g(b);
  for (int i = 1; i < n; ++i) sum += g(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3 / (pi * pi);
}

simplex::SphericalSimplex simplex_at(long num, long den) {
  const Precision p(40);
  return simplex::make_vertices(simplex::dihedral_to_edge(HiReal::pi(p) * num / den));
}

}  // namespace

TEST_CASE("integrand examples") {
  CHECK(abs(f_integrand(HiReal(kP)) - HiReal::pi(kP) / 2) <= ten_to(-58));
  const HiReal at_sixth = f_integrand(HiReal::pi(kP) / 6);
  CHECK(abs(at_sixth - arccos_hp(hr("0.25"))) <= ten_to(-57));
  CHECK(at_sixth.to_fixed(11) == "1.3181160717");
  const HiReal edge = asin(HiReal(-1L, kP) / 3);
  CHECK(abs(f_integrand(edge) - HiReal::pi(kP)) <= ten_to(-20));
  CHECK_THROWS_AS(f_integrand(edge - ten_to(-10)), DomainError);
}

TEST_CASE("f at zero is exactly zero") {
  const auto r = eval_f(exact(0, 1), ten_to(-60));
  CHECK(r.estimate.is_zero());
  CHECK(r.error_bound.is_zero());
  CHECK(r.evaluations == 0);
}

TEST_CASE("tiling values of f") {
  const HiReal tol = ten_to(-50);
  const auto five = eval_f(exact(1, 6), tol, Domain::Extended);
  CHECK(abs(five.estimate - hr("0.075")) <= tol);
  const auto six_hundred = eval_f(exact(-1, 10), tol, Domain::Extended);
  CHECK(abs(six_hundred.estimate - HiReal(Rational(-107, 1800), Precision(80))) <= tol);
  const auto hemisphere = eval_f(exact(1, 2), tol, Domain::Extended);
  CHECK(abs(hemisphere.estimate - HiReal(Rational(5, 24), Precision(80))) <= tol);

  // Independent coarse oracle.
  CHECK(std::abs(static_cast<double>(simpson_f(1.0L / 6)) - 0.075) < 1e-12);
  CHECK(std::abs(static_cast<double>(simpson_f(-0.1L)) + 107.0 / 1800) < 1e-12);
}

TEST_CASE("domain modes") {
  CHECK(in_domain(exact(1, 11), Domain::Narrow));
  CHECK_FALSE(in_domain(exact(1, 10), Domain::Narrow));
  CHECK_FALSE(in_domain(exact(-1, 10), Domain::Narrow));
  CHECK(in_domain(exact(-1, 10), Domain::Extended));
  CHECK(in_domain(exact(1, 2), Domain::Extended));
  CHECK_FALSE(in_domain(exact(51, 100), Domain::Extended));
  // -arcsin(1/3)/pi = -0.10817...
  CHECK(in_domain(exact(-108, 1000), Domain::Extended));
  CHECK_FALSE(in_domain(exact(-109, 1000), Domain::Extended));
  CHECK(in_domain(Param(hr("0.0999")), Domain::Narrow));
  CHECK_THROWS_AS(eval_f(exact(1, 6), ten_to(-30)), DomainError);
  CHECK_THROWS_AS(eval_f(exact(1, 20), HiReal(kP)), DomainError);
}

TEST_CASE("property: f is strictly increasing") {
  HiReal prev(kP);
  for (int k = -99; k <= 99; k += 9) {
    const HiReal v = eval_f(exact(k, 1000), ten_to(-30)).estimate;
    if (k > -99) CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("slope of pi^2 f at zero is pi^2 / 2") {
  const HiReal h = ten_to(-10);
  const HiReal tol = ten_to(-40);
  const HiReal up = eval_f(Param(h), tol).estimate;
  const HiReal down = eval_f(Param(-h), tol).estimate;
  const HiReal slope = pi2() * (up - down) / (2 * h);
  const HiReal expected = pi2() / 2;
  CHECK(abs(slope - expected) / expected < ten_to(-6));
}

TEST_CASE("Schlafli rate") {
  const HiReal pi = HiReal::pi(kP);
  CHECK(abs(schlafli_rate(pi / 2) - 3 * pi / 2) <= ten_to(-57));
  CHECK(abs(schlafli_rate(2 * pi / 3) - 3 * arccos_hp(HiReal(-1L, kP) / 4)) <= ten_to(-57));
  CHECK(abs(schlafli_rate(pi - ten_to(-40)) - 3 * arccos_hp(HiReal(-1L, kP) / 3)) <= ten_to(-15));
  CHECK(abs(schlafli_rate(pi / 2, 6) - 3 * pi) <= ten_to(-57));
  CHECK_THROWS_AS(schlafli_rate(pi / 2, 4), DomainError);
  CHECK_THROWS_AS(schlafli_rate(pi), DomainError);
}

TEST_CASE("volume by the Schlafli ODE") {
  const HiReal tol = ten_to(-40);
  const auto right = vol_by_ode(Angle::pi_times(Rational(1, 2)), tol);
  CHECK(abs(right.volume - pi2() / 8) <= tol);
  CHECK(right.route == Route::Ode);
  const auto five = vol_by_ode(Angle::pi_times(Rational(2, 3)), tol);
  CHECK(abs(five.volume - 2 * pi2() / 5) <= 2 * tol);
  CHECK(five.t.is_exact());
  CHECK(five.t.exact() == Rational(1, 6));
  const auto near_pi = vol_by_ode(Angle::radians(HiReal::pi(kP) - ten_to(-6)), ten_to(-25));
  CHECK(abs(near_pi.volume - pi2()) <= ten_to(-3));
  CHECK_THROWS_AS(vol_by_ode(Angle::pi_times(Rational(1)), tol), DomainError);
  CHECK_THROWS_AS(vol_by_ode(Angle::pi_times(Rational(1, 3)), tol), DomainError);
}

TEST_CASE("substituted form") {
  const HiReal tol = ten_to(-30);
  CHECK(abs(vol_form8(exact(0, 1), tol).volume - pi2() / 8) <= tol);
  const auto a = vol_form8(exact(1, 20), tol);
  const auto b = vol_by_ode(Angle::from_t(exact(1, 20)), tol);
  CHECK(abs(a.volume - b.volume) <= 2 * tol);
  CHECK(a.route == Route::Form8);
  const auto c = vol_form8(exact(-1, 20), tol);
  const auto d = vol_closed_form(exact(-1, 20), tol);
  CHECK(abs(c.volume - d.volume) <= 2 * tol);
  CHECK_THROWS_AS(vol_form8(exact(1, 10), tol), DomainError);
  CHECK_THROWS_AS(vol_form8(exact(1, 6), tol, extended()), DomainError);
}

TEST_CASE("half-angle reduction") {
  CHECK(halfangle_reduce(HiReal(1L, kP)).is_zero());
  CHECK(abs(halfangle_reduce(HiReal(kP)) - HiReal::pi(kP)) <= ten_to(-58));
  CHECK(abs(halfangle_reduce(HiReal(-1L, kP) / 2) - 4 * HiReal::pi(kP) / 3) <= ten_to(-57));
  CHECK_THROWS_AS(halfangle_reduce(HiReal(2L, kP)), DomainError);
  Gen gen(17);
  for (int i = 0; i < 100; ++i) {
    const HiReal u(gen.uniform(-1, 1), kP);
    CHECK(abs(halfangle_reduce(u) - 2 * arccos_hp(u)) <= ten_to(-55));
  }
}

TEST_CASE("closed form") {
  const HiReal tol = ten_to(-40);
  CHECK(abs(vol_closed_form(exact(0, 1), tol).volume - pi2() / 8) <= tol);
  CHECK(abs(vol_closed_form(exact(1, 6), tol, extended()).volume - 2 * pi2() / 5) <= tol);
  CHECK(abs(vol_closed_form(exact(-1, 10), tol, extended()).volume - pi2() / 300) <= tol);
  CHECK_THROWS_AS(vol_closed_form(exact(1, 6), tol), DomainError);
}

TEST_CASE("doubled coefficient misses the hemisphere by 7 pi^2 / 8") {
  const auto r = vol_by_ode(Angle::radians(HiReal::pi(kP) - ten_to(-6)), ten_to(-25), extended(6));
  const HiReal miss = r.volume - pi2();
  CHECK(abs(miss - 7 * pi2() / 8) <= ten_to(-3));
}

TEST_CASE("property: substituted ratio stays inside (0.636, 0.952)") {
  const HiReal lo = hr("0.636"), hi = hr("0.952");
  const HiReal span = HiReal::pi(kP) / 10;
  for (int i = 1; i < 1000; ++i) {
    const HiReal s = -span + 2 * span * i / 1000;
    const HiReal r = form8_ratio(s);
    CHECK(r > lo);
    CHECK(r < hi);
  }
}

TEST_CASE("property: 2 arccos(ratio) = pi - integrand") {
  Gen gen(23);
  const double span = M_PI / 10;
  for (int i = 0; i < 200; ++i) {
    const HiReal s(gen.uniform(-span, span), kP);
    CHECK(abs(2 * arccos_hp(form8_ratio(s)) - (HiReal::pi(kP) - f_integrand(s))) <= ten_to(-55));
  }
}

TEST_CASE("property: routes agree") {
  Gen gen(29);
  const HiReal tol = ten_to(-30);
  for (int i = 0; i < 5; ++i) {
    const Param t(Rational(gen.integer(-990, 990), 10000));
    const auto ode = vol_by_ode(Angle::from_t(t), tol);
    const auto f8 = vol_form8(t, tol);
    const auto c10 = vol_closed_form(t, tol);
    INFO("t = " << t.to_string());
    CHECK(abs(f8.volume - c10.volume) <= 2 * tol);
    CHECK(abs(ode.volume - c10.volume) <= 2 * tol);
    CHECK(ode.volume > 0);
    CHECK(ode.volume < 2 * pi2());
  }
}

TEST_CASE("angle and parameter plumbing") {
  const auto a = Angle::from_t(exact(1, 6));
  CHECK(a.to_string() == "2/3pi");
  CHECK(a.t(kP).exact() == Rational(1, 6));
  const auto r = Angle::from_t(Param(hr("0.05")));
  CHECK(abs(r.radians(kP) - HiReal::pi(kP) * hr("0.55")) <= ten_to(-55));
  CHECK(abs(r.t(kP).at(kP) - hr("0.05")) <= ten_to(-55));
  CHECK(parse_route("form7") == Route::Ode);
  CHECK(to_string(parse_route("closed10")) == "closed10");
  CHECK_THROWS_AS(parse_route("simpson"), DomainError);
}

TEST_CASE("Monte Carlo volume") {
  const auto right = mc_volume(simplex_at(1, 2), 1000000, 1);
  CHECK(std::abs(right.estimate - M_PI * M_PI / 8) <= 4 * right.standard_error);
  CHECK(right.samples == 1000000);
  const double p = static_cast<double>(right.hits) / 1e6;
  CHECK(right.standard_error == doctest::Approx(2 * M_PI * M_PI * std::sqrt(p * (1 - p) / 1e6)));

  const auto five = mc_volume(simplex_at(2, 3), 1000000, 2);
  CHECK(std::abs(five.estimate - 2 * M_PI * M_PI / 5) <= 4 * five.standard_error);
  const auto six_hundred = mc_volume(simplex_at(2, 5), 1000000, 3);
  CHECK(std::abs(six_hundred.estimate - M_PI * M_PI / 300) <= 4 * six_hundred.standard_error);
}

TEST_CASE("Monte Carlo is deterministic and independent of worker count") {
  const auto s = simplex_at(1, 2);
  const auto one = mc_volume(s, 300000, 42, 1);
  const auto three = mc_volume(s, 300000, 42, 3);
  const auto again = mc_volume(s, 300000, 42, 2);
  CHECK(one.hits == three.hits);
  CHECK(one.hits == again.hits);
  CHECK(mc_volume(s, 300000, 43, 1).hits != one.hits);
  CHECK_THROWS_AS(mc_volume(s, 9999, 1), DomainError);
  const auto flat = simplex::make_vertices(simplex::max_edge(Precision(40)));
  CHECK_THROWS_AS(mc_volume(flat, 100000, 1), SingularSimplex);
}
