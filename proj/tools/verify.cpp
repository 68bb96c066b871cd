#include "simplexlab/verify.hpp"

#include <cmath>
#include <random>

#include "simplexlab/errors.hpp"
#include "simplexlab/orbit.hpp"
#include "simplexlab/volume.hpp"

namespace simplexlab::verify {

namespace {

using volume::Angle;
using volume::Param;

std::string sci(const HiReal& x) { return x.to_scientific(3); }

volume::VolumeOptions volume_options(const cli::Config& config, volume::Domain domain) {
  volume::VolumeOptions o;
  o.schlafli_coefficient = config.schlafli_coefficient;
  o.domain = domain;
  return o;
}

// Twenty random t with |t| < 1/10; every pair of quadrature routes must
// agree within twice the requested tolerance.
void chain(const cli::Config& config, std::vector<Check>& out) {
  const Precision p(60);
  const HiReal tol = HiReal::pow10(-30, p);
  const HiReal limit = 2 * tol;
  const auto opts = volume_options(config, volume::Domain::Narrow);
  std::mt19937_64 rng(config.mc_seed);
  std::uniform_int_distribution<long> numerator(-9999, 9999);
  for (int i = 0; i < 20; ++i) {
    const Rational t(numerator(rng), 100000);
    const Param tp{Rational(t)};
    const auto ode = volume::vol_by_ode(Angle::from_t(tp), tol, opts);
    const auto f8 = volume::vol_form8(tp, tol, opts);
    const auto c10 = volume::vol_closed_form(tp, tol, opts);
    const HiReal worst = max(max(abs(ode.volume - f8.volume), abs(ode.volume - c10.volume)),
                             abs(f8.volume - c10.volume));
    out.push_back({"chain t=" + canonical_string(t), worst <= limit, "max pairwise delta " + sci(worst)});
  }
}

// The ODE from pi/2 must land on the hemisphere pi^2 as phi -> pi. Only the
// configured coefficient is checked.
void schlafli(const cli::Config& config, std::vector<Check>& out) {
  const Precision p(40);
  const HiReal tol = HiReal::pow10(-25, p);
  const HiReal pi = HiReal::pi(p);
  const HiReal phi = pi - HiReal::pow10(-6, p);
  const auto opts = volume_options(config, volume::Domain::Extended);
  const auto r = volume::vol_by_ode(Angle::radians(phi), tol, opts);
  const HiReal miss = abs(r.volume - pi * pi);
  out.push_back({"schlafli hemisphere K=" + std::to_string(config.schlafli_coefficient),
                 miss <= HiReal::pow10(-3, p), "|vol(pi - 1e-6) - pi^2| = " + sci(miss)});

  const auto mid = volume::vol_by_ode(Angle::pi_times(Rational(2, 3)), tol, opts);
  const HiReal five_cell = 2 * pi * pi / 5;
  const HiReal d = abs(mid.volume - five_cell);
  out.push_back({"schlafli five-cell K=" + std::to_string(config.schlafli_coefficient), d <= 2 * tol,
                 "|vol(2pi/3) - 2pi^2/5| = " + sci(d)});
}

struct Tiling {
  const char* name;
  Rational t;
  Rational pi2_multiple;
  double mc_multiple;
};

// Known regular tilings pin the closed form to exact volumes; Monte Carlo
// checks the geometry independently.
void tilings(const cli::Config& config, std::vector<Check>& out) {
  const Precision p(60);
  const HiReal tol = HiReal::pow10(-40, p);
  const auto opts = volume_options(config, volume::Domain::Extended);
  const HiReal pi2 = HiReal::pi(p) * HiReal::pi(p);
  const Tiling cases[] = {
      {"16-cell", Rational(0), Rational(1, 8), 1.0 / 8},
      {"5-cell", Rational(1, 6), Rational(2, 5), 2.0 / 5},
      {"600-cell", Rational(-1, 10), Rational(1, 300), 1.0 / 300},
  };
  for (const auto& c : cases) {
    const auto r = volume::vol_closed_form(Param(Rational(c.t)), tol, opts);
    const HiReal d = abs(r.volume - pi2 * HiReal(c.pi2_multiple, p));
    out.push_back({std::string("tiling ") + c.name + " closed form", d <= 2 * tol,
                   "|vol - " + canonical_string(c.pi2_multiple) + " pi^2| = " + sci(d)});

    const HiReal phi = HiReal::pi(p) * HiReal(Rational(Rational(1, 2) + c.t), p);
    const auto s = simplex::make_vertices(simplex::dihedral_to_edge(phi.with_precision(Precision(40))));
    const auto mc = volume::mc_volume(s, 1000000, config.mc_seed);
    const double expected = c.mc_multiple * M_PI * M_PI;
    const double z = std::abs(mc.estimate - expected) / mc.standard_error;
    out.push_back({std::string("tiling ") + c.name + " monte carlo", z <= 4,
                   "estimate " + std::to_string(mc.estimate) + ", " + std::to_string(z) + " standard errors"});
  }
}

struct Polytope {
  const char* name;
  Rational phi_over_pi;
  size_t tiles;
  size_t vertices;
};

void orbits(const cli::Config& config, std::vector<Check>& out) {
  const Polytope cases[] = {
      {"5-cell", Rational(2, 3), 5, 5},
      {"16-cell", Rational(1, 2), 16, 8},
      {"600-cell", Rational(2, 5), 600, 120},
  };
  orbit::OrbitOptions opts;
  opts.sample_seed = config.mc_seed;
  for (const auto& c : cases) {
    const auto r = orbit::explore(c.phi_over_pi, 64, 5000, opts);
    bool single_cover = !r.multiplicity_samples.empty();
    for (const auto& s : r.multiplicity_samples) single_cover = single_cover && s.count == 1;
    const bool pass = r.closed && r.distinct_tiles == c.tiles && r.distinct_vertices == c.vertices && single_cover;
    out.push_back({std::string("orbit ") + c.name, pass,
                   std::to_string(r.distinct_tiles) + " tiles, " + std::to_string(r.distinct_vertices) +
                       " vertices, " + r.stop_reason + (single_cover ? ", single cover" : ", multiplicity varies")});
  }
}

}  // namespace

std::vector<Check> run_suite(const std::string& suite, const cli::Config& config) {
  std::vector<Check> out;
  const bool all = suite == "all";
  if (!all && suite != "chain" && suite != "schlafli" && suite != "tilings" && suite != "orbit") {
    throw DomainError("unknown suite \"" + suite + "\"");
  }
  if (all || suite == "chain") chain(config, out);
  if (all || suite == "schlafli") schlafli(config, out);
  if (all || suite == "tilings") tilings(config, out);
  if (all || suite == "orbit") orbits(config, out);
  return out;
}

}  // namespace simplexlab::verify
