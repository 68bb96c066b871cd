#include "simplexlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "simplexlab/cache.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/orbit.hpp"
#include "simplexlab/ratlab.hpp"
#include "simplexlab/report.hpp"
#include "simplexlab/verify.hpp"
#include "simplexlab/volume.hpp"

namespace simplexlab::cli {

using nlohmann::ordered_json;

ordered_json to_json(const Config& c) {
  return {{"precision_digits", c.precision_digits}, {"tolerance", c.tolerance},
          {"schlafli_coefficient", c.schlafli_coefficient}, {"max_den", c.max_den},
          {"cache_dir", c.cache_dir}, {"extended_domain", c.extended_domain},
          {"mc_seed", c.mc_seed}};
}

namespace {

volume::Domain domain_of(const Config& c) {
  return c.extended_domain ? volume::Domain::Extended : volume::Domain::Narrow;
}

std::unique_ptr<cache::Store> open_store(const Config& c) {
  if (c.cache_dir.empty()) return nullptr;
  return std::make_unique<cache::DirectoryStore>(c.cache_dir);
}

// "p/qpi", "ppi" or "pi".
Rational parse_pi_multiple(const std::string& text) {
  constexpr std::string_view suffix = "pi";
  if (text.size() < suffix.size() || text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0) {
    throw DomainError("angle \"" + text + "\" must be a rational multiple of pi, e.g. 2/3pi");
  }
  const std::string head = text.substr(0, text.size() - suffix.size());
  return head.empty() ? Rational(1) : parse_rational(head);
}

mpz_class parse_max_den(const std::string& text) {
  mpz_class v;
  if (v.set_str(text, 10) != 0 || v < 1) throw DomainError("max-den must be a positive integer, got " + text);
  return v;
}

HiReal parse_tolerance(const Config& c) {
  const HiReal tol = HiReal::parse(c.tolerance, Precision(std::max(c.precision_digits, 60)));
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  return tol;
}

// ---- f ----

struct FArgs {
  std::string t;
};

int cmd_f(const Config& c, bool tol_given, const FArgs& a, std::ostream& out) {
  const Rational t = parse_rational(a.t);
  const Precision p(std::max(c.precision_digits, Precision::kMinDigits));
  HiReal tol = HiReal::pow10(-c.precision_digits, p);
  if (tol_given) tol = min(tol, parse_tolerance(c));

  const cache::Key key{"f", canonical_string(t), c.precision_digits};
  auto store = open_store(c);
  std::optional<cache::Entry> entry = store ? store->lookup(key) : std::nullopt;
  if (!entry) {
    const auto r = volume::eval_f(volume::Param(Rational(t)), tol, domain_of(c));
    entry = cache::Entry{key, r.estimate.to_fixed(c.precision_digits), r.error_bound.to_scientific(3),
                         cache::utc_timestamp()};
    if (store) store->put(*entry);
  } else if (!volume::in_domain(volume::Param(Rational(t)), domain_of(c))) {
    // The cached value is domain-agnostic; the request still has to be valid.
    volume::eval_f(volume::Param(Rational(t)), tol, domain_of(c));
  }

  if (c.json) {
    out << ordered_json{{"t", canonical_string(t)},
                        {"digits", c.precision_digits},
                        {"f", entry->value},
                        {"error_bound", entry->error_bound}}
               .dump(2)
        << '\n';
  } else {
    out << "f(" << canonical_string(t) << ") = " << entry->value << '\n'
        << "error bound: " << entry->error_bound << '\n';
  }
  return kExitOk;
}

// ---- volume ----

struct VolumeArgs {
  std::string phi;
  std::string t;
  std::string route = "closed10";
  std::uint64_t mc_n = 1000000;
};

struct RouteRow {
  std::string route;
  HiReal volume;
  HiReal error_bound;
  bool statistical = false;
};

RouteRow monte_carlo_row(const volume::Angle& angle, const Config& c, std::uint64_t n) {
  const Precision p(40);
  const auto s = simplex::make_vertices(simplex::dihedral_to_edge(angle.radians(p)));
  const auto mc = volume::mc_volume(s, n, c.mc_seed);
  return RouteRow{"montecarlo", HiReal(mc.estimate, p), HiReal(mc.standard_error, p), true};
}

RouteRow quadrature_row(volume::Route route, const volume::Angle& angle, const HiReal& tol, const Config& c) {
  volume::VolumeOptions opts;
  opts.schlafli_coefficient = c.schlafli_coefficient;
  opts.domain = domain_of(c);
  const volume::Param t = angle.t(tol.precision());
  volume::VolumeResult r = [&] {
    switch (route) {
      case volume::Route::Ode:
        return volume::vol_by_ode(angle, tol, opts);
      case volume::Route::Form8:
        return volume::vol_form8(t, tol, opts);
      default:
        return volume::vol_closed_form(t, tol, opts);
    }
  }();
  return RouteRow{volume::to_string(route), r.volume, r.error_bound, false};
}

int cmd_volume(const Config& c, const VolumeArgs& a, std::ostream& out) {
  const volume::Angle angle = a.phi.empty() ? volume::Angle::from_t(volume::Param(parse_rational(a.t)))
                                            : volume::Angle::pi_times(parse_pi_multiple(a.phi));
  const HiReal tol = parse_tolerance(c);
  const volume::Param t = angle.t(tol.precision());
  volume::VolumeOptions probe;
  probe.schlafli_coefficient = c.schlafli_coefficient;
  volume::validate(probe);

  std::vector<RouteRow> rows;
  std::vector<std::string> skipped;
  if (a.route == "all") {
    rows.push_back(quadrature_row(volume::Route::Ode, angle, tol, c));
    if (volume::in_domain(t, volume::Domain::Narrow)) {
      rows.push_back(quadrature_row(volume::Route::Form8, angle, tol, c));
    } else {
      skipped.push_back("form8: t outside |t| < 1/10");
    }
    if (volume::in_domain(t, domain_of(c))) {
      rows.push_back(quadrature_row(volume::Route::Closed10, angle, tol, c));
    } else {
      skipped.push_back(c.extended_domain ? "closed10: t outside the extended range"
                                          : "closed10: t outside |t| < 1/10 (try --extended)");
    }
    rows.push_back(monte_carlo_row(angle, c, a.mc_n));
  } else {
    const volume::Route route = volume::parse_route(a.route);
    rows.push_back(route == volume::Route::MonteCarlo ? monte_carlo_row(angle, c, a.mc_n)
                                                      : quadrature_row(route, angle, tol, c));
  }

  struct Delta {
    std::string a, b;
    HiReal delta, bound;
    bool ok;
  };
  std::vector<Delta> deltas;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = i + 1; j < rows.size(); ++j) {
      const Precision p = std::min(rows[i].volume.precision(), rows[j].volume.precision());
      const HiReal d = abs(rows[i].volume.with_precision(p) - rows[j].volume.with_precision(p));
      const bool mc = rows[i].statistical || rows[j].statistical;
      // Four standard errors for a statistical route, the requested tolerance per side otherwise.
      const HiReal bound = mc ? 4 * max(rows[i].error_bound, rows[j].error_bound).with_precision(p) +
                                    tol.with_precision(p)
                              : 2 * tol.with_precision(p);
      deltas.push_back({rows[i].route, rows[j].route, d, bound, d <= bound});
    }
  }
  const bool agree = std::all_of(deltas.begin(), deltas.end(), [](const Delta& d) { return d.ok; });
  const int shown = c.precision_digits;

  if (c.json) {
    ordered_json j;
    j["schema"] = kSchema;
    j["kind"] = "volume";
    j["config"] = to_json(c);
    j["phi"] = angle.to_string();
    j["t"] = t.to_string();
    ordered_json routes = ordered_json::array();
    for (const auto& r : rows) {
      routes.push_back({{"route", r.route},
                        {"volume", r.volume.to_fixed(r.statistical ? 8 : shown)},
                        {r.statistical ? "standard_error" : "error_bound", r.error_bound.to_scientific(3)}});
    }
    j["routes"] = std::move(routes);
    ordered_json ds = ordered_json::array();
    for (const auto& d : deltas) {
      ds.push_back({{"a", d.a},
                    {"b", d.b},
                    {"delta", d.delta.to_scientific(3)},
                    {"bound", d.bound.to_scientific(3)},
                    {"ok", d.ok}});
    }
    j["deltas"] = std::move(ds);
    j["skipped"] = skipped;
    j["agree"] = agree;
    out << j.dump(2) << '\n';
  } else {
    out << "phi = " << angle.to_string() << "  (t = " << t.to_string() << ")\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(12) << r.route << r.volume.to_fixed(r.statistical ? 8 : shown) << "  "
          << (r.statistical ? "stderr " : "err ") << r.error_bound.to_scientific(3) << '\n';
    }
    for (const auto& s : skipped) out << "skipped " << s << '\n';
    if (!deltas.empty()) out << "pairwise deltas\n";
    for (const auto& d : deltas) {
      out << "  " << std::left << std::setw(24) << (d.a + " vs " + d.b) << d.delta.to_scientific(3) << "  bound "
          << d.bound.to_scientific(3) << (d.ok ? "  ok" : "  DISAGREE") << '\n';
    }
  }
  return agree ? kExitOk : kExitRoutesDisagree;
}

// ---- scan ----

struct ScanArgs {
  long den_max = 12;
  std::string band = "paper";
  std::string out = "scan-report";
  unsigned workers = 1;
};

int cmd_scan(const Config& c, const ScanArgs& a, std::ostream& out) {
  ratlab::ScanConfig sc;
  sc.digits = c.precision_digits;
  sc.max_den = parse_max_den(c.max_den);
  sc.domain = a.band == "extended" ? volume::Domain::Extended : volume::Domain::Narrow;
  sc.workers = std::max(1u, a.workers);
  ratlab::RatlabOptions ro;
  ro.domain = sc.domain;

  auto store = open_store(c);
  const auto report = ratlab::scan(ratlab::farey_band(a.den_max, sc.domain), sc, ro, store.get());
  const auto json = report::scan_to_json(report, c, a.den_max, a.band);
  const std::string text = json.dump(2) + "\n";
  const std::filesystem::path base(a.out);
  cache::write_atomically(base.string() + ".json", text);
  cache::write_atomically(base.string() + ".csv", report::scan_to_csv(report));

  if (c.json) {
    out << text;
  } else {
    out << "scanned " << report.entries.size() << " values of t (den <= " << a.den_max << ", " << a.band
        << " band) at " << sc.digits << " digits\n";
    for (const auto& [name, count] : report.summary) out << "  " << std::left << std::setw(26) << name << count << '\n';
    out << "cache: " << report.cache_hits << " hits, " << report.computed << " computed\n"
        << "wrote " << base.string() << ".json and " << base.string() << ".csv\n";
  }
  return kExitOk;
}

// ---- verify ----

int cmd_verify(const Config& c, const std::string& suite, std::ostream& out) {
  const auto checks = verify::run_suite(suite, c);
  const bool pass = std::all_of(checks.begin(), checks.end(), [](const verify::Check& k) { return k.pass; });
  if (c.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& k : checks) arr.push_back({{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
    out << ordered_json{{"schema", kSchema}, {"kind", "verify"}, {"suite", suite}, {"pass", pass}, {"checks", arr}}
               .dump(2)
        << '\n';
  } else {
    for (const auto& k : checks) out << (k.pass ? "PASS " : "FAIL ") << k.name << ": " << k.detail << '\n';
    out << (pass ? "all checks passed\n" : "some checks FAILED\n");
  }
  return pass ? kExitOk : kExitFailure;
}

// ---- orbit ----

struct OrbitArgs {
  std::string phi;
  int depth = 8;
  size_t max_tiles = 10000;
  int quantum = 40;
  int samples = 100;
  std::string out;
};

int cmd_orbit(const Config& c, bool digits_given, const OrbitArgs& a, std::ostream& out) {
  orbit::OrbitOptions opts;
  opts.precision_digits = digits_given ? c.precision_digits : 60;
  opts.quantum = a.quantum;
  opts.samples = a.samples;
  opts.sample_seed = c.mc_seed;
  const auto r = orbit::explore(parse_pi_multiple(a.phi), a.depth, a.max_tiles, opts);
  const auto json = report::orbit_to_json(r, c);
  if (!a.out.empty()) cache::write_atomically(a.out, json.dump(2) + "\n");
  if (c.json) {
    out << json.dump(2) << '\n';
    return kExitOk;
  }
  out << "seed phi = " << canonical_string(r.seed_phi_over_pi) << "pi\n"
      << "tiles per depth:";
  for (const auto n : r.tiles_per_depth) out << ' ' << n;
  out << "\ndistinct tiles: " << r.distinct_tiles << "\ndistinct vertices: " << r.distinct_vertices
      << "\nstop: " << r.stop_reason << (r.closed ? " (closed)" : "") << '\n'
      << "multiplicity histogram:";
  for (const auto& [count, n] : json["multiplicity"]["histogram"].items()) out << ' ' << count << "x" << n;
  out << '\n';
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  if (!a.out.empty()) out << "wrote " << a.out << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volumes of regular spherical 3-simplices and rationality experiments on f(t)", "simplexlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file supplying defaults for the global options");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Config c;
  app.add_option("--digits", c.precision_digits, "Working and printed decimal digits")
      ->capture_default_str()
      ->check(CLI::Range(Precision::kMinDigits, 100000));
  app.add_option("--tol", c.tolerance, "Absolute tolerance of quadrature routes")->capture_default_str();
  app.add_flag("--extended", c.extended_domain, "Accept t over (-arcsin(1/3)/pi, 1/2]");
  app.add_option("--schlafli-coefficient", c.schlafli_coefficient, "Coefficient K in dV/dphi = K x(phi)")
      ->capture_default_str()
      ->check(CLI::IsMember({3, 6}));
  app.add_option("--max-den", c.max_den, "Largest denominator accepted by rational reconstruction")
      ->capture_default_str();
  app.add_option("--cache-dir", c.cache_dir, "Results cache directory; empty disables")->capture_default_str();
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--seed", c.mc_seed, "Monte Carlo and sampling seed")->capture_default_str();

  FArgs fa;
  auto* f = app.add_subcommand("f", "Evaluate f(t) at rational t");
  f->add_option("--t", fa.t, "t as p/q")->required();

  VolumeArgs va;
  auto* vol = app.add_subcommand("volume", "Volume of the regular simplex with dihedral angle phi");
  auto* phi_opt = vol->add_option("--phi", va.phi, "Dihedral angle as a multiple of pi, e.g. 2/3pi");
  auto* t_opt = vol->add_option("--t", va.t, "phi = pi/2 + pi t, t as p/q");
  phi_opt->excludes(t_opt);
  vol->add_option("--route", va.route, "ode | form8 | closed10 | montecarlo | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"ode", "form7", "form8", "closed10", "montecarlo", "all"}));
  vol->add_option("--mc-n", va.mc_n, "Monte Carlo sample count")->capture_default_str();

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Rationality scan over a Farey band of t");
  scan->add_option("--den-max", sa.den_max, "Largest denominator of t")->capture_default_str()->check(
      CLI::Range(1L, 100000L));
  scan->add_option("--band", sa.band, "paper (|t| < 1/10) | extended")
      ->capture_default_str()
      ->check(CLI::IsMember({"paper", "extended"}));
  scan->add_option("--out", sa.out, "Report path prefix (.json and .csv are appended)")->capture_default_str();
  scan->add_option("--workers", sa.workers, "Worker threads")->capture_default_str();

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run self-check suites");
  ver->add_option("--suite", suite, "chain | schlafli | tilings | orbit | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"chain", "schlafli", "tilings", "orbit", "all"}));

  OrbitArgs oa;
  auto* orb = app.add_subcommand("orbit", "Explore the facet-reflection orbit of a regular simplex");
  orb->add_option("--phi", oa.phi, "Seed dihedral angle as a multiple of pi")->required();
  orb->add_option("--depth", oa.depth, "Maximum generation")->capture_default_str();
  orb->add_option("--max-tiles", oa.max_tiles, "Tile cap")->capture_default_str();
  orb->add_option("--quantum", oa.quantum, "Key rounding digits")->capture_default_str();
  orb->add_option("--samples", oa.samples, "Multiplicity sample points")->capture_default_str();
  orb->add_option("--out", oa.out, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*f) return cmd_f(c, app.count("--tol") > 0, fa, out);
    if (*vol) {
      if (va.phi.empty() == va.t.empty()) throw DomainError("volume needs exactly one of --phi or --t");
      return cmd_volume(c, va, out);
    }
    if (*scan) return cmd_scan(c, sa, out);
    if (*ver) return cmd_verify(c, suite, out);
    if (*orb) return cmd_orbit(c, app.count("--digits") > 0, oa, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SingularSimplex& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace simplexlab::cli
