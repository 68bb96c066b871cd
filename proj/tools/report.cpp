#include "simplexlab/report.hpp"

#include <map>
#include <sstream>

namespace simplexlab::report {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json verdict_to_json(const ratlab::RationalityVerdict& v) {
  ordered_json terms = ordered_json::array();
  for (const auto& a : v.cf_terms) terms.push_back(a.get_str());
  ordered_json j;
  j["t"] = canonical_string(v.t);
  j["band"] = ratlab::to_string(v.band);
  j["digits"] = v.digits_used;
  j["value"] = v.value;
  j["cf_terms"] = std::move(terms);
  j["candidate"] = v.candidate ? ordered_json(canonical_string(*v.candidate)) : ordered_json(nullptr);
  j["verdict"] = ratlab::to_string(v.verdict);
  j["quality"] = v.quality.empty() ? ordered_json(nullptr) : ordered_json(v.quality);
  j["note"] = v.note;
  return j;
}

ordered_json scan_to_json(const ratlab::ScanReport& r, const cli::Config& config, long den_max,
                          const std::string& band) {
  ordered_json j;
  j["schema"] = cli::kSchema;
  j["kind"] = "scan";
  j["config"] = cli::to_json(config);
  j["scan"] = {{"den_max", den_max},
               {"band", band},
               {"digits", r.config.digits},
               {"max_den", r.config.max_den.get_str()}};
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) entries.push_back(verdict_to_json(e));
  j["entries"] = std::move(entries);
  ordered_json summary;
  for (const auto& [name, count] : r.summary) summary[name] = count;
  j["summary"] = std::move(summary);
  return j;
}

std::string scan_to_csv(const ratlab::ScanReport& r) {
  std::ostringstream out;
  out << "t,band,digits,verdict,candidate,quality,value,cf_terms,note\n";
  for (const auto& e : r.entries) {
    std::string terms;
    for (size_t i = 0; i < e.cf_terms.size(); ++i) {
      if (i) terms += ' ';
      terms += e.cf_terms[i].get_str();
    }
    out << csv_field(canonical_string(e.t)) << ',' << ratlab::to_string(e.band) << ',' << e.digits_used << ','
        << ratlab::to_string(e.verdict) << ',' << (e.candidate ? canonical_string(*e.candidate) : "") << ','
        << e.quality << ',' << e.value << ',' << csv_field(terms) << ',' << csv_field(e.note) << '\n';
  }
  return out.str();
}

ordered_json orbit_to_json(const orbit::OrbitReport& r, const cli::Config& config) {
  ordered_json j;
  j["schema"] = cli::kSchema;
  j["kind"] = "orbit";
  j["config"] = cli::to_json(config);
  j["seed_phi"] = canonical_string(r.seed_phi_over_pi) + "pi";
  j["max_depth"] = r.max_depth;
  j["max_tiles"] = r.max_tiles;
  j["precision_digits"] = r.options.precision_digits;
  j["quantum"] = r.options.quantum;
  j["tiles_per_depth"] = r.tiles_per_depth;
  j["distinct_tiles"] = r.distinct_tiles;
  j["distinct_vertices"] = r.distinct_vertices;
  j["closed"] = r.closed;
  j["stop_reason"] = r.stop_reason;

  std::map<int, int> histogram;
  ordered_json samples = ordered_json::array();
  for (const auto& s : r.multiplicity_samples) {
    samples.push_back({{"point", s.point}, {"count", s.count}});
    ++histogram[s.count];
  }
  ordered_json hist = ordered_json::object();
  for (const auto& [count, n] : histogram) hist[std::to_string(count)] = n;
  const bool constant = histogram.size() == 1;

  j["multiplicity"] = {{"sample_seed", r.options.sample_seed},
                       {"boundary_margin", r.options.boundary_margin},
                       {"samples", std::move(samples)},
                       {"histogram", std::move(hist)}};
  j["evidence"] = {
      {"finite_vertex_set_observed", r.closed},
      {"constant_multiplicity_observed", constant && !r.multiplicity_samples.empty()},
      {"multiplicity", constant && !r.multiplicity_samples.empty() ? ordered_json(histogram.begin()->first)
                                                                   : ordered_json(nullptr)},
  };
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace simplexlab::report
