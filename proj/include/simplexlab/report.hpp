#pragma once

#include <string>

#include "json.hpp"
#include "simplexlab/cli.hpp"
#include "simplexlab/orbit.hpp"
#include "simplexlab/ratlab.hpp"

namespace simplexlab::report {

nlohmann::ordered_json verdict_to_json(const ratlab::RationalityVerdict& v);

// {"schema", "kind": "scan", "config", "scan", "entries", "summary"}. Contains
// nothing run-dependent, so identical inputs give byte-identical output.
nlohmann::ordered_json scan_to_json(const ratlab::ScanReport& r, const cli::Config& config, long den_max,
                                    const std::string& band);
std::string scan_to_csv(const ratlab::ScanReport& r);

nlohmann::ordered_json orbit_to_json(const orbit::OrbitReport& r, const cli::Config& config);

// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& s);

}  // namespace simplexlab::report
