#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

namespace simplexlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNonConvergence = 3;
inline constexpr int kExitRoutesDisagree = 4;

inline constexpr const char* kSchema = "simplexlab/1";

struct Config {
  int precision_digits = 80;
  std::string tolerance = "1e-60";
  int schlafli_coefficient = 3;
  std::string max_den = "100000000";
  std::string cache_dir = ".simplexlab-cache";
  bool extended_domain = false;
  std::uint64_t mc_seed = 1;
  bool json = false;
};

// Serialized into every report so a run can be reproduced.
nlohmann::ordered_json to_json(const Config& config);

// Entry point shared by the executable and the tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace simplexlab::cli
