#pragma once

#include <string>
#include <vector>

#include "simplexlab/cli.hpp"

// Self-check suites behind `simplexlab verify`.
namespace simplexlab::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

// suite: chain | schlafli | tilings | orbit | all. DomainError on unknown names.
std::vector<Check> run_suite(const std::string& suite, const cli::Config& config);

}  // namespace simplexlab::verify
