#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "simplexlab/cache.hpp"
#include "simplexlab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "simplexlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = simplexlab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("simplexlab-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int significant_digits(const std::string& decimal) {
  int n = 0;
  bool leading = true;
  for (const char c : decimal) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++n;
  }
  return n;
}

const double kPi2 = M_PI * M_PI;

}  // namespace

TEST_CASE("f at zero prints an exact zero") {
  const auto dir = fresh_dir("f-zero");
  const auto r = invoke({"f", "--t", "0/1", "--cache-dir", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("f(0/1) = 0\n", 0) == 0);
}

TEST_CASE("f of the five-cell parameter") {
  const auto dir = fresh_dir("f-five");
  const auto r = invoke({"f", "--t", "1/6", "--extended", "--digits", "60", "--json", "--cache-dir", dir.string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.size() == 4);
  CHECK(j.at("t") == "1/6");
  CHECK(j.at("digits") == 60);
  CHECK(j.at("f") == "0.075" + std::string(58, '0'));
  CHECK(j.at("error_bound").get<std::string>().find("e-") != std::string::npos);
}

TEST_CASE("f writes a cache entry and reproduces it") {
  const auto dir = fresh_dir("f-cache");
  const auto a = invoke({"f", "--t", "1/7", "--extended", "--digits", "60", "--json", "--cache-dir", dir.string()});
  REQUIRE(a.code == 0);
  const auto value = json::parse(a.out).at("f").get<std::string>();
  CHECK(significant_digits(value) == 60);
  const simplexlab::cache::Key key{"f", "1/7", 60};
  const auto file = dir / (key.digest() + ".json");
  REQUIRE(fs::exists(file));
  CHECK(simplexlab::cache::deserialize(slurp(file)).value == value);

  const auto b = invoke({"f", "--t", "1/7", "--extended", "--digits", "60", "--json", "--cache-dir", dir.string()});
  CHECK(b.out == a.out);
  // Recomputation without the cache is bit-identical.
  const auto c = invoke({"f", "--t", "1/7", "--extended", "--digits", "60", "--json", "--cache-dir", ""});
  CHECK(c.out == a.out);
}

TEST_CASE("f exit codes") {
  const auto dir = fresh_dir("f-exit");
  const auto out_of_band = invoke({"f", "--t", "1/6", "--cache-dir", dir.string()});
  CHECK(out_of_band.code == simplexlab::cli::kExitDomain);
  CHECK(out_of_band.err.find("|t| < 1/10") != std::string::npos);
  CHECK(invoke({"f", "--t", "abc", "--cache-dir", dir.string()}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"f", "--t", "3/5", "--extended", "--cache-dir", dir.string()}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"f", "--t", "1/20", "--digits", "3000", "--cache-dir", dir.string()}).code ==
        simplexlab::cli::kExitNonConvergence);
  // A cached value does not bypass the domain check.
  invoke({"f", "--t", "1/6", "--extended", "--cache-dir", dir.string()});
  CHECK(invoke({"f", "--t", "1/6", "--cache-dir", dir.string()}).code == simplexlab::cli::kExitDomain);
}

TEST_CASE("volume of the right-angled simplex by every route") {
  const auto r = invoke({"volume", "--phi", "1/2pi", "--route", "all", "--json", "--digits", "40", "--tol", "1e-40"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("schema") == "simplexlab/1");
  CHECK(j.at("agree") == true);
  CHECK(j.at("routes").size() == 4);
  for (const auto& route : j.at("routes")) {
    CHECK(std::stod(route.at("volume").get<std::string>()) == doctest::Approx(kPi2 / 8).epsilon(0.01));
  }
  for (const auto& d : j.at("deltas")) CHECK(d.at("ok") == true);
  CHECK(j.at("config").at("precision_digits") == 40);
}

TEST_CASE("volume text output and single routes") {
  const auto five = invoke({"volume", "--phi", "2/3pi", "--route", "closed10", "--extended"});
  REQUIRE(five.code == 0);
  CHECK(five.out.find("3.9478417604357434475337963999504604541254797") != std::string::npos);

  const auto by_t = invoke({"volume", "--t", "1/6", "--route", "ode", "--json"});
  REQUIRE(by_t.code == 0);
  CHECK(json::parse(by_t.out).at("phi") == "2/3pi");

  const auto mc = invoke({"volume", "--phi", "2/5pi", "--route", "montecarlo", "--mc-n", "1000000", "--json"});
  REQUIRE(mc.code == 0);
  const auto row = json::parse(mc.out).at("routes").at(0);
  const double estimate = std::stod(row.at("volume").get<std::string>());
  const double stderr_ = std::stod(row.at("standard_error").get<std::string>());
  CHECK(std::abs(estimate - kPi2 / 300) <= 4 * stderr_);
}

TEST_CASE("volume exit codes") {
  CHECK(invoke({"volume", "--phi", "2", "--route", "ode"}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"volume", "--phi", "1pi", "--route", "ode"}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"volume", "--t", "1/6", "--route", "form8"}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"volume", "--route", "ode"}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"volume", "--phi", "1/2pi", "--route", "simpson"}).code != 0);
  // The doubled coefficient moves every quadrature route together, but the
  // sampled volume does not follow.
  const auto doubled = invoke({"volume", "--phi", "2/3pi", "--route", "all", "--extended",
                               "--schlafli-coefficient", "6", "--digits", "40", "--tol", "1e-30"});
  CHECK(doubled.code == simplexlab::cli::kExitRoutesDisagree);
  CHECK(doubled.out.find("DISAGREE") != std::string::npos);
  CHECK(invoke({"--schlafli-coefficient", "4", "f", "--t", "0"}).code != 0);
}

TEST_CASE("scan writes reports and resumes from the cache") {
  const auto dir = fresh_dir("scan");
  const std::string prefix = (dir / "report").string();
  const std::vector<std::string> args{"scan",        "--den-max", "12", "--band", "paper", "--digits", "60",
                                      "--cache-dir", (dir / "cache").string(), "--out", prefix};
  const auto first = invoke(args);
  REQUIRE(first.code == 0);
  CHECK(first.out.find("cache: 0 hits, 5 computed") != std::string::npos);
  const std::string json_text = slurp(prefix + ".json");
  const auto j = json::parse(json_text);
  CHECK(j.at("schema") == "simplexlab/1");
  std::vector<std::string> ts;
  for (const auto& e : j.at("entries")) ts.push_back(e.at("t"));
  CHECK(ts == std::vector<std::string>{"-1/11", "-1/12", "0/1", "1/12", "1/11"});
  int total = 0;
  for (const auto& [name, count] : j.at("summary").items()) total += count.get<int>();
  CHECK(total == 5);

  const std::string csv = slurp(prefix + ".csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.rfind("t,band,digits,verdict", 0) == 0);

  const auto second = invoke(args);
  CHECK(second.out.find("cache: 5 hits, 0 computed") != std::string::npos);
  CHECK(slurp(prefix + ".json") == json_text);
  CHECK(slurp(prefix + ".csv") == csv);
}

TEST_CASE("scan of denominator one") {
  const auto dir = fresh_dir("scan-one");
  const auto r = invoke({"scan", "--den-max", "1", "--json", "--digits", "60", "--cache-dir",
                         (dir / "cache").string(), "--out", (dir / "r").string()});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.at("entries").size() == 1);
  CHECK(j.at("entries")[0].at("t") == "0/1");
  CHECK(j.at("entries")[0].at("candidate") == "0/1");
}

TEST_CASE("verify suites") {
  const auto orbit = invoke({"verify", "--suite", "orbit"});
  CHECK(orbit.code == 0);
  CHECK(orbit.out.find("PASS orbit 16-cell") != std::string::npos);
  const auto schlafli = invoke({"verify", "--suite", "schlafli", "--json"});
  CHECK(schlafli.code == 0);
  CHECK(json::parse(schlafli.out).at("pass") == true);
  const auto doubled = invoke({"verify", "--suite", "schlafli", "--schlafli-coefficient", "6"});
  CHECK(doubled.code == simplexlab::cli::kExitFailure);
  CHECK(doubled.out.find("FAIL schlafli hemisphere") != std::string::npos);
  CHECK(invoke({"verify", "--suite", "bogus"}).code != 0);
}

TEST_CASE("orbit reports") {
  const auto dir = fresh_dir("orbit");
  const auto closed = invoke({"orbit", "--phi", "1/2pi", "--depth", "10", "--json"});
  REQUIRE(closed.code == 0);
  const auto j = json::parse(closed.out);
  CHECK(j.at("closed") == true);
  CHECK(j.at("distinct_tiles") == 16);
  CHECK(j.at("distinct_vertices") == 8);
  CHECK(j.at("multiplicity").at("histogram") == json{{"1", 100}});

  const auto shallow = invoke({"orbit", "--phi", "1/2pi", "--depth", "1", "--json"});
  CHECK(json::parse(shallow.out).at("tiles_per_depth") == json::array({1, 4}));

  const auto path = dir / "five.json";
  const auto five = invoke({"orbit", "--phi", "2/3pi", "--depth", "6", "--out", path.string()});
  REQUIRE(five.code == 0);
  const auto k = json::parse(slurp(path));
  CHECK(k.at("schema") == "simplexlab/1");
  CHECK(k.at("tiles_per_depth").at(0) == 1);
  CHECK(k.contains("evidence"));

  CHECK(invoke({"orbit", "--phi", "1pi"}).code == simplexlab::cli::kExitDomain);
  CHECK(invoke({"orbit", "--phi", "0.5"}).code == simplexlab::cli::kExitDomain);
}

TEST_CASE("config file supplies defaults and flags win") {
  const auto dir = fresh_dir("config");
  const auto cfg = dir / "run.conf";
  std::ofstream(cfg) << "digits=40\nextended=true\ncache-dir=" << (dir / "cache").string() << "\n";
  const auto from_file = invoke({"--config", cfg.string(), "f", "--t", "1/6", "--json"});
  REQUIRE(from_file.code == 0);
  CHECK(json::parse(from_file.out).at("digits") == 40);
  const auto overridden = invoke({"--config", cfg.string(), "f", "--t", "1/6", "--json", "--digits", "50"});
  CHECK(json::parse(overridden.out).at("digits") == 50);

  std::ofstream(dir / "bad.conf") << "no_such_key=1\n";
  CHECK(invoke({"--config", (dir / "bad.conf").string(), "f", "--t", "0"}).code != 0);
}

TEST_CASE("help documents defaults") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--digits") != std::string::npos);
  CHECK(r.out.find("80") != std::string::npos);
  CHECK(r.out.find("1e-60") != std::string::npos);
  CHECK(invoke({}).code != 0);
}
