#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "simplexlab/hireal.hpp"

namespace testing_support {

using simplexlab::HiReal;
using simplexlab::Precision;
using simplexlab::Rational;

// Seeded source for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::uint64_t bits() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

inline HiReal hr(const char* text, int digits = 60) { return HiReal::parse(text, Precision(digits)); }
inline HiReal hr(const Rational& q, int digits = 60) { return HiReal(q, Precision(digits)); }
inline HiReal ten_to(long e, int digits = 60) { return HiReal::pow10(e, Precision(digits)); }

inline bool within(const HiReal& a, const HiReal& b, const HiReal& tol) { return abs(a - b) <= tol; }

inline std::string show(const HiReal& x) { return x.to_scientific(25); }

}  // namespace testing_support
