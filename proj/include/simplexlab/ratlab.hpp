#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplexlab/cache.hpp"
#include "simplexlab/hireal.hpp"
#include "simplexlab/volume.hpp"

// Experimental rationality testing of f(t) at rational t. Everything here
// produces evidence; a verdict is never a proof in either direction.
namespace simplexlab::ratlab {

enum class Verdict { ExactRationalCandidate, NoSmallRational, Inconclusive };
std::string to_string(Verdict v);

// Which band a scanned t belongs to.
enum class Band { Narrow, Extended };
std::string to_string(Band b);
Band band_of(const Rational& t);

struct RationalityVerdict {
  Rational t;
  Band band = Band::Narrow;
  int digits_used = 0;
  // Decimal value of f(t) with digits_used significant digits ("0" for zero).
  std::string value;
  std::vector<mpz_class> cf_terms;
  std::optional<Rational> candidate;
  Verdict verdict = Verdict::Inconclusive;
  // |f(t) - p/q| * q^2, rendered in scientific notation; empty without a candidate.
  std::string quality;
  std::string note;
  // Whether the value came from the cache; not part of any report.
  bool from_cache = false;
};

// Partial quotients of v, truncated at max_terms or once a convergent lies
// within 10^(-digits + 5) of v. An exact rational input yields its finite
// expansion.
std::vector<mpz_class> continued_fraction(const Rational& v, int max_terms, int digits);
// Same, using the value's own precision for `digits`.
std::vector<mpz_class> continued_fraction(const HiReal& v, int max_terms);

// Threshold above which a partial quotient signals an exact rational nearby.
mpz_class huge_quotient_threshold(int digits);

// The convergent p/q (q <= max_den) followed by a partial quotient exceeding
// 10^(digits/4), or by the end of the expansion, provided |v - p/q| <= 2 * 10^(-digits).
// Throws PrecisionTooLow when digits < 2 log10(max_den) + 20.
std::optional<Rational> rational_reconstruct(const Rational& v, const mpz_class& max_den, int digits);
std::optional<Rational> rational_reconstruct(const HiReal& v, const mpz_class& max_den, int digits);

struct RatlabOptions {
  volume::Domain domain = volume::Domain::Narrow;
  int max_cf_terms = 40;
  QuadratureOptions quadrature;
};

// Evaluates f(t) to tolerance 10^(-digits) and classifies it. digits >= 60.
// DomainError propagates; precision shortfalls yield an inconclusive verdict.
RationalityVerdict test_rationality(const Rational& t, int digits, const mpz_class& max_den,
                                    const RatlabOptions& options = {}, cache::Store* store = nullptr);

// Classification of an already-computed decimal value of f(t).
RationalityVerdict classify(const Rational& t, const std::string& value, int digits, const mpz_class& max_den,
                            const RatlabOptions& options = {});

struct ScanConfig {
  int digits = 80;
  mpz_class max_den = 100000000;
  volume::Domain domain = volume::Domain::Narrow;
  unsigned workers = 1;
};

struct ScanReport {
  std::vector<RationalityVerdict> entries;
  ScanConfig config;
  std::map<std::string, int> summary;
  int cache_hits = 0;
  int computed = 0;
};

// One verdict per distinct t, sorted by t. Per-entry errors become
// inconclusive entries carrying the error text.
ScanReport scan(const std::vector<Rational>& t_values, const ScanConfig& config, const RatlabOptions& options = {},
                cache::Store* store = nullptr);

// Every p/q in lowest terms with q <= den_max inside the band.
std::vector<Rational> farey_band(long den_max, volume::Domain domain);

}  // namespace simplexlab::ratlab
