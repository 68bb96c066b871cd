#include "simplexlab/ratlab.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "simplexlab/errors.hpp"

namespace simplexlab::ratlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ExactRationalCandidate:
      return "exact-rational-candidate";
    case Verdict::NoSmallRational:
      return "no-small-rational";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(Band b) { return b == Band::Narrow ? "paper" : "extended"; }

Band band_of(const Rational& t) { return abs(t) < Rational(1, 10) ? Band::Narrow : Band::Extended; }

namespace {

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(std::max(0L, e)));
  return r;
}

mpz_class floor_of(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Decimal literal ("-0.0594", "0", "12.5") to its exact rational value.
Rational decimal_to_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.erase(0, 1);
  }
  const auto dot = s.find('.');
  long scale = 0;
  if (dot != std::string::npos) {
    scale = static_cast<long>(s.size() - dot - 1);
    s.erase(dot, 1);
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DomainError("not a plain decimal: \"" + text + "\"");
  }
  Rational r(mpz_class(s, 10), pow10(scale));
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

// Continued-fraction walk over an exact rational, producing partial
// quotients and convergents on demand.
class Expansion {
 public:
  explicit Expansion(const Rational& v) : rest_(v) {}

  bool done() const { return finished_; }

  // Next partial quotient; updates the convergent p/q.
  mpz_class next() {
    const mpz_class a = floor_of(rest_);
    const mpz_class p = a * p1_ + p2_;
    const mpz_class q = a * q1_ + q2_;
    p2_ = p1_;
    q2_ = q1_;
    p1_ = p;
    q1_ = q;
    const Rational frac = rest_ - Rational(a);
    if (frac == 0) {
      finished_ = true;
    } else {
      rest_ = 1 / frac;
    }
    return a;
  }

  // The quotient that would come next, without advancing.
  mpz_class peek() const { return floor_of(rest_); }

  Rational convergent() const { return Rational(p1_, q1_); }
  const mpz_class& denominator() const { return q1_; }

 private:
  Rational rest_;
  mpz_class p1_ = 1, q1_ = 0, p2_ = 0, q2_ = 1;
  bool finished_ = false;
};

}  // namespace

std::vector<mpz_class> continued_fraction(const Rational& v, int max_terms, int digits) {
  std::vector<mpz_class> terms;
  Expansion e(v);
  const mpz_class scale = pow10(digits - 5);
  while (static_cast<int>(terms.size()) < max_terms && !e.done()) {
    terms.push_back(e.next());
    // |v - p/q| < 10^(-(digits-5)); the remaining quotients are noise.
    const Rational gap = abs(v - e.convergent());
    if (gap * scale < 1) break;
  }
  return terms;
}

std::vector<mpz_class> continued_fraction(const HiReal& v, int max_terms) {
  return continued_fraction(v.to_rational(), max_terms, v.precision().digits());
}

mpz_class huge_quotient_threshold(int digits) {
  // floor(10^(digits/4)).
  mpz_class t;
  mpz_root(t.get_mpz_t(), pow10(digits).get_mpz_t(), 4);
  return t;
}

std::optional<Rational> rational_reconstruct(const Rational& v, const mpz_class& max_den, int digits) {
  if (max_den < 1) throw DomainError("denominator bound must be positive");
  // digits >= 2 log10(max_den) + 20  <=>  10^(digits - 20) >= max_den^2.
  if (digits < 20 || pow10(digits - 20) < max_den * max_den) {
    throw PrecisionTooLow(std::to_string(digits) + " digits cannot support denominators up to " + max_den.get_str());
  }
  const mpz_class huge = pow10(digits);
  const Rational tolerance(2, pow10(digits));
  Expansion e(v);
  for (;;) {
    e.next();
    if (e.denominator() > max_den) return std::nullopt;
    bool signature = e.done();
    if (!signature) {
      const mpz_class a = e.peek();
      // a > 10^(digits/4)  <=>  a^4 > 10^digits.
      signature = a * a * a * a > huge;
    }
    if (signature) {
      const Rational candidate = e.convergent();
      if (abs(v - candidate) <= tolerance) return candidate;
      return std::nullopt;
    }
  }
}

std::optional<Rational> rational_reconstruct(const HiReal& v, const mpz_class& max_den, int digits) {
  return rational_reconstruct(v.to_rational(), max_den, digits);
}

RationalityVerdict classify(const Rational& t, const std::string& value, int digits, const mpz_class& max_den,
                            const RatlabOptions& options) {
  RationalityVerdict out;
  out.t = t;
  out.band = band_of(t);
  out.digits_used = digits;
  out.value = value;
  const Rational v = decimal_to_rational(value);
  out.cf_terms = continued_fraction(v, options.max_cf_terms, digits);
  try {
    out.candidate = rational_reconstruct(v, max_den, digits);
    out.verdict = out.candidate ? Verdict::ExactRationalCandidate : Verdict::NoSmallRational;
  } catch (const PrecisionTooLow& ex) {
    out.verdict = Verdict::Inconclusive;
    out.note = ex.what();
  }
  if (out.candidate) {
    const Rational q2(out.candidate->get_den() * out.candidate->get_den());
    const Rational score = abs(v - *out.candidate) * q2;
    out.quality = HiReal(score, Precision(Precision::kMinDigits)).to_scientific(6);
  }
  return out;
}

RationalityVerdict test_rationality(const Rational& t, int digits, const mpz_class& max_den,
                                    const RatlabOptions& options, cache::Store* store) {
  if (digits < 60) throw DomainError("rationality tests need at least 60 digits");
  const volume::Param param(t);
  if (!volume::in_domain(param, options.domain)) {
    throw DomainError("t = " + canonical_string(t) + " outside the " +
                      (options.domain == volume::Domain::Narrow ? "narrow band |t| < 1/10" : "extended range"));
  }
  const cache::Key key{"f", canonical_string(t), digits};
  std::optional<cache::Entry> hit = store ? store->lookup(key) : std::nullopt;
  std::string value;
  if (hit) {
    value = hit->value;
  } else {
    try {
      const HiReal tol = HiReal::pow10(-digits, Precision(Precision::kMinDigits));
      const auto f = volume::eval_f(param, tol, options.domain, options.quadrature);
      value = f.estimate.to_fixed(digits);
      if (store) {
        store->put(cache::Entry{key, value, f.error_bound.to_scientific(6), cache::utc_timestamp()});
      }
    } catch (const NonConvergence& ex) {
      RationalityVerdict out;
      out.t = t;
      out.band = band_of(t);
      out.digits_used = digits;
      out.verdict = Verdict::Inconclusive;
      out.note = ex.what();
      return out;
    }
  }
  auto out = classify(t, value, digits, max_den, options);
  out.from_cache = hit.has_value();
  return out;
}

ScanReport scan(const std::vector<Rational>& t_values, const ScanConfig& config, const RatlabOptions& options,
                cache::Store* store) {
  std::vector<Rational> ts = t_values;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  RatlabOptions opts = options;
  opts.domain = config.domain;
  ScanReport report;
  report.config = config;
  report.entries.resize(ts.size());

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < ts.size(); i = next++) {
      try {
        report.entries[i] = test_rationality(ts[i], config.digits, config.max_den, opts, store);
      } catch (const Error& ex) {
        RationalityVerdict v;
        v.t = ts[i];
        v.band = band_of(ts[i]);
        v.digits_used = config.digits;
        v.verdict = Verdict::Inconclusive;
        v.note = ex.what();
        report.entries[i] = std::move(v);
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(ts.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  for (const Verdict v : {Verdict::ExactRationalCandidate, Verdict::NoSmallRational, Verdict::Inconclusive}) {
    report.summary[to_string(v)] = 0;
  }
  for (const auto& e : report.entries) {
    ++report.summary[to_string(e.verdict)];
    (e.from_cache ? report.cache_hits : report.computed) += 1;
  }
  return report;
}

std::vector<Rational> farey_band(long den_max, volume::Domain domain) {
  if (den_max < 1) throw DomainError("den-max must be at least 1");
  std::vector<Rational> out;
  for (long q = 1; q <= den_max; ++q) {
    // |t| <= 1/2 bounds both bands.
    for (long p = -q; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational t(p, q);
      if (volume::in_domain(volume::Param(t), domain)) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace simplexlab::ratlab
