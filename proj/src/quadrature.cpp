#include "simplexlab/quadrature.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "simplexlab/errors.hpp"

namespace simplexlab {

namespace {

// Tanh-sinh node at u >= 0: abscissa complement 1 - tanh(pi/2 sinh u) and the
// weight (pi/2) cosh u / cosh^2(pi/2 sinh u), both measured on [-1, 1].
struct Node {
  HiReal complement;
  HiReal weight;
};

Node make_node(const HiReal& u, const HiReal& half_pi) {
  const HiReal eu = exp(u);
  const HiReal v = half_pi * (eu - 1 / eu) / 2;
  const HiReal ev = exp(v);
  const HiReal cosh_v = (ev + 1 / ev) / 2;
  return {2 / (ev * ev + 1), half_pi * ((eu + 1 / eu) / 2) / (cosh_v * cosh_v)};
}

std::optional<QuadratureResult> tanh_sinh(const IntegrationProblem& problem, const HiReal& tol, Precision p,
                                          const QuadratureOptions& options, long& evaluations) {
  HiReal a = problem.lower.with_precision(p);
  HiReal b = problem.upper.with_precision(p);
  if (a == b) {
    return QuadratureResult{HiReal(p), HiReal(p), 0, p.digits()};
  }
  const bool flipped = b < a;
  if (flipped) std::swap(a, b);

  const HiReal half_pi = HiReal::pi(p) / 2;
  const HiReal center = (a + b) / 2;
  const HiReal half_width = (b - a) / 2;
  const HiReal eps = HiReal::pow10(-p.digits(), p);
  const HiReal negligible_weight = HiReal::pow10(-(p.digits() + options.guard_digits), p);
  // Abscissae closer to an endpoint than this collapse onto it.
  const HiReal min_offset = max(max(abs(a), abs(b)), half_width) * eps * 4;

  const Integrand& f = problem.integrand;
  HiReal sum(p);
  HiReal l1(p);
  auto accumulate = [&](const HiReal& weight, const HiReal& value) {
    sum += weight * value;
    l1 += weight * abs(value);
    ++evaluations;
  };
  // Adds both mirror nodes at +u and -u; false once the nodes are exhausted.
  auto add_pair = [&](const HiReal& u) {
    const Node node = make_node(u, half_pi);
    const HiReal offset = half_width * node.complement;
    if (offset < min_offset || node.weight < negligible_weight) return false;
    accumulate(node.weight, f(b - offset));
    accumulate(node.weight, f(a + offset));
    return true;
  };

  accumulate(half_pi, f(center));
  for (long k = 1;; ++k) {
    if (!add_pair(HiReal(k, p))) break;
  }
  HiReal previous = half_width * sum;

  for (int level = 1; level <= options.max_level; ++level) {
    const long denominator = 1L << level;
    const HiReal h = HiReal(1L, p) / denominator;
    for (long k = 1;; k += 2) {
      if (!add_pair(HiReal(k, p) / denominator)) break;
    }
    const HiReal current = h * half_width * sum;
    const HiReal roundoff = eps * 100 * h * half_width * l1;
    const HiReal error = abs(current - previous) * options.safety_factor + roundoff;
    if (level >= 3 && error <= tol) {
      return QuadratureResult{flipped ? -current : current, error, evaluations, p.digits()};
    }
    previous = current;
  }
  return std::nullopt;
}

}  // namespace

int starting_digits(const HiReal& tol, const QuadratureOptions& options) {
  // tol < 10^e, so resolving it takes about -e + 1 digits.
  const long needed = -(tol.decimal_exponent() - 1) + options.guard_digits;
  return static_cast<int>(std::max<long>({options.min_digits, needed, Precision::kMinDigits}));
}

QuadratureResult integrate(const ProblemFactory& problem, const HiReal& tol, const QuadratureOptions& options) {
  if (!(tol > 0)) throw DomainError("quadrature tolerance must be positive");
  int digits = starting_digits(tol, options);
  if (digits > options.max_digits) {
    throw NonConvergence("tolerance " + tol.to_scientific(3) + " needs more than " +
                         std::to_string(options.max_digits) + " digits");
  }
  long evaluations = 0;
  for (;;) {
    const Precision p(digits);
    if (auto result = tanh_sinh(problem(p), tol, p, options, evaluations)) {
      result->evaluations = evaluations;
      return std::move(*result);
    }
    if (digits >= options.max_digits) {
      throw NonConvergence("quadrature did not reach " + tol.to_scientific(3) + " at " + std::to_string(digits) +
                           " digits");
    }
    digits = std::min(digits * 2, options.max_digits);
  }
}

QuadratureResult integrate(const Integrand& f, const HiReal& a, const HiReal& b, const HiReal& tol,
                           const QuadratureOptions& options) {
  return integrate(
      [&](Precision p) {
        return IntegrationProblem{f, a.with_precision(p), b.with_precision(p)};
      },
      tol, options);
}

}  // namespace simplexlab
