#pragma once

#include <functional>

#include "simplexlab/hireal.hpp"

namespace simplexlab {

struct QuadratureResult {
  HiReal estimate;
  // Heuristic-but-conservative absolute bound: ten times the change between
  // the last two refinement levels plus a roundoff floor.
  HiReal error_bound;
  long evaluations = 0;
  // Working precision the estimate was certified at.
  int working_digits = 0;
};

struct QuadratureOptions {
  int min_digits = Precision::kMinDigits;
  // Escalation stops (NonConvergence) once working precision would exceed this.
  int max_digits = 2000;
  // Digits carried beyond what the tolerance asks for.
  int guard_digits = 15;
  int max_level = 12;
  long safety_factor = 10;
};

using Integrand = std::function<HiReal(const HiReal&)>;

// Integrand and limits materialized at one working precision. Used when the
// limits are exact quantities (like pi * t for rational t) that must be
// recomputed whenever the kernel escalates precision.
struct IntegrationProblem {
  Integrand integrand;
  HiReal lower;
  HiReal upper;
};
using ProblemFactory = std::function<IntegrationProblem(Precision)>;

// Signed integral of f over [a, b] by tanh-sinh quadrature. The limits are
// taken as exact binary values. Handles integrable square-root singularities
// at the endpoints. Working precision starts from the tolerance and doubles
// up to options.max_digits; throws NonConvergence past that. DomainError from
// the integrand propagates.
QuadratureResult integrate(const Integrand& f, const HiReal& a, const HiReal& b, const HiReal& tol,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const ProblemFactory& problem, const HiReal& tol, const QuadratureOptions& options = {});

// Digits of working precision the kernel starts from for `tol`.
int starting_digits(const HiReal& tol, const QuadratureOptions& options);

}  // namespace simplexlab
