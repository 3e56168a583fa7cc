#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "huntlab/exponent.hpp"
#include "huntlab/report.hpp"

namespace huntlab {

struct TruncationResult {
  LevyTriplet truncated;
  double removed_mass = 0.0;  // C, the mass of {|x| >= delta}
  double delta = 1.0;
};

// Keep the jumps of size below delta. In general form the linear term absorbs
// the removed compensator; in drift form it is left unchanged.
TruncationResult truncate(const LevyTriplet& t, double delta);

// Re(1/(lambda + psi(z))).
double resolvent_real(const ExponentValue& v, double lambda);
double resolvent_real(const LevyTriplet& t, double lambda, double z);

// Ratio Re(1/(lambda+psi)) / Re(1/(lambda+psi')) against [1/4, 4], psi' the
// truncated exponent. lambda < 2C leaves the verdict inconclusive.
ConditionReport comparison_margin(const LevyTriplet& t, double delta, double lambda,
                                  const std::vector<double>& zgrid);

// Pointwise |Re psi - Re psi'| <= C and |Im psi - Im psi'| <= C.
ConditionReport truncation_bounds(const LevyTriplet& t, double delta, const std::vector<double>& zgrid);

// Exact-sign exponent as a function of z.
using ExponentFn = std::function<std::complex<double>(double)>;
ExponentFn exponent_fn(const LevyTriplet& t);

// z -> integral (1 - e^{-phi(z) x}) mu(dx) for a zero-drift subordinator.
ExponentFn subordinate(ExponentFn outer, const LevyTriplet& sub);

}  // namespace huntlab
