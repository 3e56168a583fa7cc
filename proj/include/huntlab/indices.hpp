#pragma once

#include "huntlab/counterexample.hpp"
#include "huntlab/exponent.hpp"

namespace huntlab {

struct BgIndices {
  double beta = 0.0;
  double beta_pp_estimate = 0.0;
  double sigma_estimate = 0.0;  // NaN unless drift form
};

struct IndexOptions {
  double re_lo = 10.0, re_hi = 1e6;     // range for beta''
  double lap_lo = 1e2, lap_hi = 1e6;    // range for sigma
  int points_per_decade = 12;
};

// beta from the component families, beta'' from dyadic block minima of Re psi,
// sigma from the Laplace exponent.
BgIndices bg_indices(const LevyTriplet& t, const IndexOptions& opt = {});

// The full band family: beta = alpha since the bands accumulate at 0 with
// x^{-1-alpha} density. beta'' is the smallest log Re psi / log z on [n_1^2, n_K]
// (toy mode only, NaN otherwise); sigma is not estimated.
BgIndices bg_indices(const CounterexampleSpec& spec, int points_per_decade = 12);

}  // namespace huntlab
