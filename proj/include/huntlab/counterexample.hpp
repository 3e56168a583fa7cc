#pragma once

#include <optional>
#include <string>
#include <vector>

#include "huntlab/exponent.hpp"
#include "huntlab/log_space.hpp"
#include "huntlab/report.hpp"

namespace huntlab {

enum class CxMode { paper_log, toy };

struct ToyOverrides {
  double n1 = 64.0;
  double theta_toy = 2.0;
};

struct CounterexampleSpec {
  double alpha = 0.75;
  CxMode mode = CxMode::toy;
  int K = 3;
  std::vector<double> log10_n;
  std::vector<double> n;  // exact values, toy mode only
  double theta = 0.0;     // growth exponent of the full-scale construction, both modes
  double c = 1.0;
  std::optional<ToyOverrides> toy;
};

std::string mode_name(CxMode m);

// max{5/(2-2a), (4+2a)/(2a-1)}, a in (1/2, 1).
double theta(double alpha);

// Smallest integer n with n^{2a-1}/8 > 6/(1-a).
double minimal_n1(double alpha);

// max{sqrt 2, 96^{1/(2a-1)}}.
double recursion_constant(double alpha);

CounterexampleSpec build_spec(double alpha, int K, CxMode mode, const ToyOverrides& toy = {});

// One PowerBand x^{-1-a} on (1/(2 n_k^2), 1/n_k^2) per level.
LevyMeasure counterexample_measure(const CounterexampleSpec& spec, int levels);
LevyTriplet counterexample_triplet(const CounterexampleSpec& spec, int levels);

// Exponent of the first `levels` bands in toy mode without forming n_k^2.
ExponentValue cx_psi(const CounterexampleSpec& spec, int levels, double z);

// Largest |log10 n_k - theta log10 n_{k-1} - log10 c - log10 (k-1)^{1/(2a-1)}| over k >= 2.
double recursion_residual(const CounterexampleSpec& spec);

// Max relative deviation of log10 log10 n_k from its least-squares line over k >= 3.
double double_log_affinity(const CounterexampleSpec& spec);

struct WindowReport {
  int k = 0;
  // Toy mode: z. Paper-log mode: log10 z.
  std::vector<double> z;
  std::vector<LogReal> re, im;  // full exponent over the available levels
  std::vector<ConditionReport> bounds;
  // Estimates that depend on the full-scale thresholds; in toy mode they are only reported.
  std::vector<ConditionReport> aggregates;
  bool all_hold() const;
};

// Samples of the window [n_k/2, 2 n_k], log-spaced; toy mode only.
std::vector<double> window_samples(const CounterexampleSpec& spec, int k, int count = 33);

// Margins are relative to the bound in both modes.
WindowReport verify_window(const CounterexampleSpec& spec, int k, int samples = 33);

// Per-window minimum of |Im psi|/(1 + Re psi); margins are log10 of successive ratios.
ConditionReport ratio_growth(const CounterexampleSpec& spec, const std::vector<int>& ks, int samples = 33);

// Bound on |psi_{>K_used}(z)| from the levels K_used < j <= K.
double tail_bound(const CounterexampleSpec& spec, int K_used, double z);
LogReal tail_bound_log(const CounterexampleSpec& spec, int K_used, double log10_z);

}  // namespace huntlab
