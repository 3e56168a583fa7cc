#pragma once

#include <functional>
#include <string>
#include <vector>

#include "huntlab/exponent.hpp"
#include "huntlab/report.hpp"

namespace huntlab {

struct GaugeFunction {
  enum class Kind { constant, log, log_power, power };
  Kind kind = Kind::log;
  double param = 1.0;  // M, unused, p, or epsilon

  static GaugeFunction constant(double M) { return {Kind::constant, M}; }
  static GaugeFunction log() { return {Kind::log, 1.0}; }
  static GaugeFunction log_power(double p) { return {Kind::log_power, p}; }
  static GaugeFunction power(double eps) { return {Kind::power, eps}; }

  double operator()(double lambda) const;
  std::string name() const;
  bool operator==(const GaugeFunction&) const = default;
};

// Whether the integral of dlambda/(lambda f(lambda)) diverges at infinity.
bool gauge_divergence(const GaugeFunction& g);

// |Im psi| / (1 + Re psi) along the grid; margin is the sup minus the value.
ConditionReport kf_ratio_profile(const LevyTriplet& t, const std::vector<double>& zgrid);

// Margin A f(A) - B.
ConditionReport rao_check(const LevyTriplet& t, const GaugeFunction& g, const std::vector<double>& zgrid);
ConditionReport rao_check(const std::vector<double>& zgrid, const std::vector<ExponentValue>& psi,
                          const GaugeFunction& g);

// Integrability of |psi_2| / B^2 with psi_2 = Im psi on {|Im psi| > A f(A)},
// measured on dyadic shells of [zlo, zhi]; values are the shell integrals.
ConditionReport ekfr_check(const LevyTriplet& t, const GaugeFunction& g, double zlo, double zhi);

// Decay fit of positive shell integrals: c z^{-p} (log z)^{-q}.
struct TailFit {
  double p = 0.0;
  double q = 0.0;
  bool convergent = false;
  double tail_estimate = 0.0;
};
TailFit fit_shell_tail(const std::vector<double>& shell_lo, const std::vector<double>& shell_values);

enum class GrowthKind { re, abs };

// Dyadic block minima of Re psi/(|z| log^gamma |z|) or |psi|/(|z| log^{1+gamma} |z|).
ConditionReport growth_check(const LevyTriplet& t, double gamma, GrowthKind kind, const std::vector<double>& zgrid,
                             double eps_rel = 1e-3);

enum class Diagnosis { converges, diverges, inconclusive };
std::string diagnosis_name(Diagnosis d);

struct KestenResult {
  double partial = 0.0;  // integral over [-zmax, zmax]
  double abs_err = 0.0;
  double tail_exponent = 0.0;
  Diagnosis diagnosis = Diagnosis::inconclusive;
};
KestenResult kesten_integral(const LevyTriplet& t, double zmax);

// Truncated k-indexed weight sum with f = log, integrated over [-zmax, zmax].
using SpectralFn = std::function<double(double)>;
double rao_limit_term(const LevyTriplet& t, const SpectralFn& nu_hat, double lambda, int kmax, double zmax,
                      double zmin = 1e-3);
// Same integral restricted to explicit windows [lo, hi] on the positive axis (mirrored).
double rao_limit_term_windows(const LevyTriplet& t, const SpectralFn& nu_hat, double lambda, int kmax,
                              const std::vector<std::pair<double, double>>& windows);

}  // namespace huntlab
