#pragma once

#include <vector>

#include "huntlab/counterexample.hpp"
#include "huntlab/report.hpp"

namespace huntlab {

// varsigma is zeta - eta, the difference that vanishes on [-omega, omega].
enum class PolyaKind { zeta, eta, varsigma };

// omega >= 10.
double polya_eval(double omega, PolyaKind kind, double x);

// Where the triangle of eta reaches 0; varsigma equals |x|^{-0.1} beyond it.
double polya_plateau_start(double omega);

struct SignedCF {
  CounterexampleSpec spec;
  int K = 1;
  bool disjoint = true;  // supports of the xi_k are pairwise disjoint
};

// Requires a spec whose n_k are doubles with n_1 >= 20.
SignedCF make_signed(const CounterexampleSpec& spec, int K);

// xi_k = varsigma_{n_k/2} - varsigma_{2 n_k/1.1}.
double xi(const SignedCF& s, int k, double x);
double nu_hat(const SignedCF& s, double x);

// Support of xi_k on the positive axis.
std::pair<double, double> xi_support(const SignedCF& s, int k);

// A |nu_hat|^2 / B^2 at z for the triplet of the first K levels.
double energy_integrand(const SignedCF& s, double z);

struct EnergyResult {
  std::vector<double> contributions;
  std::vector<double> partial_sums;
  std::vector<double> envelope;  // n_k^{-e} 4^{-k} integral of z^{-0.2} over the window
  double exponent = 9.0 / 11.0;
  bool nominal_exponent = true;
  ConditionReport bound_check;
};

// Per-level integrals over the support of xi_k (both half-lines).
EnergyResult one_energy(const SignedCF& s, int panels_per_level = 24);

// Integral of |nu_hat|^2 lambda / (lambda^2 + Im psi^2) over [0.55 n_k, 2 n_k/1.1] with lambda = n_k^alpha.
double divergence_witness(const SignedCF& s, int k);

// n_k^{-3/4} 4^{-k} integral of z^{-0.2} over [0.55 n_k, 2 n_k/1.1].
double witness_envelope(const SignedCF& s, int k);

}  // namespace huntlab
