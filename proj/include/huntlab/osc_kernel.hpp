#pragma once

#include <array>
#include <limits>

namespace huntlab {

// Integrand kinds over u^{-1-alpha} du:
//   cos  : 1 - cos u
//   sin  : sin u
//   sinc : sin u - u   (compensated; finite at 0 for every alpha < 2)
enum class OscKind { cos, sin, sinc };

struct OscValue {
  double value = 0.0;
  double abs_err = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// D_kind(ta, tb; alpha) = integral over [ta, tb] of kind(u) u^{-1-alpha} du.
// Any real alpha is accepted when ta > 0; ta = 0 needs a convergent integrand
// near the origin and tb = inf needs a convergent one at infinity.
OscValue osc_band(double ta, double tb, double alpha, OscKind kind);

// Master functions G_kind(t; alpha) = D_kind(0, t; alpha), t may be infinite.
double osc_master(double t, double alpha, OscKind kind);

// Closed forms of the limits at t = inf.
double osc_master_limit(double alpha, OscKind kind);

// Cached panel integrals for one alpha, valid for concurrent read-only use.
class OscKernelTable {
 public:
  explicit OscKernelTable(double alpha);

  double alpha() const { return alpha_; }
  double limit(OscKind kind) const;
  // Same contract as osc_band, reusing the cached middle range.
  OscValue band(double ta, double tb, OscKind kind) const;
  double master(double t, OscKind kind) const { return band(0.0, t, kind).value; }

 private:
  static constexpr int kPanels = 13;
  double alpha_;
  double limit_cos_, limit_sin_;
  // cum_[kind][j] = integral from 2 to break j, breaks 2, pi, 2pi, ..., 13pi.
  std::array<std::array<double, kPanels + 1>, 3> cum_{};
  std::array<std::array<double, kPanels + 1>, 3> cum_err_{};
};

// Integral of u^e over [a, b] (a >= 0), computed without cancellation when a ~ b.
double power_integral(double a, double b, double e);

}  // namespace huntlab
