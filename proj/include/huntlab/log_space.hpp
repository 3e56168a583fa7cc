#pragma once

#include <string>

#include "huntlab/osc_kernel.hpp"

namespace huntlab {

// A real number stored as sign * 10^log10_abs. Zero has sign 0.
struct LogReal {
  double log10_abs = -kInf;
  int sign = 0;

  static LogReal from_double(double x);
  static LogReal from_log10(double l, int sign = 1) { return {l, sign}; }
  static LogReal zero() { return {}; }

  bool is_zero() const { return sign == 0; }
  // Throws RepresentationError when the value is outside the double range.
  double to_double() const;
  std::string to_string() const;
};

LogReal operator*(const LogReal& a, const LogReal& b);
LogReal operator/(const LogReal& a, const LogReal& b);
LogReal operator+(const LogReal& a, const LogReal& b);
LogReal operator-(const LogReal& a);
LogReal operator-(const LogReal& a, const LogReal& b);
bool operator<(const LogReal& a, const LogReal& b);
inline bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
LogReal pow(const LogReal& a, double p);  // a > 0

// log10(10^a + 10^b)
double log10_sum(double a, double b);

// Band contribution of coeff * x^{-1-alpha} on (lower, upper) at z, all inputs
// given as log10. Phases beyond the double range are unknowable, so the value is
// returned together with a rigorous bound on what could not be resolved.
struct LogBandValue {
  LogReal re, im;          // best value
  LogReal re_err, im_err;  // absolute uncertainty
  bool phase_resolved = true;
};

LogBandValue band_exponent_log(double alpha, double log10_coeff, double log10_lower,
                               double log10_upper, double log10_z);

}  // namespace huntlab
