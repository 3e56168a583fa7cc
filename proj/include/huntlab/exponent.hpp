#pragma once

#include <complex>
#include <functional>

#include "huntlab/measure.hpp"

namespace huntlab {

// im_signed carries the sign the window estimates use: for a drift-form subordinator it is
// d z + integral sin(zx) mu(dx), i.e. minus the imaginary part of the exact
// Levy-Khintchine exponent. Only |im_signed| enters the conditions.
struct ExponentValue {
  double re = 0.0;
  double im_signed = 0.0;
  double abs_err = 0.0;
};

struct AB {
  double A = 1.0;
  double B = 1.0;
};

// Contribution of integral (1 - e^{izx}) comp(dx) (no compensator).
ExponentValue band_exponent(double z, const MeasureComponent& comp);

// Contribution of one component inside a triplet of the given form; the general
// form adds the compensator izx on |x| < 1.
ExponentValue component_exponent(double z, const MeasureComponent& comp, Form form);

ExponentValue eval_psi(const LevyTriplet& t, double z);

AB ab(const LevyTriplet& t, double z);
AB ab_from(const ExponentValue& v);

// d s + integral (1 - e^{-sx}) mu(dx) for a drift-form triplet, s > 0.
double laplace_exponent(const LevyTriplet& t, double s);

// Integral (1 - e^{-phi x}) mu(dx) for complex phi with Re phi >= 0, drift form.
std::complex<double> measure_transform(const LevyTriplet& t, std::complex<double> phi,
                                       double* abs_err = nullptr);

// Exact-sign exponent psi(z) = re - i*im_signed as a complex number.
inline std::complex<double> as_complex(const ExponentValue& v) { return {v.re, -v.im_signed}; }

// Same process written in the other representation (requires integrable small jumps
// when converting to drift form).
LevyTriplet to_general(const LevyTriplet& t);
LevyTriplet to_drift(const LevyTriplet& t);

}  // namespace huntlab
