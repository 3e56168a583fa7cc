#pragma once

// Internal decomposition of every absolutely continuous component into pieces
// with density coef * x^expo * (-log x)^logp on (a, b) over the positive axis.

#include <complex>
#include <vector>

#include "huntlab/measure.hpp"

namespace huntlab {

struct Piece {
  double coef = 1.0;
  double expo = -1.5;
  double logp = 0.0;
  double a = 0.0;
  double b = 1.0;

  bool is_power() const { return logp == 0.0; }
  double density(double x) const;
  // Integral of x^j * density over [lo, hi] within [a, b]; err receives an error bound.
  double moment(int j, double lo, double hi, double* err = nullptr) const;
  // Derivatives of the density at x, orders 0..order.
  std::vector<double> derivatives(double x, int order) const;
};

struct ComplexValue {
  std::complex<double> value;
  double abs_err = 0.0;
};

// V(phi) = integral over (a, b) of (1 - e^{-phi x} - [phi x if compensated]) density dx,
// for Re phi >= 0.
ComplexValue piece_transform(const Piece& p, std::complex<double> phi, bool compensated);

// Pieces of a component restricted to the positive axis (side is handled by callers).
// Atoms produce no pieces.
std::vector<Piece> pieces_of(const MeasureComponent& c);

// Split a piece list at x = 1; first holds pieces below 1.
void split_at_one(const std::vector<Piece>& in, std::vector<Piece>& below, std::vector<Piece>& above);

}  // namespace huntlab
