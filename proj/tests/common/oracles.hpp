#pragma once

// Slow reference computations, kept independent of the library's quadrature.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

struct Pair {
  double re = 0.0;  // integral of (1 - cos zx) f(x) dx
  double im = 0.0;  // integral of sin(zx) f(x) dx
};

// Composite Simpson in u = log x over (a, b), a > 0, with n panels (n even).
inline Pair band(const std::function<double(double)>& f, double z, double a, double b, long n = 1000000) {
  if (n % 2) ++n;
  const double ua = std::log(a), ub = std::log(b), h = (ub - ua) / n;
  double re = 0.0, im = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double x = std::exp(ua + h * i);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double fx = f(x) * x;  // dx = x du
    const double zx = z * x;
    // 1 - cos written without cancellation
    const double s = std::sin(0.5 * zx);
    re += w * 2.0 * s * s * fx;
    im += w * std::sin(zx) * fx;
  }
  return {re * h / 3.0, im * h / 3.0};
}

// Integral of (1 - e^{-sx}) f(x) dx over (a, b), same rule.
inline double laplace(const std::function<double(double)>& f, double s, double a, double b, long n = 1000000) {
  if (n % 2) ++n;
  const double ua = std::log(a), ub = std::log(b), h = (ub - ua) / n;
  double sum = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double x = std::exp(ua + h * i);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * -std::expm1(-s * x) * f(x) * x;
  }
  return sum * h / 3.0;
}

// Closed forms for coeff x^{-1-a} on (0, inf), a in (0, 1).
inline double stable_re(double coeff, double a, double z) {
  return coeff * std::tgamma(1.0 - a) * std::cos(std::numbers::pi * a / 2) / a * std::pow(z, a);
}
inline double stable_im(double coeff, double a, double z) {
  return coeff * std::tgamma(1.0 - a) * std::sin(std::numbers::pi * a / 2) / a * std::pow(z, a);
}
inline double stable_laplace(double coeff, double a, double s) {
  return coeff * std::tgamma(1.0 - a) / a * std::pow(s, a);
}

// Power series of integral_0^t (1 - cos u) u^{-1-a} du; accurate for t <= 4.
inline double master_cos_series(double t, double a) {
  double sum = 0.0, term = 1.0;  // term = t^{2k}/(2k)!
  for (int k = 1; k < 40; ++k) {
    term *= t * t / ((2.0 * k - 1.0) * (2.0 * k));
    sum += (k % 2 ? 1.0 : -1.0) * term / (2.0 * k - a);
  }
  return sum * std::pow(t, -a);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
