#include "huntlab/log_space.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "huntlab/errors.hpp"

namespace huntlab {

namespace {

constexpr double kLn10 = std::numbers::ln10;
constexpr double kLog10Two = 0.30102999566398119521;
constexpr double kLog10Max = 308.0;
// Beyond zx ~ 1e12 a double carries no usable phase.
constexpr double kLog10Phase = 12.0;

// (1 - r^{-p}) / p with ln r given (ln r may be inf).
double band_factor(double p, double ln_r) {
  if (std::isinf(ln_r)) {
    if (p <= 0.0) throw DomainError("band integral diverges at the origin");
    return 1.0 / p;
  }
  if (p == 0.0) return ln_r;
  return -std::expm1(-p * ln_r) / p;
}

// log10 and sign of the small-argument series for a band [ta, tb] with tb <= 2.
LogReal taylor_log(double alpha, double lta, double ltb, bool sine) {
  const double ln_r = std::isinf(lta) ? kInf : (ltb - lta) * kLn10;
  const int m0 = sine ? 0 : 1;
  auto deg_of = [&](int m) { return sine ? 2 * m + 1 : 2 * m; };
  auto coef_of = [&](int m) {
    double f = 1.0;
    for (int k = 2; k <= deg_of(m); ++k) f *= k;
    const double sgn = sine ? ((m % 2 == 0) ? 1.0 : -1.0) : ((m % 2 == 1) ? 1.0 : -1.0);
    return sgn / f;
  };
  const double p0 = deg_of(m0) - alpha;
  const double f0 = band_factor(p0, ln_r);
  const double c0 = coef_of(m0);
  double rel = 1.0;
  for (int m = m0 + 1; m < m0 + 20; ++m) {
    const double pm = deg_of(m) - alpha;
    const double ratio = coef_of(m) / c0 * std::pow(10.0, (pm - p0) * ltb) * band_factor(pm, ln_r) / f0;
    rel += ratio;
    if (std::abs(ratio) < 1e-18) break;
  }
  const double v = c0 * f0 * rel;
  return {std::log10(std::abs(v)) + p0 * ltb, v > 0 ? 1 : (v < 0 ? -1 : 0)};
}

}  // namespace

LogReal LogReal::from_double(double x) {
  if (x == 0.0) return {};
  return {std::log10(std::abs(x)), x > 0 ? 1 : -1};
}

double LogReal::to_double() const {
  if (sign == 0) return 0.0;
  if (log10_abs > kLog10Max) throw RepresentationError("value exceeds the double range");
  return sign * std::pow(10.0, log10_abs);
}

std::string LogReal::to_string() const {
  if (sign == 0) return "0";
  const double e = std::floor(log10_abs);
  double mant = std::pow(10.0, log10_abs - e);
  double ex = e;
  if (mant >= 9.9999999999999995) {
    mant /= 10.0;
    ex += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.15ge%+.0f", sign < 0 ? "-" : "", mant, ex);
  return buf;
}

double log10_sum(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log10(1.0 + std::pow(10.0, lo - hi));
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign == 0 || b.sign == 0) return {};
  return {a.log10_abs + b.log10_abs, a.sign * b.sign};
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.sign == 0) throw DomainError("division by zero in log space");
  if (a.sign == 0) return {};
  return {a.log10_abs - b.log10_abs, a.sign * b.sign};
}

LogReal operator-(const LogReal& a) { return {a.log10_abs, -a.sign}; }

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.sign == b.sign) return {log10_sum(a.log10_abs, b.log10_abs), a.sign};
  const LogReal& big = a.log10_abs >= b.log10_abs ? a : b;
  const LogReal& small = a.log10_abs >= b.log10_abs ? b : a;
  const double d = small.log10_abs - big.log10_abs;
  const double v = -std::expm1(d * kLn10);
  if (v <= 0.0) return {};
  return {big.log10_abs + std::log10(v), big.sign};
}

LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

bool operator<(const LogReal& a, const LogReal& b) { return (a - b).sign < 0; }

LogReal pow(const LogReal& a, double p) {
  if (a.sign <= 0) throw DomainError("log-space power needs a positive base");
  return {a.log10_abs * p, 1};
}

LogBandValue band_exponent_log(double alpha, double log10_coeff, double log10_lower,
                               double log10_upper, double log10_z) {
  const double lta = log10_z + log10_lower;
  const double ltb = log10_z + log10_upper;
  const LogReal scale{log10_coeff + alpha * log10_z, 1};
  LogBandValue out;
  if (ltb <= kLog10Two) {
    out.re = scale * taylor_log(alpha, lta, ltb, false);
    out.im = scale * taylor_log(alpha, lta, ltb, true);
    out.re_err = out.re.is_zero() ? LogReal{} : LogReal{out.re.log10_abs - 14.0, 1};
    out.im_err = out.im.is_zero() ? LogReal{} : LogReal{out.im.log10_abs - 14.0, 1};
    return out;
  }
  if (ltb < kLog10Phase && lta > -kLog10Max) {
    const double ta = std::isinf(lta) ? 0.0 : std::pow(10.0, lta);
    const double tb = std::pow(10.0, ltb);
    const auto c = osc_band(ta, tb, alpha, OscKind::cos);
    const auto s = osc_band(ta, tb, alpha, OscKind::sin);
    out.re = scale * LogReal::from_double(c.value);
    out.im = scale * LogReal::from_double(s.value);
    out.re_err = scale * LogReal::from_double(c.abs_err + 1e-15 * std::abs(c.value));
    out.im_err = scale * LogReal::from_double(s.abs_err + 1e-15 * std::abs(s.value));
    return out;
  }
  if (lta < 3.0) throw RepresentationError("band straddles the representable range");
  // ta, tb too large for a meaningful phase: the cosine part is the power integral up to an
  // oscillatory remainder bounded by 2.2 ta^{-1-alpha}; the sine part is that remainder.
  const double ln_r = (ltb - lta) * kLn10;
  const double mass = -std::expm1(-alpha * ln_r) / alpha;
  out.re = scale * LogReal{std::log10(mass) - alpha * lta, 1};
  const LogReal rem = scale * LogReal{std::log10(2.2) - (1.0 + alpha) * lta, 1};
  out.im = LogReal{};
  out.re_err = rem;
  out.im_err = rem;
  out.phase_resolved = false;
  return out;
}

}  // namespace huntlab
