#include "huntlab/osc_kernel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "huntlab/errors.hpp"
#include "huntlab/quadrature.hpp"

namespace huntlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTaylorEdge = 2.0;
constexpr int kTaylorTerms = 19;

double tail_start(double alpha) {
  const double s = std::abs(1.0 + alpha);
  const double base = 13.0 * kPi;
  if (s <= 10.0) return base;
  return kPi * std::ceil((2.0 * s + 40.0) / kPi);
}

double kernel(double u, double alpha, OscKind kind) {
  const double w = std::pow(u, -1.0 - alpha);
  switch (kind) {
    case OscKind::cos: {
      const double h = std::sin(0.5 * u);
      return 2.0 * h * h * w;
    }
    case OscKind::sin:
      return std::sin(u) * w;
    case OscKind::sinc:
      return (std::sin(u) - u) * w;
  }
  return 0.0;
}

OscValue taylor_part(double ta, double tb, double alpha, OscKind kind) {
  // 1 - cos u = sum_{m>=1} (-1)^{m+1} u^{2m}/(2m)!
  // sin u     = sum_{m>=0} (-1)^m u^{2m+1}/(2m+1)!
  double sum = 0.0, scale = 0.0;
  double fact = 1.0;  // n!
  int n = 0;
  auto advance = [&](int to) {
    while (n < to) fact *= ++n;
  };
  const int first = (kind == OscKind::sin) ? 0 : 1;
  for (int m = first; m < kTaylorTerms; ++m) {
    int deg;
    double sign;
    if (kind == OscKind::cos) {
      deg = 2 * m;
      sign = (m % 2 == 1) ? 1.0 : -1.0;
    } else {
      deg = 2 * m + 1;
      sign = (m % 2 == 0) ? 1.0 : -1.0;
    }
    advance(deg);
    const double p = deg - alpha;
    if (ta == 0.0 && p <= 0.0) {
      throw DomainError("oscillatory integral diverges at the origin");
    }
    const double term = sign * power_integral(ta, tb, deg - 1.0 - alpha) / fact;
    sum += term;
    scale += std::abs(term);
    if (m > 2 && std::abs(term) < 1e-18 * scale) break;
  }
  return {sum, 4e-16 * scale};
}

OscValue panel_part(double ta, double tb, double alpha, OscKind kind) {
  const auto f = [&](double u) { return kernel(u, alpha, kind); };
  std::vector<double> br{ta};
  for (double k = std::floor(ta / kPi) + 1.0; k * kPi < tb; k += 1.0) br.push_back(k * kPi);
  br.push_back(tb);
  quad::Options opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-300;
  const auto r = quad::integrate(f, std::span<const double>(br), opt);
  return {r.value, r.abs_err};
}

// I(s, t) = integral_t^inf e^{iu} u^{-s} du via its asymptotic expansion.
std::complex<double> upper_oscillatory(double s, double t, double& err) {
  using C = std::complex<double>;
  C sum = 0.0;
  C term = 1.0;
  double last = 1.0;
  const C minus_i(0.0, -1.0);
  for (int k = 0; k < 200; ++k) {
    sum += term;
    const C next = term * minus_i * ((s + k) / t);
    const double mag = std::abs(next);
    if (mag < 1e-18 * std::abs(sum) || mag == 0.0) {
      last = mag;
      break;
    }
    if (mag > std::abs(term) && k > 2) {
      last = std::abs(term);
      break;
    }
    term = next;
    last = mag;
  }
  const double ts = std::pow(t, -s);
  const C lead = C(0.0, 1.0) * std::polar(1.0, t) * ts;
  err = last * ts + 1e-16 * std::abs(sum) * ts;
  return lead * sum;
}

OscValue tail_part(double ta, double tb, double alpha, OscKind kind) {
  const double s = 1.0 + alpha;
  double ea = 0.0, eb = 0.0;
  std::complex<double> diff = upper_oscillatory(s, ta, ea);
  if (std::isfinite(tb)) diff -= upper_oscillatory(s, tb, eb);
  const double err = ea + eb;
  switch (kind) {
    case OscKind::cos: {
      if (!std::isfinite(tb) && s <= 1.0) throw DomainError("cosine integral diverges at infinity");
      const double pw = power_integral(ta, tb, -s);
      return {pw - diff.real(), err + 1e-16 * std::abs(pw)};
    }
    case OscKind::sin:
      if (!std::isfinite(tb) && s <= 0.0) throw DomainError("sine integral diverges at infinity");
      return {diff.imag(), err};
    case OscKind::sinc: {
      if (!std::isfinite(tb) && alpha <= 1.0) {
        throw DomainError("compensated sine integral diverges at infinity");
      }
      const double pw = power_integral(ta, tb, -alpha);
      return {diff.imag() - pw, err + 1e-16 * std::abs(pw)};
    }
  }
  return {};
}

void check_range(double ta, double tb) {
  if (!(ta >= 0.0) || std::isnan(tb) || tb < ta) {
    throw DomainError("oscillatory band needs 0 <= ta <= tb");
  }
}

int kind_index(OscKind k) { return static_cast<int>(k); }

}  // namespace

double power_integral(double a, double b, double e) {
  if (b <= a) return 0.0;
  const double p = e + 1.0;
  if (std::isinf(b)) {
    if (p >= 0.0) throw DomainError("power integral diverges at infinity");
    return -std::pow(a, p) / p;
  }
  if (a == 0.0) {
    if (p <= 0.0) throw DomainError("power integral diverges at the origin");
    return std::pow(b, p) / p;
  }
  const double lr = std::log(b / a);
  if (p == 0.0) return lr;
  const double x = p * lr;
  if (std::abs(x) > 40.0) return (std::pow(b, p) - std::pow(a, p)) / p;
  return std::pow(a, p) * std::expm1(x) / p;
}

OscValue osc_band(double ta, double tb, double alpha, OscKind kind) {
  check_range(ta, tb);
  if (ta == tb) return {};
  const double t3 = tail_start(alpha);
  OscValue out;
  auto add = [&](OscValue v) {
    out.value += v.value;
    out.abs_err += v.abs_err;
  };
  if (ta < kTaylorEdge) add(taylor_part(ta, std::min(tb, kTaylorEdge), alpha, kind));
  const double pa = std::max(ta, kTaylorEdge), pb = std::min(tb, t3);
  if (pa < pb) add(panel_part(pa, pb, alpha, kind));
  if (tb > t3) add(tail_part(std::max(ta, t3), tb, alpha, kind));
  return out;
}

double osc_master_limit(double alpha, OscKind kind) {
  switch (kind) {
    case OscKind::cos:
      if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2)");
      return kPi / (2.0 * std::tgamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0));
    case OscKind::sin:
      if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("sine master limit needs alpha in (0,1)");
      return kPi / (2.0 * std::tgamma(1.0 + alpha) * std::cos(kPi * alpha / 2.0));
    case OscKind::sinc:
      if (!(alpha > 1.0 && alpha < 2.0)) {
        throw DomainError("compensated sine limit needs alpha in (1,2)");
      }
      return -std::tgamma(-alpha) * std::sin(kPi * alpha / 2.0);
  }
  return 0.0;
}

double osc_master(double t, double alpha, OscKind kind) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2)");
  if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
  if (kind == OscKind::sin && alpha >= 1.0 && t > 0.0) {
    throw DomainError("sine master function diverges for alpha >= 1");
  }
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return osc_master_limit(alpha, kind);
  return osc_band(0.0, t, alpha, kind).value;
}

OscKernelTable::OscKernelTable(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("alpha must lie in (0,2)");
  limit_cos_ = osc_master_limit(alpha, OscKind::cos);
  limit_sin_ = alpha < 1.0 ? osc_master_limit(alpha, OscKind::sin) : kInf;
  for (int k = 0; k < 3; ++k) {
    const auto kind = static_cast<OscKind>(k);
    double prev = kTaylorEdge;
    for (int j = 1; j <= kPanels; ++j) {
      const double b = j * kPi;
      const auto v = panel_part(prev, b, alpha, kind);
      cum_[k][j] = cum_[k][j - 1] + v.value;
      cum_err_[k][j] = cum_err_[k][j - 1] + v.abs_err;
      prev = b;
    }
  }
}

double OscKernelTable::limit(OscKind kind) const {
  if (kind == OscKind::cos) return limit_cos_;
  if (kind == OscKind::sin) {
    if (alpha_ >= 1.0) throw DomainError("sine master limit needs alpha in (0,1)");
    return limit_sin_;
  }
  return osc_master_limit(alpha_, kind);
}

OscValue OscKernelTable::band(double ta, double tb, OscKind kind) const {
  check_range(ta, tb);
  if (ta == tb) return {};
  if (ta == 0.0 && std::isinf(tb)) return {limit(kind), 0.0};
  const double t3 = kPanels * kPi;
  OscValue out;
  auto add = [&](OscValue v) {
    out.value += v.value;
    out.abs_err += v.abs_err;
  };
  if (ta < kTaylorEdge) add(taylor_part(ta, std::min(tb, kTaylorEdge), alpha_, kind));
  const double pa = std::max(ta, kTaylorEdge), pb = std::min(tb, t3);
  if (pa < pb) {
    // Break index j has position 2 for j = 0 and j*pi otherwise.
    auto pos = [](int j) { return j == 0 ? kTaylorEdge : j * kPi; };
    int ja = (pa <= kTaylorEdge) ? 0 : static_cast<int>(std::ceil(pa / kPi));
    int jb = static_cast<int>(std::floor(pb / kPi));
    if (jb > kPanels) jb = kPanels;
    const int k = kind_index(kind);
    if (ja <= jb && jb >= 1) {
      if (pa < pos(ja)) add(panel_part(pa, pos(ja), alpha_, kind));
      add({cum_[k][jb] - cum_[k][ja], cum_err_[k][jb] - cum_err_[k][ja]});
      if (pos(jb) < pb) add(panel_part(pos(jb), pb, alpha_, kind));
    } else {
      add(panel_part(pa, pb, alpha_, kind));
    }
  }
  if (tb > t3) add(tail_part(std::max(ta, t3), tb, alpha_, kind));
  return out;
}

}  // namespace huntlab
