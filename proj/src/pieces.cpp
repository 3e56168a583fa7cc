#include "huntlab/pieces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "huntlab/errors.hpp"
#include "huntlab/quadrature.hpp"
#include "huntlab/taylor_jet.hpp"

namespace huntlab {

namespace {

using C = std::complex<double>;

constexpr int kJetOrder = 30;

// X^q/q * integral_0^inf e^{-w} (L + w/q)^p dw with L = -log X, i.e. the
// integral of x^{q-1} (-log x)^p over (0, X).
double log_power_primitive(double X, double q, double p, double* err) {
  const double L = -std::log(X);
  const auto f = [&](double w) { return std::exp(-w) * std::pow(L + w / q, p); };
  static const double br[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 120.0};
  quad::Options opt;
  opt.rel_tol = 1e-14;
  const auto r = quad::integrate(f, std::span<const double>(br), opt);
  const double scale = std::pow(X, q) / q;
  if (err) *err += std::abs(scale) * r.abs_err;
  return scale * r.value;
}

std::vector<double> log_breaks(double sa, double sb) {
  const double span = sb - sa;
  const double step = std::max(1.0, span / 2000.0);
  return quad::uniform_breaks(sa, sb, step);
}

// Sum_k rho^{(k)}(x) / phi^{k+1}; returns false when the series does not settle.
bool boundary_series(const Piece& p, double x, C phi, C& out, double& err) {
  const auto d = p.derivatives(x, kJetOrder);
  const C inv = 1.0 / phi;
  C pw = inv;
  C sum = 0.0;
  double prev = kInf;
  for (int k = 0; k <= kJetOrder; ++k) {
    const C term = d[k] * pw;
    const double mag = std::abs(term);
    sum += term;
    if (k >= 2 && mag <= 1e-17 * std::abs(sum)) {
      out = sum;
      err = mag + 1e-16 * std::abs(sum);
      return true;
    }
    if (k >= 4 && mag > prev) return false;
    prev = mag;
    pw *= inv;
  }
  return false;
}

}  // namespace

double Piece::density(double x) const {
  double v = coef * std::pow(x, expo);
  if (logp != 0.0) v *= std::pow(-std::log(x), logp);
  return v;
}

double Piece::moment(int j, double lo, double hi, double* err) const {
  if (!(hi > lo)) return 0.0;
  if (is_power()) {
    const double v = coef * power_integral(lo, hi, expo + j);
    if (err) *err += 1e-15 * std::abs(v);
    return v;
  }
  const double q = expo + j + 1.0;
  if (lo == 0.0) {
    if (q <= 0.0) throw DomainError("moment diverges at the origin");
    return coef * log_power_primitive(hi, q, logp, err);
  }
  if (q > 0.0 && hi / lo > 1e4) {
    double e = 0.0;
    const double v = log_power_primitive(hi, q, logp, &e) - log_power_primitive(lo, q, logp, &e);
    if (err) *err += std::abs(coef) * e;
    return coef * v;
  }
  const auto f = [&](double s) { return std::exp(q * s) * std::pow(-s, logp); };
  const auto br = log_breaks(std::log(lo), std::log(hi));
  quad::Options opt;
  opt.rel_tol = 1e-14;
  const auto r = quad::integrate(f, std::span<const double>(br), opt);
  if (err) *err += std::abs(coef) * r.abs_err;
  return coef * r.value;
}

std::vector<double> Piece::derivatives(double x, int order) const {
  TaylorJet jet = TaylorJet::power(order, x, expo);
  if (logp != 0.0) jet = jet * TaylorJet::neg_log(order, x).pow(logp);
  return (jet * coef).derivatives();
}

ComplexValue piece_transform(const Piece& p, C phi, bool compensated) {
  const double R = std::abs(phi);
  if (R == 0.0 || !(p.b > p.a)) return {};
  if (p.is_power() && p.a == 0.0 && std::isinf(p.b) && !compensated) {
    const double alpha = -1.0 - p.expo;
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("transform diverges for this power");
    const C v = p.coef * std::tgamma(1.0 - alpha) / alpha * std::pow(phi, alpha);
    return {v, 1e-15 * std::abs(v)};
  }

  ComplexValue out;
  const double x0 = 0.5 / R;

  if (p.a < x0) {
    const double lo = p.a, hi = std::min(p.b, x0);
    const int m0 = compensated ? 2 : 1;
    C pw = 1.0;
    double fact = 1.0;
    C sum = 0.0;
    for (int m = 1; m <= 40; ++m) {
      pw *= -phi;
      fact *= m;
      if (m < m0) continue;
      double e = 0.0;
      const double M = p.moment(m, lo, hi, &e);
      const C term = -pw / fact * M;
      sum += term;
      out.abs_err += std::abs(pw) / fact * e;
      if (m > m0 + 1 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    out.value += sum;
  }

  const double start = std::max(p.a, x0);
  if (start >= p.b) return out;

  const auto integrand = [&](double x) {
    // |phi x| >= 1/2 here, so the subtraction loses at most a few bits.
    C v = 1.0 - std::exp(-phi * x);
    if (compensated) v -= phi * x;
    return v * p.density(x);
  };

  double U = 200.0;
  for (int attempt = 0; attempt < 6; ++attempt, U *= 4.0) {
    const double xc = std::min(p.b, U / R);
    ComplexValue part;
    if (start < xc) {
      std::vector<double> br{start};
      double x = start;
      const double geo_end = std::min(xc, 8.0 / R);
      while (x * 2.0 < geo_end) {
        x *= 2.0;
        br.push_back(x);
      }
      const double step = std::numbers::pi / R;
      x = std::max(x, br.back());
      while (x + step < xc) {
        x += step;
        br.push_back(x);
      }
      if (br.back() < xc) br.push_back(xc);
      quad::Options opt;
      opt.rel_tol = 1e-13;
      opt.abs_tol = 1e-300;
      opt.max_intervals = 20000;
      const auto r = quad::integrate(integrand, std::span<const double>(br), opt);
      part.value += r.value;
      part.abs_err += r.abs_err;
    }
    const double far = std::max(start, xc);
    if (far < p.b) {
      C s_lo, s_hi = 0.0;
      double e_lo = 0.0, e_hi = 0.0;
      if (!boundary_series(p, far, phi, s_lo, e_lo)) continue;
      if (std::isfinite(p.b) && !boundary_series(p, p.b, phi, s_hi, e_hi)) continue;
      double me = 0.0;
      C v = p.moment(0, far, p.b, &me);
      if (compensated) v -= phi * p.moment(1, far, p.b, &me);
      const C ea = std::exp(-phi * far);
      C eb = 0.0;
      if (std::isfinite(p.b)) eb = std::exp(-phi * p.b);
      v -= ea * s_lo - eb * s_hi;
      part.value += v;
      part.abs_err += me * (1.0 + (compensated ? R : 0.0)) + std::abs(ea) * e_lo + std::abs(eb) * e_hi;
    }
    out.value += part.value;
    out.abs_err += part.abs_err;
    return out;
  }
  throw DomainError("piece transform failed to converge");
}

std::vector<Piece> pieces_of(const MeasureComponent& c) {
  std::vector<Piece> out;
  if (const auto* p = std::get_if<PowerBand>(&c.shape)) {
    out.push_back({p->coeff, -1.0 - p->alpha, 0.0, p->lower, p->upper});
  } else if (const auto* s = std::get_if<StableTail>(&c.shape)) {
    out.push_back({s->coeff, -1.0 - s->alpha, 0.0, 0.0, kInf});
  } else if (const auto* l = std::get_if<LogPowerBand>(&c.shape)) {
    out.push_back({l->coeff, -1.0 - l->alpha, l->log_power, l->lower, l->upper});
  } else if (const auto* t = std::get_if<Tabulated>(&c.shape)) {
    for (std::size_t i = 0; i + 1 < t->knots.size(); ++i) {
      const double x0 = t->knots[i], x1 = t->knots[i + 1];
      const double v0 = t->density[i], v1 = t->density[i + 1];
      if (v0 == 0.0 && v1 == 0.0) continue;
      if (v0 > 0.0 && v1 > 0.0) {
        const double e = std::log(v1 / v0) / std::log(x1 / x0);
        out.push_back({v0 * std::pow(x0, -e), e, 0.0, x0, x1});
      } else {
        const double slope = (v1 - v0) / (x1 - x0);
        const double icpt = v0 - slope * x0;
        if (icpt != 0.0) out.push_back({icpt, 0.0, 0.0, x0, x1});
        if (slope != 0.0) out.push_back({slope, 1.0, 0.0, x0, x1});
      }
    }
  }
  return out;
}

void split_at_one(const std::vector<Piece>& in, std::vector<Piece>& below, std::vector<Piece>& above) {
  for (const auto& p : in) {
    if (p.a < 1.0) {
      Piece q = p;
      q.b = std::min(p.b, 1.0);
      below.push_back(q);
    }
    if (p.b > 1.0) {
      Piece q = p;
      q.a = std::max(p.a, 1.0);
      above.push_back(q);
    }
  }
}

}  // namespace huntlab
