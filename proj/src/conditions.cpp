#include "huntlab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "huntlab/errors.hpp"
#include "huntlab/parallel.hpp"
#include "huntlab/quadrature.hpp"
#include "huntlab/transforms.hpp"

namespace huntlab {

namespace {

std::vector<ExponentValue> sweep(const LevyTriplet& t, const std::vector<double>& zgrid) {
  validate(t);
  return parallel_map<ExponentValue>(zgrid.size(), [&](std::size_t i) { return eval_psi(t, zgrid[i]); });
}

// Integrate f over consecutive panels in parallel and sum in order.
template <class F>
quad::Result<double> integrate_panels(F&& f, const std::vector<double>& br, const quad::Options& opt) {
  if (br.size() < 2) return {};
  const auto parts = parallel_map<quad::Result<double>>(br.size() - 1, [&](std::size_t i) {
    return quad::integrate(f, br[i], br[i + 1], opt);
  });
  quad::Result<double> out;
  for (const auto& p : parts) {
    out.value += p.value;
    out.abs_err += p.abs_err;
    out.evaluations += p.evaluations;
    out.converged = out.converged && p.converged;
  }
  return out;
}

std::vector<double> log_breaks(double lo, double hi, int per_decade) {
  const auto g = log_grid(lo, hi, per_decade);
  return g;
}

}  // namespace

double GaugeFunction::operator()(double lambda) const {
  switch (kind) {
    case Kind::constant:
      return param;
    case Kind::log:
      return std::max(1.0, std::log(lambda));
    case Kind::log_power: {
      const double l = std::log(lambda);
      return l > 1.0 ? std::pow(l, param) : 1.0;
    }
    case Kind::power:
      return std::pow(std::max(lambda, 1.0), param);
  }
  return 1.0;
}

std::string GaugeFunction::name() const {
  switch (kind) {
    case Kind::constant:
      return "constant(" + std::to_string(param) + ")";
    case Kind::log:
      return "log";
    case Kind::log_power:
      return "logpower(" + std::to_string(param) + ")";
    case Kind::power:
      return "power(" + std::to_string(param) + ")";
  }
  return "";
}

bool gauge_divergence(const GaugeFunction& g) {
  switch (g.kind) {
    case GaugeFunction::Kind::constant:
    case GaugeFunction::Kind::log:
      return true;
    case GaugeFunction::Kind::log_power:
      return g.param <= 1.0;
    case GaugeFunction::Kind::power:
      return false;
  }
  return false;
}

ConditionReport kf_ratio_profile(const LevyTriplet& t, const std::vector<double>& zgrid) {
  ConditionReport r;
  r.name = "kanda-forst";
  const auto psi = sweep(t, zgrid);
  std::vector<double> ratio(zgrid.size()), err(zgrid.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    const double A = 1.0 + psi[i].re;
    ratio[i] = std::abs(psi[i].im_signed) / A;
    err[i] = psi[i].abs_err * (1.0 + ratio[i]) / A;
    sup = std::max(sup, ratio[i]);
  }
  for (std::size_t i = 0; i < zgrid.size(); ++i) r.add(zgrid[i], sup - ratio[i], err[i], ratio[i]);
  r.psi = psi;
  r.finalize();
  r.notes.push_back("fitted M = " + std::to_string(sup));
  // Block maxima per decade of |z|.
  std::map<int, double> block;
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    if (zgrid[i] == 0.0) continue;
    const int key = static_cast<int>(std::floor(std::log10(std::abs(zgrid[i]))));
    block[key] = std::max(block[key], ratio[i]);
  }
  if (block.size() >= 2) {
    const double last = block.rbegin()->second;
    double earlier = 0.0;
    for (auto it = block.begin(); std::next(it) != block.end(); ++it) earlier = std::max(earlier, it->second);
    if (last > 1.05 * earlier + 1e-12) {
      r.force(Verdict::inconclusive, "block maxima still growing at the end of the grid");
    } else {
      // the margin at the argmax is zero by construction, so boundedness decides
      r.force(Verdict::satisfied, "block maxima stabilize: ratio bounded on grid");
    }
  }
  return r;
}

ConditionReport rao_check(const std::vector<double>& zgrid, const std::vector<ExponentValue>& psi,
                          const GaugeFunction& g) {
  ConditionReport r;
  r.name = "rao";
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    const auto [A, B] = ab_from(psi[i]);
    const double fA = g(A);
    const double margin = A * fA - B;
    const double err = psi[i].abs_err * (fA * (1.0 + std::abs(g.param)) + 2.0);
    r.add(zgrid[i], margin, err, B / A);
  }
  r.psi = psi;
  r.finalize();
  r.notes.push_back("gauge " + g.name());
  if (!gauge_divergence(g)) {
    r.force(Verdict::inconclusive, "gauge integral converges: the hypothesis on f fails");
  }
  return r;
}

ConditionReport rao_check(const LevyTriplet& t, const GaugeFunction& g, const std::vector<double>& zgrid) {
  return rao_check(zgrid, sweep(t, zgrid), g);
}

TailFit fit_shell_tail(const std::vector<double>& shell_lo, const std::vector<double>& shell_values) {
  TailFit fit;
  const std::size_t n = shell_lo.size();
  if (n < 3) return fit;
  const double zend = shell_lo.back();
  std::vector<double> x, lx, y;
  for (std::size_t i = 0; i < n; ++i) {
    if (shell_lo[i] < zend / 10.0 && n - i > 4) continue;
    if (!(shell_values[i] > 0.0)) continue;
    x.push_back(std::log(shell_lo[i]));
    lx.push_back(std::log(std::log(shell_lo[i])));
    y.push_back(std::log(shell_values[i]));
  }
  if (x.size() < 3) return fit;
  const auto f1 = fit_line(x, y);
  fit.p = 1.0 - f1.slope;
  const double s_last = std::exp(y.back());
  if (fit.p > 1.05) {
    const double r = std::pow(2.0, 1.0 - fit.p);
    fit.convergent = true;
    fit.tail_estimate = s_last * r / (1.0 - r);
    return fit;
  }
  if (fit.p >= 0.95 && shell_lo.back() > 3.0) {
    const auto f2 = fit_line(lx, y);
    fit.q = -f2.slope;
    if (fit.q > 1.05) {
      const double L = std::log(shell_lo.back());
      const double c = s_last * std::pow(L, fit.q) / std::log(2.0);
      fit.convergent = true;
      fit.tail_estimate = c * std::pow(L, 1.0 - fit.q) / (fit.q - 1.0);
    }
  }
  return fit;
}

ConditionReport ekfr_check(const LevyTriplet& t, const GaugeFunction& g, double zlo, double zhi) {
  if (!(zlo > 0.0 && zhi > zlo)) throw DomainError("ekfr domain needs 0 < zlo < zhi");
  validate(t);
  ConditionReport r;
  r.name = "ekfr";
  std::vector<double> lo;
  for (double z = zlo; z < zhi; z *= 2.0) lo.push_back(z);
  const auto h = [&](double z) {
    const auto v = eval_psi(t, z);
    const double A = 1.0 + v.re;
    const double im = std::abs(v.im_signed);
    if (im <= A * g(A)) return 0.0;
    return im / (A * A + im * im);
  };
  quad::Options opt;
  opt.rel_tol = 1e-6;
  opt.max_intervals = 16;
  const auto shells = parallel_map<quad::Result<double>>(lo.size(), [&](std::size_t i) {
    const double a = lo[i], b = std::min(2.0 * lo[i], zhi);
    const std::array<double, 5> br = {a, a * std::pow(b / a, 0.25), a * std::pow(b / a, 0.5),
                                      a * std::pow(b / a, 0.75), b};
    return quad::integrate(h, std::span<const double>(br), opt);
  });
  double total = 0.0, prev = 0.0;
  std::vector<double> vals;
  bool any = false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double s = 2.0 * shells[i].value;  // both half-lines
    vals.push_back(s);
    total += s;
    any = any || s > 0.0;
    r.add(lo[i], i == 0 ? s : prev - s, 2.0 * shells[i].abs_err, s);
    prev = s;
  }
  r.finalize();
  r.notes.push_back("gauge " + g.name());
  r.notes.push_back("partial integral = " + std::to_string(total));
  if (!gauge_divergence(g)) {
    r.force(Verdict::inconclusive, "gauge integral converges: the hypothesis on f fails");
    return r;
  }
  if (!any) {
    r.force(Verdict::satisfied, "psi_2 vanishes on the grid");
    return r;
  }
  // Shells of the last decade all zero: psi_2 has died out.
  bool tail_zero = true;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] >= lo.back() / 10.0 && vals[i] > 0.0) tail_zero = false;
  }
  if (tail_zero) {
    r.force(Verdict::satisfied, "psi_2 vanishes over the last decade");
    return r;
  }
  const auto fit = fit_shell_tail(lo, vals);
  r.notes.push_back("tail fit p = " + std::to_string(fit.p) + ", q = " + std::to_string(fit.q));
  if (fit.convergent) {
    r.notes.push_back("extrapolated tail = " + std::to_string(fit.tail_estimate));
    r.force(Verdict::satisfied, "shell integrals decay summably");
  } else {
    r.force(Verdict::inconclusive, "shell integrals do not decay summably on the grid");
  }
  return r;
}

ConditionReport growth_check(const LevyTriplet& t, double gamma, GrowthKind kind, const std::vector<double>& zgrid,
                             double eps_rel) {
  ConditionReport r;
  r.name = kind == GrowthKind::re ? "growth-re" : "growth-abs";
  std::vector<double> z;
  for (double v : zgrid) {
    if (std::abs(v) > 1.0) z.push_back(std::abs(v));
  }
  std::sort(z.begin(), z.end());
  if (z.size() < 2) {
    r.force(Verdict::inconclusive, "grid has no points with |z| > 1");
    return r;
  }
  const auto psi = sweep(t, z);
  std::vector<double> q(z.size()), qe(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double L = std::log(z[i]);
    if (kind == GrowthKind::re) {
      const double d = z[i] * std::pow(L, gamma);
      q[i] = psi[i].re / d;
      qe[i] = psi[i].abs_err / d;
    } else {
      const double d = z[i] * std::pow(L, 1.0 + gamma);
      q[i] = std::hypot(psi[i].re, psi[i].im_signed) / d;
      qe[i] = psi[i].abs_err / d;
    }
  }
  std::map<int, std::pair<double, double>> blocks;  // key -> (min, centre)
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int key = static_cast<int>(std::floor(std::log2(z[i])));
    auto it = blocks.find(key);
    if (it == blocks.end()) {
      blocks[key] = {q[i], std::ldexp(1.5, key)};
    } else {
      it->second.first = std::min(it->second.first, q[i]);
    }
  }
  const double first = blocks.begin()->second.first;
  const double eps = eps_rel * first;
  for (std::size_t i = 0; i < z.size(); ++i) r.add(z[i], q[i] - eps, qe[i], q[i]);
  r.psi = psi;
  r.finalize();
  r.notes.push_back("liminf estimate from dyadic block minima (on-grid only)");
  if (std::log10(z.back() / z.front()) < 4.0) {
    r.force(Verdict::inconclusive, "grid spans fewer than 4 decades");
    return r;
  }
  std::vector<double> mins, centres;
  for (const auto& [k, v] : blocks) {
    mins.push_back(v.first);
    centres.push_back(v.second);
  }
  const std::size_t nb = mins.size();
  bool ok = nb >= 4 && first > 0.0;
  for (std::size_t i = nb >= 4 ? nb - 4 : 0; i < nb; ++i) ok = ok && mins[i] > eps;
  if (ok) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < nb; ++i) {
      if (centres[i] >= centres.back() / 10.0) {
        x.push_back(std::log(centres[i]));
        y.push_back(std::log(mins[i]));
      }
    }
    const auto fit = fit_line(x, y);
    r.notes.push_back("log-log slope of block minima over last decade = " + std::to_string(fit.slope));
    if (x.size() >= 3 && fit.slope < -0.05) {
      r.force(Verdict::violated, "block minima decay like a power: liminf is 0");
      return r;
    }
    r.force(Verdict::satisfied, "last 4 block minima exceed eps");
  } else {
    r.force(Verdict::violated, "a late block minimum is below eps");
  }
  return r;
}

std::string diagnosis_name(Diagnosis d) {
  switch (d) {
    case Diagnosis::converges:
      return "converges";
    case Diagnosis::diverges:
      return "diverges";
    case Diagnosis::inconclusive:
      return "inconclusive";
  }
  return "";
}

KestenResult kesten_integral(const LevyTriplet& t, double zmax) {
  if (!(zmax > 1e-3)) throw DomainError("kesten integral needs zmax > 1e-3");
  validate(t);
  const auto g = [&](double z) { return resolvent_real(eval_psi(t, z), 1.0); };
  auto br = log_breaks(1e-3, zmax, 4);
  br.insert(br.begin(), 0.0);
  quad::Options opt;
  opt.rel_tol = 1e-8;
  opt.max_intervals = 200;
  // The integrand is even in z.
  const auto res = integrate_panels(g, br, opt);
  KestenResult out;
  out.partial = 2.0 * res.value;
  out.abs_err = 2.0 * res.abs_err;
  const auto zs = log_grid(zmax / 10.0, zmax, 20);
  const auto vals = parallel_map<double>(zs.size(), [&](std::size_t i) { return g(zs[i]); });
  std::vector<double> x, y;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (vals[i] > 0.0) {
      x.push_back(std::log(zs[i]));
      y.push_back(std::log(vals[i]));
    }
  }
  out.tail_exponent = -fit_line(x, y).slope;
  if (out.tail_exponent > 1.05) {
    out.diagnosis = Diagnosis::converges;
  } else if (out.tail_exponent < 0.95) {
    out.diagnosis = Diagnosis::diverges;
  }
  return out;
}

namespace {

// The indicator sets make the integrand jump; bisection has to localize each jump.
quad::Options indicator_options() {
  quad::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-300;
  opt.max_intervals = 400;
  return opt;
}

double ksum_weight(const ExponentValue& v, double lambda, int kmax) {
  const double A = 1.0 + v.re;
  const double im = std::abs(v.im_signed);
  const double B = std::hypot(A, im);
  const double fA = std::max(1.0, std::log(A));
  if (!(B > A * fA)) return 0.0;
  const double k = std::floor(im / A);
  if (k < 1.0 || k > kmax) return 0.0;
  if (!(A <= lambda && lambda < (k + 1.0) * im)) return 0.0;
  return lambda / (lambda * lambda + im * im);
}

}  // namespace

double rao_limit_term(const LevyTriplet& t, const SpectralFn& nu_hat, double lambda, int kmax, double zmax,
                      double zmin) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(zmax > zmin && zmin > 0.0)) throw DomainError("rao limit term needs 0 < zmin < zmax");
  validate(t);
  const auto f = [&](double z) {
    const double n2 = nu_hat(z) * nu_hat(z) + nu_hat(-z) * nu_hat(-z);
    if (n2 == 0.0) return 0.0;
    return n2 * ksum_weight(eval_psi(t, z), lambda, kmax);
  };
  // lattice 10^{j/20} fixed in z, so a longer range only appends panels
  std::vector<double> br{0.0, zmin};
  for (int j = static_cast<int>(std::floor(20.0 * std::log10(zmin))) + 1;; ++j) {
    const double b = std::pow(10.0, j / 20.0);
    if (b >= zmax) break;
    br.push_back(b);
  }
  br.push_back(zmax);
  return integrate_panels(f, br, indicator_options()).value;
}

double rao_limit_term_windows(const LevyTriplet& t, const SpectralFn& nu_hat, double lambda, int kmax,
                              const std::vector<std::pair<double, double>>& windows) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  validate(t);
  const auto f = [&](double z) {
    const double n2 = nu_hat(z) * nu_hat(z) + nu_hat(-z) * nu_hat(-z);
    if (n2 == 0.0) return 0.0;
    return n2 * ksum_weight(eval_psi(t, z), lambda, kmax);
  };
  double sum = 0.0;
  for (const auto& [lo, hi] : windows) {
    sum += integrate_panels(f, quad::uniform_breaks(lo, hi, (hi - lo) / 32.0), indicator_options()).value;
  }
  return sum;
}

}  // namespace huntlab
