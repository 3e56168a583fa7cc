#include "huntlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "huntlab/errors.hpp"
#include "huntlab/parallel.hpp"

namespace huntlab {

namespace {

const double kLog2 = std::log10(2.0);

struct Sample {
  double z = 0.0;   // inf when not representable
  double lz = 0.0;  // log10 z
};

struct LevelValue {
  LogReal re, im, re_err, im_err;
};

LevelValue level_value(const CounterexampleSpec& spec, int j, const Sample& s) {
  const double a = spec.alpha;
  LevelValue v;
  if (spec.mode == CxMode::toy) {
    // Real and imaginary parts keep separate errors: on far windows they differ by many decades.
    const double n = spec.n[j - 1];
    const double scale = std::pow(s.z, a);
    const double tb = s.z / n / n;  // n^2 may overflow; z/n does not
    const auto c = osc_band(0.5 * tb, tb, a, OscKind::cos);
    const auto sn = osc_band(0.5 * tb, tb, a, OscKind::sin);
    v.re = LogReal::from_double(scale * c.value);
    v.im = LogReal::from_double(scale * sn.value);
    v.re_err = LogReal::from_double(scale * (c.abs_err + 1e-15 * std::abs(c.value)));
    v.im_err = LogReal::from_double(scale * (sn.abs_err + 1e-15 * std::abs(sn.value)));
    return v;
  }
  const double L = spec.log10_n[j - 1];
  const double lower = -kLog2 - 2.0 * L, upper = -2.0 * L;
  if (s.lz + lower > 6.0) {
    // Far above the band: the cosine part is the mass up to an oscillation that
    // integration by parts bounds by 2 rho(lower)/z.
    const double mass = std::log10((std::pow(2.0, a) - 1.0) / a) + 2.0 * a * L;
    const double osc = kLog2 - (1.0 + a) * lower - s.lz;
    v.re = LogReal::from_log10(mass);
    v.re_err = LogReal::from_log10(osc);
    v.im_err = v.re_err;
    return v;
  }
  const auto b = band_exponent_log(a, 0.0, lower, upper, s.lz);
  v.re = b.re;
  v.im = b.im;
  v.re_err = b.re_err;
  v.im_err = b.im_err;
  return v;
}

LogReal lr(double x) { return LogReal::from_double(x); }

double ratio(const LogReal& a, const LogReal& b) {
  if (a.is_zero()) return 0.0;
  return (a / b).to_double();
}

std::vector<Sample> samples_for(const CounterexampleSpec& spec, int k, int count) {
  std::vector<Sample> out;
  if (spec.mode == CxMode::toy) {
    for (double z : window_samples(spec, k, count)) out.push_back({z, std::log10(z)});
    return out;
  }
  const double L = spec.log10_n[k - 1];
  for (int i = 0; i < count; ++i) {
    const double lz = L - kLog2 + 2.0 * kLog2 * i / std::max(1, count - 1);
    out.push_back({lz < 300.0 ? std::pow(10.0, lz) : kInf, lz});
  }
  return out;
}

// All levels at every sample.
std::vector<std::vector<LevelValue>> level_table(const CounterexampleSpec& spec, const std::vector<Sample>& s) {
  return parallel_map<std::vector<LevelValue>>(s.size(), [&](std::size_t i) {
    std::vector<LevelValue> row;
    for (int j = 1; j <= spec.K; ++j) row.push_back(level_value(spec, j, s[i]));
    return row;
  });
}

LogReal n_of(const CounterexampleSpec& spec, int k) { return LogReal::from_log10(spec.log10_n[k - 1]); }

double grid_coord(const CounterexampleSpec& spec, const Sample& s) {
  return spec.mode == CxMode::toy ? s.z : s.lz;
}

LogReal inv_fourth_sum(const CounterexampleSpec& spec) {
  LogReal s;
  for (double L : spec.log10_n) s = s + LogReal::from_log10(-4.0 * L);
  return s;
}

}  // namespace

std::string mode_name(CxMode m) { return m == CxMode::toy ? "toy" : "paper-log"; }

double theta(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("alpha must lie in (1/2, 1)");
  return std::max(5.0 / (2.0 - 2.0 * alpha), (4.0 + 2.0 * alpha) / (2.0 * alpha - 1.0));
}

double minimal_n1(double alpha) {
  theta(alpha);
  const double e = 2.0 * alpha - 1.0;
  const auto ok = [&](double n) { return std::pow(n, e) / 8.0 > 6.0 / (1.0 - alpha); };
  double n = std::max(1.0, std::floor(std::pow(48.0 / (1.0 - alpha), 1.0 / e)));
  while (!ok(n)) n += 1.0;
  while (n > 1.0 && ok(n - 1.0)) n -= 1.0;
  return n;
}

double recursion_constant(double alpha) {
  theta(alpha);
  return std::max(std::sqrt(2.0), std::pow(96.0, 1.0 / (2.0 * alpha - 1.0)));
}

CounterexampleSpec build_spec(double alpha, int K, CxMode mode, const ToyOverrides& toy) {
  if (K < 1) throw DomainError("K must be at least 1");
  CounterexampleSpec s;
  s.alpha = alpha;
  s.mode = mode;
  s.K = K;
  s.theta = theta(alpha);
  s.c = recursion_constant(alpha);
  if (mode == CxMode::paper_log) {
    const double n1 = minimal_n1(alpha);
    s.log10_n.push_back(std::log10(n1));
    for (int k = 2; k <= K; ++k) {
      s.log10_n.push_back(std::log10(k - 1.0) / (2.0 * alpha - 1.0) + std::log10(s.c) + s.theta * s.log10_n.back());
    }
    for (double L : s.log10_n) s.n.push_back(L < 300.0 ? std::pow(10.0, L) : kInf);
    return s;
  }
  if (!(toy.n1 >= 2.0) || !(toy.theta_toy > 1.0)) throw DomainError("toy mode needs n1 >= 2 and theta_toy > 1");
  s.toy = toy;
  s.n.push_back(std::ceil(toy.n1));
  for (int k = 2; k <= K; ++k) {
    const double p = s.n.back();
    s.n.push_back(std::ceil(std::max(std::sqrt(2.0) * p + 1.0, std::pow(p, toy.theta_toy))));
  }
  for (std::size_t i = 0; i < s.n.size(); ++i) {
    // Windows reach 2 n_k and the global check 10 n_K, so n_k itself must stay well inside
    // the double range; n_k^2 may not, and is never formed.
    if (!(s.n[i] < 1e300)) throw RepresentationError("toy level " + std::to_string(i + 1) + " overflows");
    if (i > 0 && !(s.n[i] / s.n[i - 1] > std::sqrt(2.0))) throw DomainError("toy bands overlap");
    s.log10_n.push_back(std::log10(s.n[i]));
  }
  return s;
}

LevyMeasure counterexample_measure(const CounterexampleSpec& spec, int levels) {
  if (levels < 1 || levels > spec.K) throw DomainError("levels must lie in [1, K]");
  LevyMeasure m;
  for (int k = 1; k <= levels; ++k) {
    const double L = spec.log10_n[k - 1];
    if (2.0 * L + kLog2 > 300.0) throw RepresentationError("band of level " + std::to_string(k) + " underflows");
    const double n = spec.mode == CxMode::toy ? spec.n[k - 1] : std::pow(10.0, L);
    m.push_back({PowerBand{1.0, spec.alpha, 1.0 / (2.0 * n * n), 1.0 / (n * n)}, Side::positive});
  }
  return m;
}

LevyTriplet counterexample_triplet(const CounterexampleSpec& spec, int levels) {
  LevyTriplet t;
  t.form = Form::drift;
  t.measure = counterexample_measure(spec, levels);
  return t;
}

double recursion_residual(const CounterexampleSpec& spec) {
  double worst = 0.0;
  const double e = 2.0 * spec.alpha - 1.0;
  for (int k = 2; k <= spec.K; ++k) {
    const double L = spec.log10_n[k - 1];
    const double r = L - spec.theta * spec.log10_n[k - 2] - std::log10(spec.c) - std::log10(k - 1.0) / e;
    worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(L)));
  }
  return worst;
}

double double_log_affinity(const CounterexampleSpec& spec) {
  std::vector<double> x, y;
  for (int k = 3; k <= spec.K; ++k) {
    x.push_back(k);
    y.push_back(std::log10(spec.log10_n[k - 1]));
  }
  if (x.size() < 2) return 0.0;
  const auto f = fit_line(x, y);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(y[i] - (f.intercept + f.slope * x[i])) / std::abs(y[i]));
  }
  return worst;
}

ExponentValue cx_psi(const CounterexampleSpec& spec, int levels, double z) {
  if (spec.mode != CxMode::toy) throw DomainError("direct evaluation needs toy mode");
  if (levels < 1 || levels > spec.K) throw DomainError("levels must lie in [1, K]");
  ExponentValue out;
  if (z == 0.0) return out;
  const Sample s{std::abs(z), std::log10(std::abs(z))};
  for (int j = 1; j <= levels; ++j) {
    const auto v = level_value(spec, j, s);
    out.re += v.re.to_double();
    out.im_signed += v.im.to_double();
    out.abs_err += v.re_err.to_double() + v.im_err.to_double();
  }
  if (z < 0.0) out.im_signed = -out.im_signed;
  return out;
}

bool WindowReport::all_hold() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const auto& r) { return r.verdict == Verdict::satisfied; });
}

std::vector<double> window_samples(const CounterexampleSpec& spec, int k, int count) {
  if (spec.mode != CxMode::toy) throw DomainError("window samples as doubles need toy mode");
  if (k < 1 || k > spec.K) throw DomainError("level out of range");
  count = std::max(count, 2);
  const double n = spec.n[k - 1];
  std::vector<double> z(count);
  for (int i = 0; i < count; ++i) z[i] = 0.5 * n * std::pow(4.0, static_cast<double>(i) / (count - 1));
  z.front() = 0.5 * n;
  z.back() = 2.0 * n;
  return z;
}

WindowReport verify_window(const CounterexampleSpec& spec, int k, int samples) {
  if (k < 1 || k > spec.K) throw DomainError("level out of range");
  const double a = spec.alpha;
  const auto s = samples_for(spec, k, samples);
  const auto tab = level_table(spec, s);
  const LogReal nk = n_of(spec, k);

  WindowReport w;
  w.k = k;
  for (std::size_t i = 0; i < s.size(); ++i) {
    w.z.push_back(grid_coord(spec, s[i]));
    LogReal re, im;
    for (const auto& v : tab[i]) {
      re = re + v.re;
      im = im + v.im;
    }
    w.re.push_back(re);
    w.im.push_back(im);
  }

  ConditionReport own_im, own_re, b21, b22;
  own_im.name = "own-im-lower";
  own_re.name = "own-re-upper";
  b21.name = "global-re";
  b22.name = "global-im";
  const LogReal hb = pow(nk, 2.0 * a - 1.0) / lr(8.0);
  const LogReal jb = lr(2.0 / (2.0 - a)) * pow(nk, 2.0 * a - 2.0);
  const LogReal gb = lr(4.0) * pow(nk, 2.0 * a);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& v = tab[i][k - 1];
    const double g = grid_coord(spec, s[i]);
    own_im.add(g, ratio(v.im, hb) - 1.0, ratio(v.im_err, hb), ratio(v.im, hb));
    own_re.add(g, 1.0 - ratio(v.re, jb), ratio(v.re_err, jb), ratio(v.re, jb));
    if (spec.mode == CxMode::paper_log) {
      b21.add(g, 1.0 - ratio(v.re, gb), ratio(v.re_err, gb), ratio(v.re, gb));
      b22.add(g, 1.0 - std::abs(ratio(v.im, gb)), ratio(v.im_err, gb), ratio(v.im, gb));
    }
  }
  if (spec.mode == CxMode::toy) {
    // Global bounds hold for every z: sample well beyond the windows as well.
    const auto zs = log_grid(1e-2, 10.0 * spec.n.back(), 10);
    std::vector<double> pick;
    for (std::size_t i = 0; i < 100; ++i) pick.push_back(zs[i * (zs.size() - 1) / 99]);
    const auto vals = parallel_map<LevelValue>(pick.size(), [&](std::size_t i) {
      return level_value(spec, k, Sample{pick[i], std::log10(pick[i])});
    });
    for (std::size_t i = 0; i < pick.size(); ++i) {
      const auto& v = vals[i];
      b21.add(pick[i], 1.0 - ratio(v.re, gb), ratio(v.re_err, gb), ratio(v.re, gb));
      b22.add(pick[i], 1.0 - std::abs(ratio(v.im, gb)), ratio(v.im_err, gb), ratio(v.im, gb));
    }
  }
  for (auto* r : {&own_im, &own_re, &b21, &b22}) {
    r->finalize();
    w.bounds.push_back(std::move(*r));
  }

  if (k < spec.K) {
    ConditionReport p1, p2;
    p1.name = "higher-re";
    p2.name = "higher-im";
    for (int j = k + 1; j <= spec.K; ++j) {
      const LogReal nj = n_of(spec, j);
      const LogReal b1 = lr(2.0 / (2.0 - a)) * nk * nk * pow(nj, 2.0 * a - 4.0);
      const LogReal b2 = lr(2.0 / (1.0 - a)) * nk * pow(nj, 2.0 * a - 2.0);
      for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& v = tab[i][j - 1];
        const double g = grid_coord(spec, s[i]);
        p1.add(g, 1.0 - ratio(v.re, b1), ratio(v.re_err, b1), ratio(v.re, b1));
        p2.add(g, 1.0 - std::abs(ratio(v.im, b2)), ratio(v.im_err, b2), ratio(v.im, b2));
      }
    }
    p1.finalize();
    p2.finalize();
    p1.notes.push_back("levels j > " + std::to_string(k) + " on window " + std::to_string(k));
    p2.notes.push_back(p1.notes.back());
    w.bounds.push_back(std::move(p1));
    w.bounds.push_back(std::move(p2));
  }

  // Aggregate estimates. They rest on the full-scale thresholds, which toy mode skips.
  ConditionReport g1, g2;
  g1.name = "total-re-upper";
  g2.name = "total-im-lower";
  const LogReal im_half = tab.front()[k - 1].im;  // Im psi_k(n_k/2)
  const LogReal sum4 = inv_fourth_sum(spec);
  LogReal bound1 = lr(2.0) + lr(2.0 / (1.0 - a)) * sum4;
  if (k >= 2) bound1 = bound1 + im_half / (lr(3.0) * pow(n_of(spec, k - 1), 4.0));
  const LogReal bound2 = (lr(1.0) - sum4 / lr(3.0)) * im_half;
  const auto& half = tab.front()[k - 1];
  for (std::size_t i = 0; i < s.size(); ++i) {
    LogReal up;
    for (const auto& v : tab[i]) up = up + v.re + v.re_err;
    const double g = grid_coord(spec, s[i]);
    g1.add(g, 1.0 - ratio(up, bound1), 0.0, ratio(up, bound1));
    // Im psi(z) - bound2 written as a sum of small terms; at z = n_k/2 the own level cancels exactly.
    const auto& own = tab[i][k - 1];
    LogReal diff = sum4 / lr(3.0) * im_half, err;
    if (i > 0) {
      diff = diff + own.im - im_half;
      err = own.im_err + half.im_err;
    }
    for (int j = 1; j <= spec.K; ++j) {
      if (j == k) continue;
      diff = diff + tab[i][j - 1].im;
      err = err + tab[i][j - 1].im_err;
    }
    g2.add(g, ratio(diff, bound2), ratio(err, bound2), ratio(own.im, bound2));
  }
  g1.finalize();
  g2.finalize();
  auto& dest = spec.mode == CxMode::toy ? w.aggregates : w.bounds;
  if (spec.mode == CxMode::toy) {
    g1.notes.push_back("toy mode skips the thresholds behind this estimate; reported only");
    g2.notes.push_back(g1.notes.back());
  }
  dest.push_back(std::move(g1));
  dest.push_back(std::move(g2));
  return w;
}

ConditionReport ratio_growth(const CounterexampleSpec& spec, const std::vector<int>& ks, int samples) {
  ConditionReport r;
  r.name = "ratio-growth";
  const bool paper = spec.mode == CxMode::paper_log;
  std::vector<LogReal> mins, remax;
  for (int k : ks) {
    if (k < 1 || k > spec.K) throw DomainError("level out of range");
    const auto s = samples_for(spec, k, samples);
    const auto tab = level_table(spec, s);
    LogReal best, top;
    bool first = true;
    for (const auto& row : tab) {
      LogReal re, im;
      for (const auto& v : row) {
        re = re + v.re + v.re_err;
        im = im + v.im - v.im_err;
      }
      const LogReal q = im / (lr(1.0) + re);
      if (first || q < best) best = q;
      if (first || top < re) top = re;
      first = false;
    }
    mins.push_back(best);
    remax.push_back(top);
  }
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double v = paper ? mins[i].log10_abs : mins[i].to_double();
    if (i == 0) {
      r.notes.push_back("window " + std::to_string(ks[0]) + " min ratio " + mins[0].to_string());
      continue;
    }
    double m;
    if (mins[i - 1].sign <= 0 || mins[i].sign <= 0) {
      m = ratio(mins[i] - mins[i - 1], lr(1.0));
    } else {
      // log10 of the successive ratio; the minima can differ by thousands of decades
      m = mins[i].log10_abs - mins[i - 1].log10_abs;
    }
    r.add(ks[i], m, 0.0, v);
  }
  r.finalize();
  r.notes.push_back(paper ? "values are log10 of the window minima" : "values are the window minima");
  if (!ks.empty() && !mins[0].is_zero()) {
    // c3 from the first window against (z/2)^{3/theta} at z = n_k/2.
    const double e = 3.0 / spec.theta;
    const LogReal c3 = mins[0] / pow(n_of(spec, ks[0]) / lr(4.0), e);
    r.notes.push_back("fitted c3 = " + c3.to_string());
    for (std::size_t i = 1; i < ks.size(); ++i) {
      const LogReal lower = c3 * pow(n_of(spec, ks[i]) / lr(4.0), e);
      r.notes.push_back("window " + std::to_string(ks[i]) + ": min ratio " + mins[i].to_string() +
                        (mins[i] < lower ? " below " : " above ") + "c3 (n_k/4)^{3/theta} = " + lower.to_string());
    }
  }
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 2) continue;
    const LogReal scale = pow(n_of(spec, ks[i] - 1), spec.alpha * spec.theta - 3.0);
    r.notes.push_back("window " + std::to_string(ks[i]) + ": max Re psi / n_{k-1}^{a theta - 3} = " +
                      (remax[i] / scale).to_string());
  }
  return r;
}

LogReal tail_bound_log(const CounterexampleSpec& spec, int K_used, double log10_z) {
  const double a = spec.alpha;
  LogReal sum;
  const LogReal z = LogReal::from_log10(log10_z);
  for (int j = std::max(K_used, 0) + 1; j <= spec.K; ++j) {
    const LogReal nj = n_of(spec, j);
    sum = sum + lr(2.0 / (2.0 - a)) * z * z * pow(nj, 2.0 * a - 4.0) + lr(2.0 / (1.0 - a)) * z * pow(nj, 2.0 * a - 2.0);
  }
  return sum;
}

double tail_bound(const CounterexampleSpec& spec, int K_used, double z) {
  if (z == 0.0) return 0.0;
  const LogReal b = tail_bound_log(spec, K_used, std::log10(std::abs(z)));
  if (b.is_zero()) return 0.0;
  if (b.log10_abs < -300.0) return std::pow(10.0, b.log10_abs);
  return b.to_double();
}

}  // namespace huntlab
