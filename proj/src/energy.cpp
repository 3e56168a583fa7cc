#include "huntlab/energy.hpp"

#include <cmath>

#include "huntlab/errors.hpp"
#include "huntlab/parallel.hpp"
#include "huntlab/quadrature.hpp"

namespace huntlab {

namespace {

// 1 - omega^{-0.1} without cancellation for huge omega
double one_minus_root(double omega) { return -std::expm1(-0.1 * std::log(omega)); }

// 1 - s|x| with s = (1 - omega^{-0.1})/omega, written so the omega^{-0.1} part survives
double triangle(double omega, double ax) { return (omega - ax) / omega + ax / omega * std::pow(omega, -0.1); }

// integral of z^{-0.2} over [a, b]
double power_02(double a, double b) { return (std::pow(b, 0.8) - std::pow(a, 0.8)) / 0.8; }

AB ab_of(const SignedCF& s, double z) { return ab_from(cx_psi(s.spec, s.K, z)); }

double integrate_log_panels(const std::function<double(double)>& f, std::vector<double> cuts, int panels) {
  std::vector<double> br;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    for (int p = 0; p < panels; ++p) br.push_back(a * std::pow(b / a, static_cast<double>(p) / panels));
  }
  br.push_back(cuts.back());
  quad::Options opt;
  opt.rel_tol = 1e-8;
  opt.max_intervals = 64;
  const auto parts = parallel_map<double>(br.size() - 1, [&](std::size_t i) {
    return quad::integrate(f, br[i], br[i + 1], opt).value;
  });
  double sum = 0.0;
  for (double v : parts) sum += v;
  return sum;
}

}  // namespace

double polya_eval(double omega, PolyaKind kind, double x) {
  if (!(omega >= 10.0)) throw DomainError("omega must be at least 10");
  const double ax = std::abs(x);
  const double tri = triangle(omega, ax);
  switch (kind) {
    case PolyaKind::zeta:
      return ax <= omega ? tri : std::pow(ax, -0.1);
    case PolyaKind::eta:
      return std::max(tri, 0.0);
    case PolyaKind::varsigma:
      if (ax <= omega) return 0.0;
      return std::pow(ax, -0.1) - std::max(tri, 0.0);
  }
  return 0.0;
}

double polya_plateau_start(double omega) { return omega / one_minus_root(omega); }

SignedCF make_signed(const CounterexampleSpec& spec, int K) {
  if (K < 1 || K > spec.K) throw DomainError("K must lie in [1, spec.K]");
  for (int k = 1; k <= K; ++k) {
    if (!(static_cast<std::size_t>(k) <= spec.n.size() && std::isfinite(spec.n[k - 1]))) {
      throw RepresentationError("level " + std::to_string(k) + " is not representable");
    }
  }
  if (!(spec.n[0] >= 20.0)) throw DomainError("the signed measure needs n_1 >= 20");
  SignedCF s{spec, K, true};
  for (int k = 1; k < K; ++k) {
    if (!(xi_support(s, k).second < xi_support(s, k + 1).first)) s.disjoint = false;
  }
  return s;
}

std::pair<double, double> xi_support(const SignedCF& s, int k) {
  const double n = s.spec.n[k - 1];
  return {0.5 * n, polya_plateau_start(2.0 * n / 1.1)};
}

double xi(const SignedCF& s, int k, double x) {
  const double n = s.spec.n[k - 1];
  return polya_eval(0.5 * n, PolyaKind::varsigma, x) - polya_eval(2.0 * n / 1.1, PolyaKind::varsigma, x);
}

double nu_hat(const SignedCF& s, double x) {
  double sum = 0.0;
  for (int k = 1; k <= s.K; ++k) sum += std::ldexp(xi(s, k, x), -k);
  return sum;
}

double energy_integrand(const SignedCF& s, double z) {
  const double v = nu_hat(s, z);
  if (v == 0.0) return 0.0;
  const auto [A, B] = ab_of(s, z);
  return A * v * v / (B * B);
}

EnergyResult one_energy(const SignedCF& s, int panels_per_level) {
  const double a = s.spec.alpha;
  EnergyResult out;
  out.nominal_exponent = a == 0.75;
  out.exponent = out.nominal_exponent ? 9.0 / 11.0 : 4.0 / s.spec.theta - 1.0 / 22.0 + 2.0 * a - 1.0;
  const auto f = [&](double z) {
    const double v = nu_hat(s, z);
    if (v == 0.0) return 0.0;
    const auto [A, B] = ab_of(s, z);
    return A * v * v / (B * B);
  };
  double partial = 0.0;
  for (int k = 1; k <= s.K; ++k) {
    const double n = s.spec.n[k - 1];
    const auto [lo, hi] = xi_support(s, k);
    std::vector<double> cuts = {lo};
    const double p = polya_plateau_start(0.5 * n);
    if (p > lo && p < 2.0 * n / 1.1) cuts.push_back(p);
    cuts.push_back(2.0 * n / 1.1);
    if (hi > cuts.back()) cuts.push_back(hi);
    const double c = 2.0 * integrate_log_panels(f, cuts, panels_per_level);
    out.contributions.push_back(c);
    partial += c;
    out.partial_sums.push_back(partial);
    out.envelope.push_back(std::pow(n, -out.exponent) * std::ldexp(1.0, -2 * k) * power_02(0.5 * n, 2.0 * n));
  }
  auto& r = out.bound_check;
  r.name = "energy-envelope";
  const double chat = out.contributions[0] / out.envelope[0];
  for (int k = 2; k <= s.K; ++k) {
    const double env = chat * out.envelope[k - 1];
    r.add(k, 1.0 - out.contributions[k - 1] / env, 1e-6, out.contributions[k - 1]);
  }
  r.finalize();
  r.notes.push_back("fitted C = " + std::to_string(chat) + " at k = 1");
  if (!out.nominal_exponent) r.notes.push_back("exponent recomputed for alpha != 3/4 (not the nominal 9/11)");
  if (!s.disjoint) r.force(Verdict::inconclusive, "supports of the xi_k overlap");
  return out;
}

double divergence_witness(const SignedCF& s, int k) {
  if (k < 1 || k > s.K) throw DomainError("level out of range");
  const double n = s.spec.n[k - 1];
  const double lam = std::pow(n, s.spec.alpha);
  const auto f = [&](double z) {
    const double v = nu_hat(s, z);
    if (v == 0.0) return 0.0;
    const double im = cx_psi(s.spec, s.K, z).im_signed;
    return v * v / (lam + (im / lam) * im);  // lambda^2 overflows on high levels
  };
  std::vector<double> cuts = {0.55 * n};
  const double p = polya_plateau_start(0.5 * n);
  if (p > cuts[0] && p < 2.0 * n / 1.1) cuts.push_back(p);
  cuts.push_back(2.0 * n / 1.1);
  return integrate_log_panels(f, cuts, 24);
}

double witness_envelope(const SignedCF& s, int k) {
  const double n = s.spec.n[k - 1];
  return std::pow(n, -0.75) * std::ldexp(1.0, -2 * k) * power_02(0.55 * n, 2.0 * n / 1.1);
}

}  // namespace huntlab
