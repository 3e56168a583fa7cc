#include <cmath>
#include <numbers>

#include "doctest.h"
#include "huntlab/errors.hpp"
#include "huntlab/transforms.hpp"
#include "oracles.hpp"

using namespace huntlab;

namespace {

LevyTriplet stable_band() {
  LevyTriplet t;
  t.measure.push_back({PowerBand{1.0, 0.75, 0.0, 5.0}, Side::positive});
  return t;
}

LevyTriplet mu_t_band() {
  LevyTriplet t;
  t.measure.push_back({log_power_band(1.0, 0.75, 0.0, 0.5, LogMode::reciprocal), Side::positive});
  t.measure.push_back({PowerBand{0.5, 0.75, 0.5, 3.0}, Side::positive});
  return t;
}

LevyTriplet mixture() {
  LevyTriplet t;
  t.form = Form::general;
  t.linear = 0.3;
  t.measure.push_back({PowerBand{1.0, 0.4, 0.0, 2.0}, Side::symmetric});
  t.measure.push_back({StableTail{0.5, 0.7}, Side::negative});
  t.measure.push_back({Atoms{{{1.5, 0.8}}}, Side::positive});
  return t;
}

}  // namespace

TEST_CASE("truncate: general form above one keeps the linear term") {
  auto t = mixture();
  const auto r = truncate(t, 1.5);
  CHECK(r.truncated.linear == t.linear);
  CHECK(r.removed_mass > 0.0);
}

TEST_CASE("truncate beyond the support changes nothing") {
  LevyTriplet t;
  t.measure.push_back({PowerBand{1.0, 0.5, 0.0, 2.0}, Side::positive});
  const auto r = truncate(t, 10.0);
  CHECK(r.removed_mass == 0.0);
  CHECK(r.truncated == t);
}

TEST_CASE("drift truncation equals the general-form truncation of the same process") {
  auto t = stable_band();
  t.linear = 0.8;
  for (double delta : {0.1, 0.5, 2.0}) {
    const auto d = truncate(t, delta).truncated;
    const auto g = truncate(to_general(t), delta).truncated;
    for (double z : log_grid(1e-2, 1e4, 7)) {
      const auto a = eval_psi(d, z), b = eval_psi(g, z);
      CHECK(std::abs(a.re - b.re) <= 1e-10 * std::max(1.0, a.re));
      CHECK(std::abs(a.im_signed - b.im_signed) <= 1e-10 * std::max(1.0, std::abs(a.im_signed)));
    }
  }
}

TEST_CASE("mass conservation and monotone truncation") {
  for (const auto& t : {stable_band(), mu_t_band()}) {
    double prev = kInf;
    for (double delta : {0.05, 0.2, 0.5, 1.0, 2.5}) {
      const auto r = truncate(t, delta);
      CHECK(r.removed_mass <= prev);
      prev = r.removed_mass;
      // mass of {|x| >= eps} splits exactly at delta
      const double eps = 0.01;
      double before = 0.0, after = 0.0;
      for (const auto& c : t.measure) before += abs_moment(c, 0, eps, kInf);
      for (const auto& c : r.truncated.measure) after += abs_moment(c, 0, eps, kInf);
      CHECK(oracle::rel(after + r.removed_mass, before) < 1e-10);
    }
  }
  // closed form for the pure power band: mass of [delta, 5) is (delta^{-a} - 5^{-a})/a
  const auto r = truncate(stable_band(), 0.2);
  CHECK(oracle::rel(r.removed_mass, (std::pow(0.2, -0.75) - std::pow(5.0, -0.75)) / 0.75) < 1e-12);
}

TEST_CASE("resolvent real part") {
  LevyTriplet zero;
  CHECK(resolvent_real(zero, 2.0, 5.0) == doctest::Approx(0.5));
  const auto t = mixture();
  for (double z : {0.1, 3.0, 100.0}) CHECK(resolvent_real(t, 1.5, z) <= 1.0 / 1.5);
  LevyTriplet s;
  s.measure.push_back({StableTail{1.0, 0.5}, Side::positive});
  const double re = oracle::stable_re(1.0, 0.5, 1.0), im = oracle::stable_im(1.0, 0.5, 1.0);
  const double closed = (1.0 + re) / ((1.0 + re) * (1.0 + re) + im * im);
  CHECK(std::abs(resolvent_real(s, 1.0, 1.0) - closed) < 1e-6);
}

TEST_CASE("comparison with no truncation is the identity") {
  LevyTriplet t;
  t.measure.push_back({PowerBand{1.0, 0.5, 0.0, 1.0}, Side::positive});
  const auto r = comparison_margin(t, 2.0, 1.0, log_grid(1e-2, 1e3, 4));
  for (double v : r.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("comparison ratio stays in [1/4, 4] at lambda = 2C, 4C, 10C") {
  const double delta = 0.5;
  for (const auto& t : {stable_band(), mu_t_band(), mixture()}) {
    const double C = truncate(t, delta).removed_mass;
    REQUIRE(C > 0.0);
    for (double m : {2.0, 4.0, 10.0}) {
      const auto grid = log_grid(1e-2, 1e4, 16);
      const auto r = comparison_margin(t, delta, m * C, grid);
      CHECK(r.verdict == Verdict::satisfied);
      for (std::size_t i = 0; i < grid.size(); i += 13) {
        const double g = resolvent_real(t, m * C, grid[i]);
        const double h = resolvent_real(truncate(t, delta).truncated, m * C, grid[i]);
        CHECK(oracle::rel(r.values[i], g / h) < 1e-12);
      }
    }
    CHECK(comparison_margin(t, delta, 1.5 * C, {1.0}).verdict == Verdict::inconclusive);
  }
}

TEST_CASE("truncation bounds: imaginary part within C, real part within 2C") {
  for (const auto& t : {stable_band(), mu_t_band(), mixture()}) {
    const auto tr = truncate(t, 0.3);
    const double C = tr.removed_mass;
    for (double z : log_grid(1e-2, 1e4, 16)) {
      const auto a = eval_psi(t, z), b = eval_psi(tr.truncated, z);
      const double tol = a.abs_err + b.abs_err + 1e-12 * (C + a.re);
      CHECK(a.re - b.re >= -tol);
      CHECK(a.re - b.re <= 2 * C + tol);
      CHECK(std::abs(a.im_signed - b.im_signed) <= C + tol);
    }
  }
}

TEST_CASE("the real-part bound with C alone fails for a single far atom") {
  // atom of mass 1 at x = 1, cut at 0.5: Re psi - Re psi' = 1 - cos z, which is 2 = 2C at z = pi
  LevyTriplet t;
  t.measure.push_back({Atoms{{{1.0, 1.0}}}, Side::positive});
  t.measure.push_back({PowerBand{1.0, 0.5, 0.0, 0.4}, Side::positive});
  const auto tr = truncate(t, 0.5);
  CHECK(tr.removed_mass == doctest::Approx(1.0));
  const double z = std::numbers::pi;
  CHECK(eval_psi(t, z).re - eval_psi(tr.truncated, z).re == doctest::Approx(2.0).epsilon(1e-12));
  const auto r = truncation_bounds(t, 0.5, {z});
  CHECK(r.verdict == Verdict::violated);
  CHECK(r.margins[0] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("subordination") {
  LevyTriplet sub;
  sub.measure.push_back({StableTail{1.0, 0.5}, Side::positive});
  const auto zero = subordinate([](double) { return std::complex<double>(0.0, 0.0); }, sub);
  CHECK(std::abs(zero(3.0)) == 0.0);

  // symmetric outer process: phi real, closed form Gamma(1-b)/b phi^b
  LevyTriplet outer;
  outer.form = Form::general;
  outer.measure.push_back({PowerBand{1.0, 0.6, 0.0, 2.0}, Side::symmetric});
  const auto phi = exponent_fn(outer);
  const auto Phi = subordinate(phi, sub);
  for (double z : {0.3, 5.0, 80.0}) {
    const double p = phi(z).real();
    CHECK(std::abs(phi(z).imag()) < 1e-12 * p);
    CHECK(oracle::rel(Phi(z).real(), oracle::stable_laplace(1.0, 0.5, p)) < 1e-7);
  }
  CHECK(std::abs(Phi(0.0)) == 0.0);

  // conjugate symmetry carries over
  LevyTriplet skew;
  skew.measure.push_back({PowerBand{1.0, 0.7, 0.0, 1.0}, Side::positive});
  const auto S = subordinate(exponent_fn(skew), sub);
  for (double z : {0.5, 20.0}) {
    const auto a = S(z), b = S(-z);
    CHECK(std::abs(a - std::conj(b)) <= 1e-10 * std::abs(a));
  }
  CHECK_THROWS_AS(subordinate(phi, outer), DomainError);
}
