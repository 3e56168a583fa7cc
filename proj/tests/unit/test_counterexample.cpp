#include <cmath>
#include <limits>

#include "doctest.h"
#include "huntlab/conditions.hpp"
#include "huntlab/counterexample.hpp"
#include "huntlab/errors.hpp"
#include "oracles.hpp"

using namespace huntlab;

namespace {

const ConditionReport& bound(const WindowReport& w, const std::string& name) {
  for (const auto& b : w.bounds) {
    if (b.name == name) return b;
  }
  FAIL("missing bound " << name);
  return w.bounds.front();
}

}  // namespace

TEST_CASE("theta") {
  CHECK(theta(0.75) == 11.0);
  CHECK(theta(0.9) == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(theta(0.5 + 1e-6) > 1e6);
  CHECK_THROWS_AS(theta(0.5), DomainError);
  CHECK_THROWS_AS(theta(1.0), DomainError);
}

TEST_CASE("minimal n_1 by brute force") {
  for (double a : {0.75, 0.8, 0.9}) {
    long n = 1;
    while (!(std::pow(static_cast<double>(n), 2 * a - 1) / 8 > 6 / (1 - a))) ++n;
    CHECK(minimal_n1(a) == static_cast<double>(n));
  }
  CHECK(minimal_n1(0.75) == 36865.0);
}

TEST_CASE("paper-log recursion") {
  const auto s = build_spec(0.75, 10, CxMode::paper_log);
  CHECK(s.theta == 11.0);
  CHECK(s.c == doctest::Approx(9216.0).epsilon(1e-14));
  CHECK(s.log10_n.front() == doctest::Approx(std::log10(36865.0)).epsilon(1e-15));
  CHECK(recursion_residual(s) <= 1e-12);
  for (int k = 2; k <= 10; ++k) {
    const double expect = std::log10(k - 1.0) / 0.5 + std::log10(9216.0) + 11.0 * s.log10_n[k - 2];
    CHECK(oracle::rel(s.log10_n[k - 1], expect) < 1e-12);
  }
  CHECK(double_log_affinity(s) < 0.05);
  CHECK_THROWS_AS(counterexample_measure(s, 3), RepresentationError);
}

TEST_CASE("toy levels") {
  const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, 2.0});
  REQUIRE(s.n.size() == 3);
  CHECK(s.n[0] == 64.0);
  CHECK(s.n[1] == 4096.0);
  CHECK(s.n[2] == 16777216.0);
  for (int k = 1; k < 3; ++k) CHECK(s.n[k] * s.n[k] > 2 * s.n[k - 1] * s.n[k - 1]);
  const auto m = counterexample_measure(s, 3);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == MeasureComponent{PowerBand{1.0, 0.75, 1.0 / 8192, 1.0 / 4096}, Side::positive});
  for (std::size_t k = 1; k < m.size(); ++k) {
    CHECK(std::get<PowerBand>(m[k].shape).upper < std::get<PowerBand>(m[k - 1].shape).lower);
  }
  for (int k = 1; k <= 3; ++k) {
    const double n = s.n[k - 1];
    const double closed = std::pow(n, 1.5) * (std::pow(2.0, 0.75) - 1.0) / 0.75;
    const double quad = oracle::laplace([](double x) { return std::pow(x, -1.75); }, 1e300, 0.5 / (n * n),
                                        1.0 / (n * n), 20000);
    CHECK(oracle::rel(total_mass(m[k - 1]), closed) < 1e-12);
    CHECK(oracle::rel(quad, closed) < 1e-9);
  }
}

TEST_CASE("cx_psi agrees with the assembled triplet") {
  const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, 2.0});
  const auto t = counterexample_triplet(s, 3);
  for (double z : {1.0, 100.0, 5e3, 2e6, 1e9}) {
    const auto a = cx_psi(s, 3, z), b = eval_psi(t, z);
    CHECK(oracle::rel(a.re, b.re) < 1e-10);
    CHECK(oracle::rel(a.im_signed, b.im_signed) < 1e-10);
  }
}

TEST_CASE("window inequalities on the toy spec") {
  for (double th : {2.0, 6.0}) {
    const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, th});
    for (int k = 1; k <= 3; ++k) {
      const auto w = verify_window(s, k, 33);
      CHECK(w.z.size() == 33);
      const auto& h = bound(w, "own-im-lower");
      for (double m : h.margins) CHECK(m > 0.0);
      CHECK(bound(w, "global-re").verdict == Verdict::satisfied);
      if (k < 3) {
        CHECK(bound(w, "higher-re").verdict == Verdict::satisfied);
        CHECK(bound(w, "higher-im").verdict == Verdict::satisfied);
      }
      CHECK(w.all_hold());
    }
  }
}

TEST_CASE("own-level Im bound and higher-level Im bound recomputed from the oracle") {
  const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, 2.0});
  const double n1 = s.n[0], n2 = s.n[1];
  const auto f = [](double x) { return std::pow(x, -1.75); };
  for (double z : window_samples(s, 1, 5)) {
    const auto own = oracle::band(f, z, 0.5 / (n1 * n1), 1.0 / (n1 * n1), 20000);
    CHECK(own.im >= std::pow(n1, 0.5) / 8);
    const auto next = oracle::band(f, z, 0.5 / (n2 * n2), 1.0 / (n2 * n2), 20000);
    CHECK(std::abs(next.im) <= 2 * n1 * std::pow(n2, -0.5) / 0.25);
  }
}

TEST_CASE("per-window minimum ratio grows") {
  const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, 6.0});
  const auto r = ratio_growth(s, {1, 2, 3});
  CHECK(r.verdict == Verdict::satisfied);
  // the same minima from cx_psi directly, with B/(A f(A)) as the Rao witness (f = log floored at 1)
  const auto f = GaugeFunction::log();
  double prev_kf = 0.0, prev_rao = 0.0;
  for (int k = 1; k <= 3; ++k) {
    double kf = std::numeric_limits<double>::infinity(), rao = kf;
    for (double z : window_samples(s, k, 33)) {
      const auto [A, B] = ab_from(cx_psi(s, 3, z));
      kf = std::min(kf, std::sqrt(B * B - A * A) / A);
      rao = std::min(rao, B / (A * f(A)));
    }
    CHECK(kf > prev_kf);
    CHECK(rao > prev_rao);
    prev_kf = kf;
    prev_rao = rao;
  }
}

TEST_CASE("mirrored bands kill the imaginary part") {
  const auto s = build_spec(0.75, 2, CxMode::toy, {64.0, 2.0});
  LevyTriplet t;
  t.form = Form::general;
  for (const auto& c : counterexample_measure(s, 2)) t.measure.push_back(symmetrized(c));
  const auto r = kf_ratio_profile(t, log_grid(10.0, 1e8, 4));
  for (double v : r.values) CHECK(v == 0.0);
}

TEST_CASE("tail bound") {
  const auto s = build_spec(0.75, 3, CxMode::toy, {64.0, 2.0});
  CHECK(tail_bound(s, 3, 1e5) == 0.0);
  double prev = 0.0;
  for (double z : log_grid(1.0, 1e9, 4)) {
    const double b = tail_bound(s, 1, z);
    CHECK(b >= prev);
    prev = b;
  }
  const auto t3 = counterexample_triplet(s, 3);
  for (int K = 1; K <= 2; ++K) {
    const auto tK = counterexample_triplet(s, K);
    for (double z : log_grid(1.0, 1e7, 3)) {
      const auto a = eval_psi(tK, z), b = eval_psi(t3, z);
      CHECK(std::hypot(a.re - b.re, a.im_signed - b.im_signed) <= tail_bound(s, K, z) * (1 + 1e-12) + 1e-12);
    }
  }
  // on window 1 the bound is the level-2 estimate |psi_2| <= 2 z^2 n_2^{2a-4}/(2-a) + 2 z n_2^{2a-2}/(1-a)
  const double n2 = s.n[1], n3 = s.n[2];
  for (double z : window_samples(s, 1, 5)) {
    double expect = 0.0;
    for (double n : {n2, n3}) expect += 2 * z * z * std::pow(n, -2.5) / 1.25 + 2 * z * std::pow(n, -0.5) / 0.25;
    CHECK(oracle::rel(tail_bound(s, 1, z), expect) < 1e-12);
  }
}

TEST_CASE("paper-log windows") {
  const auto s = build_spec(0.75, 3, CxMode::paper_log);
  for (int k = 1; k <= 3; ++k) {
    const auto w = verify_window(s, k, 9);
    CHECK(w.all_hold());
  }
  const auto r = ratio_growth(s, {1, 2, 3}, 9);
  CHECK(r.verdict == Verdict::satisfied);
}
