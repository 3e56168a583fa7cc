#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature (QUADPACK QAG style).
//
// The integrand may be real or complex valued. The caller supplies the initial
// breakpoints; this is how oscillatory integrands get panels aligned to their
// half-periods, and how known kinks are kept off the interior of a panel.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace huntlab::quad {

struct Options {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

template <class T>
struct Result {
  T value{};
  double abs_err = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478398, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss 10-point weights, attached to the odd Kronrod abscissae.
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  bool at_floor;  // error estimate is pure roundoff; bisecting cannot help
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F, class T>
Panel<T> gk21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T resk = fc * kWgk[10];
  T resg{};
  std::array<T, 10> f1{}, f2{};
  for (int j = 0; j < 5; ++j) {
    const int jt = 2 * j + 1;
    const double dx = half * kXgk[jt];
    f1[jt] = f(center - dx);
    f2[jt] = f(center + dx);
    resg += kWg[j] * (f1[jt] + f2[jt]);
    resk += kWgk[jt] * (f1[jt] + f2[jt]);
  }
  for (int j = 0; j < 5; ++j) {
    const int jt = 2 * j;
    const double dx = half * kXgk[jt];
    f1[jt] = f(center - dx);
    f2[jt] = f(center + dx);
    resk += kWgk[jt] * (f1[jt] + f2[jt]);
  }
  const T mean = resk * 0.5;
  double resasc = kWgk[10] * magnitude(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));
  }
  resasc *= std::abs(half);
  double err = magnitude((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const T value = resk * half;
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * magnitude(value);
  const bool at_floor = err <= floor;
  err = std::max(err, floor);
  if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
  return {a, b, value, err, at_floor};
}

}  // namespace detail

// Integrate f over [breaks.front(), breaks.back()] with initial panels given by
// consecutive breakpoints. Panels are bisected largest-error first.
template <class F>
auto integrate(F&& f, std::span<const double> breaks, const Options& opt = {})
    -> Result<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  Result<T> out;
  if (breaks.size() < 2) return out;
  std::priority_queue<detail::Panel<T>> heap;
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto p = detail::gk21<F, T>(f, breaks[i], breaks[i + 1]);
    out.evaluations += 21;
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }
  int intervals = static_cast<int>(heap.size());
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (!heap.empty() && total_err > tolerance()) {
    if (intervals >= opt.max_intervals) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    if (worst.at_floor) break;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      break;
    }
    heap.pop();
    auto left = detail::gk21<F, T>(f, worst.a, mid);
    auto right = detail::gk21<F, T>(f, mid, worst.b);
    out.evaluations += 42;
    ++intervals;
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of incremental updates.
  T value{};
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  out.value = value;
  out.abs_err = err;
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const Options& opt = {}) {
  const std::array<double, 2> br = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(br), opt);
}

// Breakpoints a, a+step, ..., b (the last panel may be short).
inline std::vector<double> uniform_breaks(double a, double b, double step) {
  std::vector<double> br{a};
  if (step > 0.0) {
    const double n = std::floor((b - a) / step);
    for (double k = 1; k <= n; ++k) {
      const double x = a + k * step;
      if (x < b) br.push_back(x);
    }
  }
  br.push_back(b);
  return br;
}

}  // namespace huntlab::quad
