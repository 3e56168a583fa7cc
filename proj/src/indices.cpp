#include "huntlab/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "huntlab/parallel.hpp"
#include "huntlab/report.hpp"

namespace huntlab {

BgIndices bg_indices(const LevyTriplet& t, const IndexOptions& opt) {
  validate(t);
  BgIndices out;
  for (const auto& c : t.measure) {
    if (accumulates_at_zero(c)) out.beta = std::max(out.beta, local_index(c));
  }

  // log of the block minimum of Re psi against log of the block's left end.
  const auto z = log_grid(opt.re_lo, opt.re_hi, opt.points_per_decade);
  const auto re = parallel_map<double>(z.size(), [&](std::size_t i) { return eval_psi(t, z[i]).re; });
  std::map<int, double> block;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int key = static_cast<int>(std::floor(std::log2(z[i]) + 1e-12));
    auto it = block.find(key);
    block[key] = it == block.end() ? re[i] : std::min(it->second, re[i]);
  }
  std::vector<double> x, y;
  for (const auto& [k, v] : block) {
    if (v > 0.0) {
      x.push_back(k * std::log(2.0));
      y.push_back(std::log(v));
    }
  }
  out.beta_pp_estimate = x.size() >= 2 ? fit_line(x, y).slope : 0.0;

  if (t.form == Form::drift) {
    const auto s = log_grid(opt.lap_lo, opt.lap_hi, opt.points_per_decade);
    const auto lap = parallel_map<double>(s.size(), [&](std::size_t i) { return laplace_exponent(t, s[i]); });
    std::vector<double> ls, ll;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (lap[i] > 0.0) {
        ls.push_back(std::log(s[i]));
        ll.push_back(std::log(lap[i]));
      }
    }
    out.sigma_estimate = ls.size() >= 2 ? fit_line(ls, ll).slope : 0.0;
  } else {
    out.sigma_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

BgIndices bg_indices(const CounterexampleSpec& spec, int points_per_decade) {
  BgIndices out;
  out.beta = spec.alpha;
  out.sigma_estimate = std::numeric_limits<double>::quiet_NaN();
  out.beta_pp_estimate = std::numeric_limits<double>::quiet_NaN();
  if (spec.mode != CxMode::toy) return out;
  // below n_1^2 no band is fully active and Re psi < 1
  const auto z = log_grid(spec.n.front() * spec.n.front(), spec.n.back(), points_per_decade);
  const auto ratio = parallel_map<double>(z.size(), [&](std::size_t i) {
    return std::log(cx_psi(spec, spec.K, z[i]).re) / std::log(z[i]);
  });
  out.beta_pp_estimate = *std::min_element(ratio.begin(), ratio.end());
  return out;
}

}  // namespace huntlab
