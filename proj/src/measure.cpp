#include "huntlab/measure.hpp"

#include <algorithm>
#include <cmath>

#include "huntlab/errors.hpp"
#include "huntlab/pieces.hpp"

namespace huntlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

double side_factor(Side s) { return s == Side::symmetric ? 2.0 : 1.0; }

double interpolate(const Tabulated& t, std::size_t i, double x) {
  const double x0 = t.knots[i], x1 = t.knots[i + 1];
  const double v0 = t.density[i], v1 = t.density[i + 1];
  if (v0 > 0.0 && v1 > 0.0) {
    const double e = std::log(v1 / v0) / std::log(x1 / x0);
    return v0 * std::pow(x / x0, e);
  }
  return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
}

}  // namespace

LogPowerBand log_power_band(double coeff, double alpha, double lower, double upper, LogMode mode) {
  return {coeff, alpha, lower, upper, mode == LogMode::reciprocal ? -1.0 : 1.0};
}

void validate(const MeasureComponent& c) {
  std::visit(overloaded{
                 [](const PowerBand& p) {
                   require(p.coeff > 0.0, "power band coeff must be positive");
                   require(p.alpha > 0.0 && p.alpha < 2.0, "power band alpha must lie in (0,2)");
                   require(p.lower >= 0.0 && p.lower < p.upper, "power band needs 0 <= lower < upper");
                 },
                 [](const StableTail& s) {
                   require(s.coeff > 0.0, "stable tail coeff must be positive");
                   require(s.alpha > 0.0 && s.alpha < 1.0, "stable tail alpha must lie in (0,1)");
                 },
                 [](const LogPowerBand& l) {
                   require(l.coeff > 0.0, "log power band coeff must be positive");
                   require(l.alpha > 0.0 && l.alpha < 2.0, "log power band alpha must lie in (0,2)");
                   require(l.lower >= 0.0 && l.lower < l.upper && l.upper < 1.0,
                           "log power band needs 0 <= lower < upper < 1");
                   require(std::isfinite(l.log_power), "log power must be finite");
                 },
                 [](const Atoms& a) {
                   require(!a.points.empty(), "atom list is empty");
                   for (const auto& [x, m] : a.points) {
                     require(x > 0.0 && std::isfinite(x), "atom locations must be positive");
                     require(m > 0.0 && std::isfinite(m), "atom masses must be positive");
                   }
                 },
                 [](const Tabulated& t) {
                   require(t.knots.size() >= 2 && t.knots.size() == t.density.size(),
                           "tabulated density needs matching knots and values (at least 2)");
                   for (std::size_t i = 0; i < t.knots.size(); ++i) {
                     require(t.knots[i] > 0.0 && std::isfinite(t.knots[i]), "knots must be positive");
                     require(t.density[i] >= 0.0 && std::isfinite(t.density[i]),
                             "density values must be nonnegative");
                     if (i > 0) require(t.knots[i] > t.knots[i - 1], "knots must be increasing");
                   }
                 },
             },
             c.shape);
}

void validate(const LevyTriplet& t) {
  require(t.dimension == 1, "only dimension 1 is supported");
  require(std::isfinite(t.linear), "linear term must be finite");
  require(t.gaussian >= 0.0 && std::isfinite(t.gaussian), "gaussian coefficient must be nonnegative");
  for (const auto& c : t.measure) validate(c);
  if (t.form == Form::drift) {
    require(t.gaussian == 0.0, "drift form requires a zero gaussian part");
    for (const auto& c : t.measure) {
      require(c.side == Side::positive, "drift form requires a measure on (0, inf)");
      require(!accumulates_at_zero(c) || local_index(c) < 1.0,
              "drift form requires integrable small jumps (index < 1)");
    }
  }
}

double abs_moment(const MeasureComponent& c, int j, double lo, double hi) {
  double sum = 0.0;
  if (const auto* a = std::get_if<Atoms>(&c.shape)) {
    for (const auto& [x, m] : a->points) {
      if (x >= lo && x < hi) sum += m * std::pow(x, j);
    }
  } else {
    for (const auto& p : pieces_of(c)) {
      const double l = std::max(lo, p.a), h = std::min(hi, p.b);
      if (l < h) sum += p.moment(j, l, h);
    }
  }
  return side_factor(c.side) * sum;
}

double signed_first_moment(const MeasureComponent& c, double lo, double hi) {
  switch (c.side) {
    case Side::positive:
      return abs_moment(c, 1, lo, hi);
    case Side::negative:
      return -abs_moment(c, 1, lo, hi);
    case Side::symmetric:
      return 0.0;
  }
  return 0.0;
}

double total_mass(const MeasureComponent& c) {
  if (accumulates_at_zero(c)) return kInf;
  return abs_moment(c, 0, 0.0, kInf);
}

double total_mass(const LevyMeasure& m) {
  double s = 0.0;
  for (const auto& c : m) s += total_mass(c);
  return s;
}

std::optional<MeasureComponent> restrict_below(const MeasureComponent& c, double delta) {
  MeasureComponent out = c;
  bool keep = true;
  std::visit(overloaded{
                 [&](const PowerBand& p) {
                   if (p.lower >= delta) {
                     keep = false;
                     return;
                   }
                   auto q = p;
                   q.upper = std::min(p.upper, delta);
                   out.shape = q;
                 },
                 [&](const StableTail& s) { out.shape = PowerBand{s.coeff, s.alpha, 0.0, delta}; },
                 [&](const LogPowerBand& l) {
                   if (l.lower >= delta) {
                     keep = false;
                     return;
                   }
                   auto q = l;
                   q.upper = std::min(l.upper, delta);
                   out.shape = q;
                 },
                 [&](const Atoms& a) {
                   Atoms q;
                   for (const auto& pt : a.points) {
                     if (pt.first < delta) q.points.push_back(pt);
                   }
                   keep = !q.points.empty();
                   out.shape = q;
                 },
                 [&](const Tabulated& t) {
                   if (t.knots.front() >= delta) {
                     keep = false;
                     return;
                   }
                   Tabulated q;
                   for (std::size_t i = 0; i < t.knots.size(); ++i) {
                     if (t.knots[i] < delta) {
                       q.knots.push_back(t.knots[i]);
                       q.density.push_back(t.density[i]);
                     } else {
                       q.knots.push_back(delta);
                       q.density.push_back(t.knots[i] == delta ? t.density[i] : interpolate(t, i - 1, delta));
                       break;
                     }
                   }
                   if (q.knots.size() < 2) {
                     keep = false;
                     return;
                   }
                   out.shape = q;
                 },
             },
             c.shape);
  if (!keep) return std::nullopt;
  return out;
}

double support_sup(const MeasureComponent& c) {
  return std::visit(overloaded{
                        [](const PowerBand& p) { return p.upper; },
                        [](const StableTail&) { return kInf; },
                        [](const LogPowerBand& l) { return l.upper; },
                        [](const Atoms& a) {
                          double m = 0.0;
                          for (const auto& pt : a.points) m = std::max(m, pt.first);
                          return m;
                        },
                        [](const Tabulated& t) { return t.knots.back(); },
                    },
                    c.shape);
}

bool accumulates_at_zero(const MeasureComponent& c) {
  return std::visit(overloaded{
                        [](const PowerBand& p) { return p.lower == 0.0; },
                        [](const StableTail&) { return true; },
                        [](const LogPowerBand& l) { return l.lower == 0.0; },
                        [](const Atoms&) { return false; },
                        [](const Tabulated&) { return false; },
                    },
                    c.shape);
}

double local_index(const MeasureComponent& c) {
  if (!accumulates_at_zero(c)) return 0.0;
  return std::visit(overloaded{
                        [](const PowerBand& p) { return p.alpha; },
                        [](const StableTail& s) { return s.alpha; },
                        [](const LogPowerBand& l) { return l.alpha; },
                        [](const auto&) { return 0.0; },
                    },
                    c.shape);
}

MeasureComponent symmetrized(MeasureComponent c) {
  c.side = Side::symmetric;
  return c;
}

std::string family_name(const MeasureComponent& c) {
  static const char* names[] = {"power_band", "stable_tail", "log_power_band", "atoms", "tabulated"};
  return names[c.shape.index()];
}

std::string side_name(Side s) {
  switch (s) {
    case Side::positive:
      return "positive";
    case Side::negative:
      return "negative";
    case Side::symmetric:
      return "symmetric";
  }
  return "";
}

std::string form_name(Form f) { return f == Form::general ? "general" : "drift"; }

}  // namespace huntlab
