#include "huntlab/report.hpp"

#include <algorithm>
#include <cmath>

#include "huntlab/errors.hpp"

namespace huntlab {

void ConditionReport::add(double z, double margin, double err, double value) {
  grid.push_back(z);
  margins.push_back(margin);
  errors.push_back(err);
  values.push_back(value);
}

void ConditionReport::finalize() {
  if (margins.empty()) {
    verdict = Verdict::inconclusive;
    notes.push_back("empty grid");
    return;
  }
  std::size_t imin = 0;
  summary.max = margins[0];
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (margins[i] < margins[imin]) imin = i;
    summary.max = std::max(summary.max, margins[i]);
  }
  summary.min = margins[imin];
  summary.argmin = grid[imin];
  bool violated = false, all_ok = true;
  for (std::size_t i = 0; i < margins.size(); ++i) {
    const double e = i < errors.size() ? errors[i] : 0.0;
    if (std::isnan(margins[i])) {
      all_ok = false;
      continue;
    }
    if (margins[i] < -e) violated = true;
    if (!(margins[i] >= e)) all_ok = false;
  }
  verdict = violated ? Verdict::violated : (all_ok ? Verdict::satisfied : Verdict::inconclusive);
}

void ConditionReport::force(Verdict v, const std::string& why) {
  verdict = v;
  notes.push_back(why);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::satisfied:
      return "satisfied-on-grid";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "";
}

int exit_code(const std::vector<Verdict>& verdicts) {
  bool inconclusive = false;
  for (auto v : verdicts) {
    if (v == Verdict::violated) return 1;
    if (v == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

std::vector<double> log_grid(double zlo, double zhi, int points_per_decade) {
  if (!(zlo > 0.0 && zhi > zlo) || points_per_decade < 1) {
    throw DomainError("log grid needs 0 < zlo < zhi and a positive density");
  }
  const double decades = std::log10(zhi / zlo);
  const int n = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);
  std::vector<double> g(n);
  const double l0 = std::log10(zlo);
  for (int i = 0; i < n; ++i) g[i] = std::pow(10.0, l0 + decades * i / (n - 1));
  g.front() = zlo;
  g.back() = zhi;
  return g;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return {};
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  return f;
}

nlohmann::json to_json(const ConditionReport& r, bool with_points) {
  nlohmann::json j;
  j["name"] = r.name;
  j["verdict"] = verdict_name(r.verdict);
  j["points"] = r.grid.size();
  j["summary"] = {{"min", r.summary.min}, {"max", r.summary.max}, {"argmin", r.summary.argmin}};
  j["notes"] = r.notes;
  if (with_points) {
    j["grid"] = r.grid;
    j["margins"] = r.margins;
    j["errors"] = r.errors;
    j["values"] = r.values;
  }
  return j;
}

}  // namespace huntlab
