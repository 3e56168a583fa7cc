#pragma once

#include <string>
#include <vector>

#include "huntlab/exponent.hpp"
#include "json.hpp"

namespace huntlab {

enum class Verdict { satisfied, violated, inconclusive };

struct Summary {
  double min = 0.0;
  double max = 0.0;
  double argmin = 0.0;
};

// margins[i] > 0 means the condition holds at grid[i]; errors[i] is the
// quadrature uncertainty of that margin. values[i] is the checked quantity.
struct ConditionReport {
  std::string name;
  std::vector<double> grid;
  std::vector<double> margins;
  std::vector<double> errors;
  std::vector<double> values;
  std::vector<ExponentValue> psi;  // per grid point when available
  Summary summary;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;

  void add(double z, double margin, double err, double value);
  // Recompute summary and the three-valued verdict from margins and errors.
  void finalize();
  // Keep the summary but force the verdict (structural reasons).
  void force(Verdict v, const std::string& why);
};

std::string verdict_name(Verdict v);

// 0 all satisfied, 1 any violated, 2 any inconclusive.
int exit_code(const std::vector<Verdict>& verdicts);

// Log-spaced grid with the given points per decade, both ends included.
std::vector<double> log_grid(double zlo, double zhi, int points_per_decade);

// Least-squares slope and intercept of y on x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

nlohmann::json to_json(const ConditionReport& r, bool with_points = false);

}  // namespace huntlab
