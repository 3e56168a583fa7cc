#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "huntlab/osc_kernel.hpp"

namespace huntlab {

enum class Side { positive, negative, symmetric };
enum class Form { general, drift };
enum class LogMode { reciprocal, direct };

// coeff * x^{-1-alpha} dx on (lower, upper); lower may be 0, upper may be inf.
struct PowerBand {
  double coeff = 1.0;
  double alpha = 0.5;
  double lower = 0.0;
  double upper = 1.0;
  bool operator==(const PowerBand&) const = default;
};

// coeff * x^{-1-alpha} dx on (0, inf), alpha in (0,1).
struct StableTail {
  double coeff = 1.0;
  double alpha = 0.5;
  bool operator==(const StableTail&) const = default;
};

// coeff * (-log x)^{log_power} * x^{-1-alpha} dx on (lower, upper), upper < 1.
// log_power = -1 gives the reciprocal-log density, +1 the direct one.
struct LogPowerBand {
  double coeff = 1.0;
  double alpha = 0.5;
  double lower = 0.0;
  double upper = 0.5;
  double log_power = -1.0;
  bool operator==(const LogPowerBand&) const = default;
};

struct Atoms {
  std::vector<std::pair<double, double>> points;  // (location, mass)
  bool operator==(const Atoms&) const = default;
};

// Density given at knots, interpolated linearly in log-log coordinates.
struct Tabulated {
  std::vector<double> knots;
  std::vector<double> density;
  bool operator==(const Tabulated&) const = default;
};

using Shape = std::variant<PowerBand, StableTail, LogPowerBand, Atoms, Tabulated>;

struct MeasureComponent {
  Shape shape;
  Side side = Side::positive;
  bool operator==(const MeasureComponent&) const = default;
};

using LevyMeasure = std::vector<MeasureComponent>;

struct LevyTriplet {
  double linear = 0.0;    // a (general form) or d (drift form)
  double gaussian = 0.0;  // Q
  LevyMeasure measure;
  Form form = Form::drift;
  int dimension = 1;
  bool operator==(const LevyTriplet&) const = default;
};

LogPowerBand log_power_band(double coeff, double alpha, double lower, double upper, LogMode mode);

// Throw DomainError when a component or triplet breaks its invariants.
void validate(const MeasureComponent& c);
void validate(const LevyTriplet& t);

// Integral of |x|^j over {lo <= |x| < hi} against the component (both sides counted).
double abs_moment(const MeasureComponent& c, int j, double lo, double hi);
// Integral of x over {lo <= |x| < hi}: sign-aware first moment.
double signed_first_moment(const MeasureComponent& c, double lo, double hi);

double total_mass(const MeasureComponent& c);
double total_mass(const LevyMeasure& m);

// Restriction to {0 < |x| < delta}; nullopt when nothing remains.
std::optional<MeasureComponent> restrict_below(const MeasureComponent& c, double delta);

// Largest |x| in the support (inf for unbounded components).
double support_sup(const MeasureComponent& c);
// Whether the component has infinite mass near the origin, and its local power index.
bool accumulates_at_zero(const MeasureComponent& c);
double local_index(const MeasureComponent& c);

// Mirror a component onto both half-lines.
MeasureComponent symmetrized(MeasureComponent c);

std::string family_name(const MeasureComponent& c);
std::string side_name(Side s);
std::string form_name(Form f);

}  // namespace huntlab
