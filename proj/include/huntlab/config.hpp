#pragma once

#include <optional>
#include <string>
#include <vector>

#include "huntlab/conditions.hpp"
#include "huntlab/counterexample.hpp"
#include "huntlab/measure.hpp"

namespace huntlab {

struct TaskConfig {
  std::string name;
  GaugeFunction gauge = GaugeFunction::log();
  double gamma = 0.5;
  GrowthKind kind = GrowthKind::re;
  double eps_rel = 1e-3;
  double delta = 0.5;
  double lambda = 0.0;  // 0: use 4C
  double zmax = 1e4;
  int samples = 33;
  bool operator==(const TaskConfig&) const = default;
};

struct CxConfig {
  double alpha = 0.75;
  CxMode mode = CxMode::toy;
  int K = 3;
  double n1 = 64.0;
  double theta_toy = 2.0;
  bool operator==(const CxConfig&) const = default;
};

struct GridConfig {
  double zlo = 1e-2;
  double zhi = 1e4;
  int points_per_decade = 10;
  bool operator==(const GridConfig&) const = default;
};

struct OutputConfig {
  std::string directory = ".";
  bool csv = true;
  bool json = true;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  Form form = Form::drift;
  double linear = 0.0;
  double gaussian = 0.0;
  LevyMeasure measure;
  TaskConfig task;
  std::optional<CxConfig> counterexample;
  std::optional<GridConfig> grid;
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError carrying the offending line.
RunConfig parse_config(const std::string& text);
std::string serialize(const RunConfig& c);

GaugeFunction parse_gauge(const std::string& text);
std::string gauge_text(const GaugeFunction& g);

const std::vector<std::string>& task_names();

}  // namespace huntlab
