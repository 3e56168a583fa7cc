#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "huntlab/config.hpp"

namespace huntlab {

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides [output] directory
  int grid_scale = 1;                  // multiplies points per decade
  std::optional<long long> seed;       // recorded only; all grids are deterministic
};

struct RunOutput {
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
};

// Everything except touching the disk.
RunOutput execute(const RunConfig& c, const RunOptions& o = {});

// Writes the files; 3 on any input or I/O error (reported on diag).
int run(const RunConfig& c, const RunOptions& o, std::ostream& diag);
int run_file(const std::string& path, const RunOptions& o, std::ostream& diag);

std::string csv_header();

}  // namespace huntlab
