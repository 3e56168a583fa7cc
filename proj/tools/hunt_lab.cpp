#include <iostream>

#include "CLI11.hpp"
#include "huntlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hunt-lab: Levy exponent condition checker"};
  std::string config;
  huntlab::RunOptions opt;
  std::string out;
  long long seed = 0;
  app.add_option("config", config, "config file")->required();
  auto* o = app.add_option("--out", out, "output directory (overrides [output] directory)");
  app.add_option("--grid-scale", opt.grid_scale, "multiply grid points per decade")->check(CLI::PositiveNumber);
  auto* s = app.add_option("--seed", seed, "reserved for sampled grids; recorded in the report");
  app.set_version_flag("--version", HUNTLAB_VERSION);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  if (o->count()) opt.out_dir = out;
  if (s->count()) opt.seed = seed;
  return huntlab::run_file(config, opt, std::cerr);
}
