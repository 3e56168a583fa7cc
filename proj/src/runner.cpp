#include "huntlab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "huntlab/energy.hpp"
#include "huntlab/errors.hpp"
#include "huntlab/indices.hpp"
#include "huntlab/transforms.hpp"

#ifndef HUNTLAB_VERSION
#define HUNTLAB_VERSION "0.0.0"
#endif

namespace huntlab {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_of(const std::vector<double>& z, const std::vector<ExponentValue>& psi,
                   const std::vector<double>& margins) {
  std::string s = csv_header();
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto [A, B] = ab_from(psi[i]);
    s += num(z[i]) + "," + num(psi[i].re) + "," + num(psi[i].im_signed) + "," + num(A) + "," + num(B) + "," +
         (i < margins.size() ? num(margins[i]) : "nan") + "\n";
  }
  return s;
}

class Job {
 public:
  Job(const RunConfig& c, const RunOptions& o) : c_(c), o_(o) {}

  RunOutput go() {
    const auto& n = c_.task.name;
    if (n == "eval") {
      eval();
    } else if (n == "check-kf" || n == "check-rao") {
      kf_or_rao(n == "check-rao");
    } else if (n == "check-ekfr") {
      const auto g = grid_cfg();
      add(ekfr_check(triplet(), c_.task.gauge, g.zlo, g.zhi), false);
    } else if (n == "check-growth") {
      add(growth_check(triplet(), c_.task.gamma, c_.task.kind, zgrid(), c_.task.eps_rel), true);
    } else if (n == "indices") {
      indices();
    } else if (n == "compare") {
      compare();
    } else if (n == "construct") {
      construct();
    } else if (n == "verify-cx") {
      verify();
    } else if (n == "energy") {
      energy();
    } else if (n == "kesten") {
      kesten();
    }
    RunOutput out;
    out.exit_code = exit_code(verdicts_);
    nlohmann::json j;
    j["tool"] = "hunt-lab";
    j["version"] = HUNTLAB_VERSION;
    j["task"] = n;
    j["grid_scale"] = o_.grid_scale;
    j["seed"] = o_.seed ? nlohmann::json(*o_.seed) : nlohmann::json(nullptr);
    j["config"] = serialize(c_);
    j["reports"] = reports_;
    j["results"] = results_;
    j["exit_code"] = out.exit_code;
    if (c_.output.json) out.files.emplace_back("report.json", j.dump(2) + "\n");
    if (c_.output.csv) {
      for (auto& f : csv_) out.files.push_back(std::move(f));
    }
    return out;
  }

 private:
  const RunConfig& c_;
  const RunOptions& o_;
  std::vector<Verdict> verdicts_;
  nlohmann::json reports_ = nlohmann::json::array();
  nlohmann::json results_ = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> csv_;

  GridConfig grid_cfg() const { return c_.grid.value_or(GridConfig{}); }

  std::vector<double> zgrid() const {
    const auto g = grid_cfg();
    return log_grid(g.zlo, g.zhi, g.points_per_decade * std::max(1, o_.grid_scale));
  }

  bool from_cx() const { return c_.measure.empty() && c_.counterexample.has_value(); }

  CounterexampleSpec spec() const {
    const auto& x = *c_.counterexample;
    return build_spec(x.alpha, x.K, x.mode, ToyOverrides{x.n1, x.theta_toy});
  }

  LevyTriplet triplet() const {
    if (from_cx()) return counterexample_triplet(spec(), c_.counterexample->K);
    return LevyTriplet{c_.linear, c_.gaussian, c_.measure, c_.form, 1};
  }

  void add(const ConditionReport& r, bool csv, const std::string& file = "") {
    verdicts_.push_back(r.verdict);
    reports_.push_back(to_json(r, r.psi.size() != r.grid.size()));
    if (csv && r.psi.size() == r.grid.size()) {
      csv_.emplace_back((file.empty() ? r.name : file) + ".csv", csv_of(r.grid, r.psi, r.margins));
    }
  }

  void eval() {
    const auto t = triplet();
    const auto z = zgrid();
    ConditionReport r;
    r.name = "eval";
    for (double v : z) {
      const auto p = eval_psi(t, v);
      r.add(v, p.re, p.abs_err, std::hypot(p.re, p.im_signed));
      r.psi.push_back(p);
    }
    r.finalize();
    r.notes.push_back("margin is Re psi");
    add(r, true);
  }

  void kf_or_rao(bool rao) {
    const auto t = triplet();
    const auto run = [&](const std::vector<double>& z) {
      return rao ? rao_check(t, c_.task.gauge, z) : kf_ratio_profile(t, z);
    };
    if (from_cx() && !c_.grid) {
      // One report per window of the construction.
      const auto s = spec();
      if (s.mode != CxMode::toy) throw ConfigError("window checks on the construction need toy mode");
      for (int k = 1; k <= s.K; ++k) {
        auto r = run(window_samples(s, k, c_.task.samples));
        r.name += "-window" + std::to_string(k);
        add(r, true);
      }
      return;
    }
    add(run(zgrid()), true);
  }

  void indices() {
    const auto b = from_cx() ? bg_indices(spec()) : bg_indices(triplet());
    results_["beta"] = b.beta;
    results_["beta_pp_estimate"] = b.beta_pp_estimate;
    results_["sigma_estimate"] = std::isnan(b.sigma_estimate) ? nlohmann::json(nullptr) : nlohmann::json(b.sigma_estimate);
    if (from_cx()) {
      const auto s = spec();
      results_["beta_pp_bound"] = s.alpha - 4.0 / s.theta;
    }
  }

  void compare() {
    const auto t = triplet();
    const auto tr = truncate(t, c_.task.delta);
    double lam = c_.task.lambda;
    if (!(lam > 0.0)) lam = tr.removed_mass > 0.0 ? 4.0 * tr.removed_mass : 1.0;
    results_["removed_mass"] = tr.removed_mass;
    results_["lambda"] = lam;
    const auto z = zgrid();
    auto cmp = comparison_margin(t, c_.task.delta, lam, z);
    add(cmp, true);
    // reported only: the real-part bound with C alone is not sharp (2C is)
    auto tb = truncation_bounds(t, c_.task.delta, z);
    tb.notes.push_back("reported only; not part of the exit code");
    reports_.push_back(to_json(tb, false));
  }

  void construct() {
    const auto s = spec();
    results_["alpha"] = s.alpha;
    results_["mode"] = mode_name(s.mode);
    results_["theta"] = s.theta;
    results_["c"] = s.c;
    results_["log10_n"] = s.log10_n;
    std::vector<std::string> ns;
    for (double L : s.log10_n) ns.push_back(LogReal::from_log10(L).to_string());
    results_["n"] = ns;
    results_["recursion_residual"] = recursion_residual(s);
    results_["double_log_affinity"] = double_log_affinity(s);
  }

  void verify() {
    const auto s = spec();
    const bool toy = s.mode == CxMode::toy;
    for (int k = 1; k <= s.K; ++k) {
      const auto w = verify_window(s, k, c_.task.samples);
      for (auto r : w.bounds) {
        r.name += "-k" + std::to_string(k);
        add(r, false);
      }
      for (auto r : w.aggregates) {
        r.name += "-k" + std::to_string(k);
        reports_.push_back(to_json(r, true));
      }
      // Window rows: the margin column is the own-level Im lower-bound margin.
      std::string csv = csv_header();
      const auto& h = w.bounds.front();
      for (std::size_t i = 0; i < w.z.size(); ++i) {
        const LogReal A = LogReal::from_double(1.0) + w.re[i];
        const LogReal B = pow(A * A + w.im[i] * w.im[i], 0.5);
        const auto cell = [&](const LogReal& v) { return toy ? num(v.to_double()) : v.to_string(); };
        csv += num(w.z[i]) + "," + cell(w.re[i]) + "," + cell(w.im[i]) + "," + cell(A) + "," + cell(B) + "," +
               num(h.margins[i]) + "\n";
      }
      csv_.emplace_back("window_" + std::to_string(k) + ".csv", csv);
    }
    std::vector<int> ks;
    for (int k = 1; k <= s.K; ++k) ks.push_back(k);
    add(ratio_growth(s, ks, c_.task.samples), false);
    if (!toy) results_["z_column"] = "log10 z";
  }

  void energy() {
    const auto s = spec();
    const auto sc = make_signed(s, s.K);
    const auto e = one_energy(sc);
    add(e.bound_check, false);
    ConditionReport w;
    w.name = "witness-growth";
    std::vector<double> wit;
    for (int k = 1; k <= s.K; ++k) wit.push_back(divergence_witness(sc, k));
    for (int k = 2; k <= s.K; ++k) w.add(k, wit[k - 1] / wit[k - 2] - 1.0, 1e-6, wit[k - 1]);
    w.finalize();
    w.notes.push_back("trend only; the limit is not asserted");
    add(w, false);
    ConditionReport p;
    p.name = "partial-sums";
    for (int k = 2; k <= s.K; ++k) {
      // The increment is the level contribution itself.
      p.add(k, e.contributions[k - 1], 1e-8 * e.contributions[k - 1], e.partial_sums[k - 1]);
    }
    p.finalize();
    add(p, false);
    results_["contributions"] = e.contributions;
    results_["partial_sums"] = e.partial_sums;
    results_["envelope"] = e.envelope;
    results_["envelope_exponent"] = e.exponent;
    results_["nominal_exponent"] = e.nominal_exponent;
    results_["witness"] = wit;
    std::vector<double> env;
    for (int k = 1; k <= s.K; ++k) env.push_back(witness_envelope(sc, k));
    results_["witness_envelope"] = env;
    results_["supports_disjoint"] = sc.disjoint;
  }

  void kesten() {
    const auto k = kesten_integral(triplet(), c_.task.zmax);
    ConditionReport r;
    r.name = "kesten";
    r.add(c_.task.zmax, k.tail_exponent - 1.0, 0.05, k.partial);
    r.finalize();
    const Verdict v = k.diagnosis == Diagnosis::converges  ? Verdict::satisfied
                      : k.diagnosis == Diagnosis::diverges ? Verdict::violated
                                                           : Verdict::inconclusive;
    r.force(v, "integral " + diagnosis_name(k.diagnosis) + " (tail exponent fit on the last decade)");
    add(r, false);
    results_["partial"] = k.partial;
    results_["abs_err"] = k.abs_err;
    results_["tail_exponent"] = k.tail_exponent;
    results_["diagnosis"] = diagnosis_name(k.diagnosis);
  }
};

}  // namespace

std::string csv_header() { return "z,re_psi,im_psi,A,B,margin\n"; }

RunOutput execute(const RunConfig& c, const RunOptions& o) { return Job(c, o).go(); }

int run(const RunConfig& c, const RunOptions& o, std::ostream& diag) {
  RunOutput out;
  try {
    out = execute(c, o);
  } catch (const std::exception& e) {
    diag << "hunt-lab: " << e.what() << "\n";
    return 3;
  }
  namespace fs = std::filesystem;
  const fs::path dir = o.out_dir.value_or(c.output.directory);
  std::vector<fs::path> written;
  try {
    fs::create_directories(dir);
    for (const auto& [name, content] : out.files) {
      const fs::path p = dir / name;
      std::ofstream f(p, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + p.string());
      written.push_back(p);
      f << content;
      f.close();
      if (!f) throw std::runtime_error("cannot write " + p.string());
    }
  } catch (const std::exception& e) {
    diag << "hunt-lab: " << e.what() << "\n";
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    return 3;
  }
  return out.exit_code;
}

int run_file(const std::string& path, const RunOptions& o, std::ostream& diag) {
  std::ifstream f(path);
  if (!f) {
    diag << "hunt-lab: cannot read " << path << "\n";
    return 3;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  RunConfig c;
  try {
    c = parse_config(ss.str());
  } catch (const std::exception& e) {
    diag << "hunt-lab: " << path << ": " << e.what() << "\n";
    return 3;
  }
  return run(c, o, diag);
}

}  // namespace huntlab
