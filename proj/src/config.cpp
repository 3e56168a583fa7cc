#include "huntlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "huntlab/errors.hpp"

namespace huntlab {

namespace {

struct Entry {
  std::string key, value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_num(const std::string& v, const Entry& e) {
  const char* s = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0') throw ConfigError("'" + e.key + "' expects a number, got '" + v + "'", e.line);
  return x;
}

int to_int(const Entry& e) {
  const double x = to_num(e.value, e);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError("'" + e.key + "' expects an integer", e.line);
  return static_cast<int>(x);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Keyed view of a section that tracks which keys were consumed.
class Keys {
 public:
  explicit Keys(const Section& s) : sec_(s) {
    for (const auto& e : s.entries) {
      if (map_.count(e.key)) throw ConfigError("duplicate key '" + e.key + "'", e.line);
      map_[e.key] = &e;
    }
  }
  const Entry* get(const std::string& k) {
    used_.insert(k);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : it->second;
  }
  const Entry& need(const std::string& k, const std::string& what) {
    const Entry* e = get(k);
    if (!e) throw ConfigError("missing key '" + k + "' in [" + sec_.name + "]" + what, sec_.line);
    return *e;
  }
  double number(const std::string& k, double def) {
    const Entry* e = get(k);
    return e ? to_num(e->value, *e) : def;
  }
  void finish() const {
    for (const auto& e : sec_.entries) {
      if (!used_.count(e.key)) throw ConfigError("unknown key '" + e.key + "' in [" + sec_.name + "]", e.line);
    }
  }

 private:
  const Section& sec_;
  std::map<std::string, const Entry*> map_;
  std::set<std::string> used_;
};

Side parse_side(const Entry* e) {
  if (!e) return Side::positive;
  if (e->value == "positive") return Side::positive;
  if (e->value == "negative") return Side::negative;
  if (e->value == "symmetric") return Side::symmetric;
  throw ConfigError("unknown side '" + e->value + "'", e->line);
}

MeasureComponent parse_measure(const Section& s) {
  Keys k(s);
  const Entry& fam = k.need("family", "");
  const std::string what = " (" + fam.value + ")";
  MeasureComponent c;
  c.side = parse_side(k.get("side"));
  const double coeff = k.number("coeff", 1.0);
  const auto need_num = [&](const std::string& key) {
    const Entry& e = k.need(key, what);
    return to_num(e.value, e);
  };
  if (fam.value == "power_band") {
    c.shape = PowerBand{coeff, need_num("alpha"), need_num("lower"), need_num("upper")};
  } else if (fam.value == "stable_tail") {
    c.shape = StableTail{coeff, need_num("alpha")};
  } else if (fam.value == "log_power_band") {
    LogPowerBand b{coeff, need_num("alpha"), need_num("lower"), need_num("upper"), -1.0};
    const Entry* lp = k.get("log_power");
    const Entry* lm = k.get("logmode");
    if (lp && lm) throw ConfigError("give either log_power or logmode", lm->line);
    if (lp) b.log_power = to_num(lp->value, *lp);
    if (lm) {
      if (lm->value == "reciprocal") {
        b.log_power = -1.0;
      } else if (lm->value == "direct") {
        b.log_power = 1.0;
      } else {
        throw ConfigError("unknown logmode '" + lm->value + "'", lm->line);
      }
    }
    c.shape = b;
  } else if (fam.value == "atoms") {
    const Entry& e = k.need("points", what);
    Atoms a;
    for (const auto& item : split(e.value, ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw ConfigError("atoms expect 'location:mass' pairs", e.line);
      a.points.emplace_back(to_num(parts[0], e), to_num(parts[1], e));
    }
    c.shape = a;
  } else if (fam.value == "tabulated") {
    const Entry& kn = k.need("knots", what);
    const Entry& de = k.need("density", what);
    Tabulated t;
    for (const auto& v : split(kn.value, ',')) t.knots.push_back(to_num(v, kn));
    for (const auto& v : split(de.value, ',')) t.density.push_back(to_num(v, de));
    c.shape = t;
  } else {
    throw ConfigError("unknown measure family '" + fam.value + "'", fam.line);
  }
  k.finish();
  try {
    validate(c);
  } catch (const DomainError& err) {
    throw ConfigError(std::string(err.what()) + what, s.line);
  }
  return c;
}

std::string measure_text(const MeasureComponent& c) {
  std::ostringstream o;
  o << "[measure]\nfamily = " << family_name(c) << "\nside = " << side_name(c.side) << "\n";
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PowerBand>) {
          o << "coeff = " << num(s.coeff) << "\nalpha = " << num(s.alpha) << "\nlower = " << num(s.lower)
            << "\nupper = " << num(s.upper) << "\n";
        } else if constexpr (std::is_same_v<T, StableTail>) {
          o << "coeff = " << num(s.coeff) << "\nalpha = " << num(s.alpha) << "\n";
        } else if constexpr (std::is_same_v<T, LogPowerBand>) {
          o << "coeff = " << num(s.coeff) << "\nalpha = " << num(s.alpha) << "\nlower = " << num(s.lower)
            << "\nupper = " << num(s.upper) << "\nlog_power = " << num(s.log_power) << "\n";
        } else if constexpr (std::is_same_v<T, Atoms>) {
          o << "points = ";
          for (std::size_t i = 0; i < s.points.size(); ++i) {
            o << (i ? ", " : "") << num(s.points[i].first) << ":" << num(s.points[i].second);
          }
          o << "\n";
        } else {
          o << "knots = ";
          for (std::size_t i = 0; i < s.knots.size(); ++i) o << (i ? ", " : "") << num(s.knots[i]);
          o << "\ndensity = ";
          for (std::size_t i = 0; i < s.density.size(); ++i) o << (i ? ", " : "") << num(s.density[i]);
          o << "\n";
        }
      },
      c.shape);
  return o.str();
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {"eval",  "check-kf", "check-rao",  "check-ekfr", "check-growth", "indices",
                                                 "compare", "construct", "verify-cx", "energy",     "kesten"};
  return names;
}

GaugeFunction parse_gauge(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = trim(text.substr(0, colon));
  const bool has = colon != std::string::npos;
  double p = 0.0;
  if (has) {
    const std::string tail = trim(text.substr(colon + 1));
    char* end = nullptr;
    p = std::strtod(tail.c_str(), &end);
    if (tail.empty() || *end != '\0') throw ConfigError("bad gauge parameter in '" + text + "'");
  }
  if (head == "log" && !has) return GaugeFunction::log();
  if (!has) throw ConfigError("gauge '" + text + "' needs a parameter, e.g. " + head + ":1");
  if (!(p > 0.0)) throw ConfigError("gauge parameter must be positive");
  if (head == "constant") return GaugeFunction::constant(p);
  if (head == "logpower") return GaugeFunction::log_power(p);
  if (head == "power") return GaugeFunction::power(p);
  throw ConfigError("unknown gauge '" + text + "'");
}

std::string gauge_text(const GaugeFunction& g) {
  switch (g.kind) {
    case GaugeFunction::Kind::constant:
      return "constant:" + num(g.param);
    case GaugeFunction::Kind::log:
      return "log";
    case GaugeFunction::Kind::log_power:
      return "logpower:" + num(g.param);
    case GaugeFunction::Kind::power:
      return "power:" + num(g.param);
  }
  return "log";
}

RunConfig parse_config(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      sections.push_back({trim(line.substr(1, line.size() - 2)), lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    if (sections.empty()) throw ConfigError("entry outside of any section", lineno);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key", lineno);
    sections.back().entries.push_back({key, trim(line.substr(eq + 1)), lineno});
  }

  RunConfig c;
  int tasks = 0, tline = 0;
  std::set<std::string> seen;
  for (const auto& s : sections) {
    if (s.name != "measure" && s.name != "task" && seen.count(s.name)) {
      throw ConfigError("section [" + s.name + "] given twice", s.line);
    }
    seen.insert(s.name);
    if (s.name == "process") {
      Keys k(s);
      if (const Entry* f = k.get("form")) {
        if (f->value == "drift") {
          c.form = Form::drift;
        } else if (f->value == "general") {
          c.form = Form::general;
        } else {
          throw ConfigError("form must be drift or general", f->line);
        }
      }
      c.linear = k.number("linear", 0.0);
      c.gaussian = k.number("gaussian", 0.0);
      k.finish();
    } else if (s.name == "measure") {
      c.measure.push_back(parse_measure(s));
    } else if (s.name == "task") {
      ++tasks;
      tline = s.line;
      if (tasks > 1) throw ConfigError("exactly one task per config", s.line);
      Keys k(s);
      const Entry& n = k.need("name", "");
      const auto& names = task_names();
      if (std::find(names.begin(), names.end(), n.value) == names.end()) {
        throw ConfigError("unknown task '" + n.value + "'", n.line);
      }
      c.task.name = n.value;
      if (const Entry* g = k.get("gauge")) {
        try {
          c.task.gauge = parse_gauge(g->value);
        } catch (const ConfigError& e) {
          throw ConfigError(e.what(), g->line);
        }
      }
      c.task.gamma = k.number("gamma", c.task.gamma);
      if (const Entry* kd = k.get("kind")) {
        if (kd->value == "re") {
          c.task.kind = GrowthKind::re;
        } else if (kd->value == "abs") {
          c.task.kind = GrowthKind::abs;
        } else {
          throw ConfigError("kind must be re or abs", kd->line);
        }
      }
      c.task.eps_rel = k.number("eps_rel", c.task.eps_rel);
      c.task.delta = k.number("delta", c.task.delta);
      c.task.lambda = k.number("lambda", c.task.lambda);
      c.task.zmax = k.number("zmax", c.task.zmax);
      if (const Entry* e = k.get("samples")) c.task.samples = to_int(*e);
      k.finish();
    } else if (s.name == "counterexample") {
      Keys k(s);
      CxConfig x;
      x.alpha = k.number("alpha", x.alpha);
      if (const Entry* m = k.get("mode")) {
        if (m->value == "toy") {
          x.mode = CxMode::toy;
        } else if (m->value == "paper-log") {
          x.mode = CxMode::paper_log;
        } else {
          throw ConfigError("mode must be toy or paper-log", m->line);
        }
      }
      if (const Entry* e = k.get("K")) x.K = to_int(*e);
      x.n1 = k.number("n1", x.n1);
      x.theta_toy = k.number("theta_toy", x.theta_toy);
      k.finish();
      if (!(x.alpha > 0.5 && x.alpha < 1.0)) throw ConfigError("alpha must lie in (1/2, 1)", s.line);
      if (x.K < 1) throw ConfigError("K must be at least 1", s.line);
      c.counterexample = x;
    } else if (s.name == "grid") {
      Keys k(s);
      GridConfig g;
      g.zlo = k.number("zlo", g.zlo);
      g.zhi = k.number("zhi", g.zhi);
      if (const Entry* e = k.get("points_per_decade")) g.points_per_decade = to_int(*e);
      k.finish();
      if (!(g.zlo > 0.0 && g.zhi > g.zlo)) throw ConfigError("grid needs 0 < zlo < zhi", s.line);
      if (g.points_per_decade < 1) throw ConfigError("points_per_decade must be positive", s.line);
      c.grid = g;
    } else if (s.name == "output") {
      Keys k(s);
      if (const Entry* d = k.get("directory")) c.output.directory = d->value;
      if (const Entry* f = k.get("formats")) {
        c.output.csv = c.output.json = false;
        for (const auto& v : split(f->value, ',')) {
          if (v == "csv") {
            c.output.csv = true;
          } else if (v == "json") {
            c.output.json = true;
          } else {
            throw ConfigError("unknown format '" + v + "'", f->line);
          }
        }
      }
      k.finish();
    } else {
      throw ConfigError("unknown section [" + s.name + "]", s.line);
    }
  }
  if (tasks != 1) throw ConfigError("exactly one task per config", tline);
  if (c.form == Form::drift && c.gaussian != 0.0) throw ConfigError("drift form has no gaussian part");
  if (c.gaussian < 0.0) throw ConfigError("gaussian must be nonnegative");
  const auto& n = c.task.name;
  const bool needs_cx = n == "construct" || n == "verify-cx" || n == "energy";
  if (needs_cx && !c.counterexample) throw ConfigError("task " + n + " needs a [counterexample] section");
  try {
    LevyTriplet t{c.linear, c.gaussian, c.measure, c.form, 1};
    validate(t);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream o;
  o << "[process]\nform = " << form_name(c.form) << "\nlinear = " << num(c.linear) << "\ngaussian = " << num(c.gaussian)
    << "\n\n";
  for (const auto& m : c.measure) o << measure_text(m) << "\n";
  const auto& t = c.task;
  o << "[task]\nname = " << t.name << "\ngauge = " << gauge_text(t.gauge) << "\ngamma = " << num(t.gamma)
    << "\nkind = " << (t.kind == GrowthKind::re ? "re" : "abs") << "\neps_rel = " << num(t.eps_rel)
    << "\ndelta = " << num(t.delta) << "\nlambda = " << num(t.lambda) << "\nzmax = " << num(t.zmax)
    << "\nsamples = " << t.samples << "\n\n";
  if (c.counterexample) {
    const auto& x = *c.counterexample;
    o << "[counterexample]\nalpha = " << num(x.alpha) << "\nmode = " << mode_name(x.mode) << "\nK = " << x.K
      << "\nn1 = " << num(x.n1) << "\ntheta_toy = " << num(x.theta_toy) << "\n\n";
  }
  if (c.grid) {
    o << "[grid]\nzlo = " << num(c.grid->zlo) << "\nzhi = " << num(c.grid->zhi)
      << "\npoints_per_decade = " << c.grid->points_per_decade << "\n\n";
  }
  std::string formats;
  if (c.output.csv) formats = "csv";
  if (c.output.json) formats += formats.empty() ? "json" : ", json";
  o << "[output]\ndirectory = " << c.output.directory << "\nformats = " << formats << "\n";
  return o.str();
}

}  // namespace huntlab
