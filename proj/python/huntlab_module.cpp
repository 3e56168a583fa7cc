#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "huntlab/conditions.hpp"
#include "huntlab/config.hpp"
#include "huntlab/counterexample.hpp"
#include "huntlab/energy.hpp"
#include "huntlab/errors.hpp"
#include "huntlab/exponent.hpp"
#include "huntlab/runner.hpp"

namespace py = pybind11;
using namespace huntlab;

namespace {

py::dict report_dict(const ConditionReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["verdict"] = verdict_name(r.verdict);
  d["grid"] = r.grid;
  d["margins"] = r.margins;
  d["errors"] = r.errors;
  d["values"] = r.values;
  d["min"] = r.summary.min;
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Levy-Khintchine exponents and the analytic conditions for Hunt's hypothesis";
  m.attr("__version__") = HUNTLAB_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RepresentationError>(m, "RepresentationError", PyExc_OverflowError);

  py::enum_<Side>(m, "Side")
      .value("positive", Side::positive)
      .value("negative", Side::negative)
      .value("symmetric", Side::symmetric);
  py::enum_<Form>(m, "Form").value("general", Form::general).value("drift", Form::drift);
  py::enum_<CxMode>(m, "CxMode").value("paper_log", CxMode::paper_log).value("toy", CxMode::toy);

  py::class_<PowerBand>(m, "PowerBand")
      .def(py::init([](double coeff, double alpha, double lower, double upper) {
             return PowerBand{coeff, alpha, lower, upper};
           }),
           py::arg("coeff") = 1.0, py::arg("alpha") = 0.5, py::arg("lower") = 0.0, py::arg("upper") = 1.0)
      .def_readwrite("coeff", &PowerBand::coeff)
      .def_readwrite("alpha", &PowerBand::alpha)
      .def_readwrite("lower", &PowerBand::lower)
      .def_readwrite("upper", &PowerBand::upper);

  py::class_<StableTail>(m, "StableTail")
      .def(py::init([](double coeff, double alpha) { return StableTail{coeff, alpha}; }),
           py::arg("coeff") = 1.0, py::arg("alpha") = 0.5)
      .def_readwrite("coeff", &StableTail::coeff)
      .def_readwrite("alpha", &StableTail::alpha);

  py::class_<MeasureComponent>(m, "MeasureComponent")
      .def(py::init([](const PowerBand& b, Side s) { return MeasureComponent{b, s}; }), py::arg("shape"),
           py::arg("side") = Side::positive)
      .def(py::init([](const StableTail& b, Side s) { return MeasureComponent{b, s}; }), py::arg("shape"),
           py::arg("side") = Side::positive)
      .def_property_readonly("family", [](const MeasureComponent& c) { return family_name(c); })
      .def_readwrite("side", &MeasureComponent::side);

  py::class_<LevyTriplet>(m, "LevyTriplet")
      .def(py::init([](std::vector<MeasureComponent> measure, double linear, double gaussian, Form form) {
             LevyTriplet t{linear, gaussian, std::move(measure), form, 1};
             validate(t);
             return t;
           }),
           py::arg("measure"), py::arg("linear") = 0.0, py::arg("gaussian") = 0.0, py::arg("form") = Form::drift)
      .def_readonly("linear", &LevyTriplet::linear)
      .def_readonly("gaussian", &LevyTriplet::gaussian)
      .def_readonly("measure", &LevyTriplet::measure)
      .def_readonly("form", &LevyTriplet::form);

  py::class_<ExponentValue>(m, "ExponentValue")
      .def_readonly("re", &ExponentValue::re)
      .def_readonly("im_signed", &ExponentValue::im_signed)
      .def_readonly("abs_err", &ExponentValue::abs_err)
      .def("__repr__", [](const ExponentValue& v) {
        return "ExponentValue(re=" + std::to_string(v.re) + ", im_signed=" + std::to_string(v.im_signed) + ")";
      });
  py::class_<AB>(m, "AB").def_readonly("A", &AB::A).def_readonly("B", &AB::B);

  m.def("eval_psi", &eval_psi, py::arg("triplet"), py::arg("z"));
  m.def("ab", py::overload_cast<const LevyTriplet&, double>(&ab), py::arg("triplet"), py::arg("z"));
  m.def("log_grid", &log_grid, py::arg("zlo"), py::arg("zhi"), py::arg("points_per_decade"));
  m.def("exit_code", [](const std::vector<std::string>& names) {
    std::vector<Verdict> v;
    for (const auto& n : names) {
      if (n == "satisfied-on-grid" || n == "satisfied") v.push_back(Verdict::satisfied);
      else if (n == "violated") v.push_back(Verdict::violated);
      else if (n == "inconclusive") v.push_back(Verdict::inconclusive);
      else throw DomainError("unknown verdict '" + n + "'");
    }
    return exit_code(v);
  });

  py::class_<GaugeFunction>(m, "GaugeFunction")
      .def_static("constant", &GaugeFunction::constant)
      .def_static("log", &GaugeFunction::log)
      .def_static("log_power", &GaugeFunction::log_power)
      .def_static("power", &GaugeFunction::power)
      .def("__call__", &GaugeFunction::operator())
      .def_property_readonly("name", &GaugeFunction::name)
      .def_property_readonly("divergent", [](const GaugeFunction& g) { return gauge_divergence(g); });

  m.def("kf_ratio_profile", [](const LevyTriplet& t, const std::vector<double>& z) {
    return report_dict(kf_ratio_profile(t, z));
  });
  m.def("rao_check", [](const LevyTriplet& t, const GaugeFunction& g, const std::vector<double>& z) {
    return report_dict(rao_check(t, g, z));
  });

  m.def("theta", &theta, py::arg("alpha"));
  m.def("minimal_n1", &minimal_n1, py::arg("alpha"));
  py::class_<CounterexampleSpec>(m, "CounterexampleSpec")
      .def_readonly("alpha", &CounterexampleSpec::alpha)
      .def_readonly("mode", &CounterexampleSpec::mode)
      .def_readonly("K", &CounterexampleSpec::K)
      .def_readonly("log10_n", &CounterexampleSpec::log10_n)
      .def_readonly("n", &CounterexampleSpec::n)
      .def_readonly("theta", &CounterexampleSpec::theta)
      .def_readonly("c", &CounterexampleSpec::c);
  m.def(
      "build_spec",
      [](double alpha, int K, CxMode mode, double n1, double theta_toy) {
        return build_spec(alpha, K, mode, ToyOverrides{n1, theta_toy});
      },
      py::arg("alpha"), py::arg("K"), py::arg("mode") = CxMode::toy, py::arg("n1") = 64.0,
      py::arg("theta_toy") = 2.0);
  m.def("recursion_residual", &recursion_residual);
  m.def(
      "verify_window",
      [](const CounterexampleSpec& s, int k, int samples) {
        const auto w = verify_window(s, k, samples);
        py::dict d;
        d["k"] = w.k;
        d["z"] = w.z;
        d["all_hold"] = w.all_hold();
        py::list b;
        for (const auto& r : w.bounds) b.append(report_dict(r));
        d["bounds"] = b;
        return d;
      },
      py::arg("spec"), py::arg("k"), py::arg("samples") = 33);

  m.def(
      "polya_eval",
      [](double omega, const std::string& kind, double x) {
        PolyaKind k;
        if (kind == "zeta") k = PolyaKind::zeta;
        else if (kind == "eta") k = PolyaKind::eta;
        else if (kind == "varsigma") k = PolyaKind::varsigma;
        else throw DomainError("unknown Polya kind '" + kind + "'");
        return polya_eval(omega, k, x);
      },
      py::arg("omega"), py::arg("kind"), py::arg("x"));
  py::class_<SignedCF>(m, "SignedCF")
      .def_readonly("K", &SignedCF::K)
      .def_readonly("disjoint", &SignedCF::disjoint);
  m.def("make_signed", &make_signed, py::arg("spec"), py::arg("K"));
  m.def("one_energy", [](const SignedCF& s) {
    const auto e = one_energy(s);
    py::dict d;
    d["contributions"] = e.contributions;
    d["partial_sums"] = e.partial_sums;
    d["envelope"] = e.envelope;
    d["exponent"] = e.exponent;
    d["bound_check"] = report_dict(e.bound_check);
    return d;
  });
  m.def("divergence_witness", &divergence_witness, py::arg("signed"), py::arg("k"));

  // Runs a config text and returns (exit code, {file name: content}) without touching the disk.
  m.def(
      "run_config",
      [](const std::string& text, int grid_scale) {
        RunOptions o;
        o.grid_scale = grid_scale;
        const auto out = execute(parse_config(text), o);
        py::dict files;
        for (const auto& [name, content] : out.files) files[py::str(name)] = content;
        return py::make_tuple(out.exit_code, files);
      },
      py::arg("text"), py::arg("grid_scale") = 1);
}
