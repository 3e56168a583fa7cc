#include "huntlab/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "huntlab/errors.hpp"
#include "huntlab/parallel.hpp"

namespace huntlab {

TruncationResult truncate(const LevyTriplet& t, double delta) {
  if (!(delta > 0.0)) throw DomainError("truncation level must be positive");
  validate(t);
  TruncationResult out;
  out.delta = delta;
  out.truncated = t;
  out.truncated.measure.clear();
  double shift = 0.0;
  for (const auto& c : t.measure) {
    out.removed_mass += abs_moment(c, 0, delta, kInf);
    if (t.form == Form::general && delta < 1.0) shift += signed_first_moment(c, delta, 1.0);
    if (auto r = restrict_below(c, delta)) out.truncated.measure.push_back(*r);
  }
  out.truncated.linear = t.linear + shift;
  return out;
}

double resolvent_real(const ExponentValue& v, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double a = lambda + v.re;
  return a / (a * a + v.im_signed * v.im_signed);
}

double resolvent_real(const LevyTriplet& t, double lambda, double z) {
  return resolvent_real(eval_psi(t, z), lambda);
}

namespace {

struct Pair {
  ExponentValue full, cut;
};

std::vector<Pair> evaluate_pairs(const LevyTriplet& t, const LevyTriplet& cut, const std::vector<double>& zgrid) {
  return parallel_map<Pair>(zgrid.size(), [&](std::size_t i) {
    return Pair{eval_psi(t, zgrid[i]), eval_psi(cut, zgrid[i])};
  });
}

}  // namespace

ConditionReport comparison_margin(const LevyTriplet& t, double delta, double lambda,
                                  const std::vector<double>& zgrid) {
  const auto tr = truncate(t, delta);
  ConditionReport r;
  r.name = "comparison";
  const auto pairs = evaluate_pairs(t, tr.truncated, zgrid);
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    const auto& [full, cut] = pairs[i];
    const double g = resolvent_real(full, lambda);
    const double h = resolvent_real(cut, lambda);
    const double ratio = g / h;
    const double rel = 3.0 * (full.abs_err / (lambda + full.re) + cut.abs_err / (lambda + cut.re));
    r.add(zgrid[i], std::min(ratio - 0.25, 4.0 - ratio), ratio * rel, ratio);
    r.psi.push_back(full);
  }
  r.finalize();
  r.notes.push_back("removed mass C = " + std::to_string(tr.removed_mass));
  if (lambda < 2.0 * tr.removed_mass) {
    r.force(Verdict::inconclusive, "lambda < 2C: the comparison bound makes no claim");
  }
  return r;
}

ConditionReport truncation_bounds(const LevyTriplet& t, double delta, const std::vector<double>& zgrid) {
  const auto tr = truncate(t, delta);
  const double C = tr.removed_mass;
  ConditionReport r;
  r.name = "truncation-bounds";
  const auto pairs = evaluate_pairs(t, tr.truncated, zgrid);
  for (std::size_t i = 0; i < zgrid.size(); ++i) {
    const auto& [full, cut] = pairs[i];
    const double dre = full.re - cut.re;
    const double dim = std::abs(full.im_signed - cut.im_signed);
    // Re psi' <= Re psi <= Re psi' + C and |Im psi - Im psi'| <= C.
    const double margin = std::min({dre, C - dre, C - dim});
    r.add(zgrid[i], margin, full.abs_err + cut.abs_err + 1e-12 * (C + std::abs(full.re)), std::max(dre, dim));
  }
  r.finalize();
  r.notes.push_back("removed mass C = " + std::to_string(C));
  if (r.verdict == Verdict::violated) {
    r.notes.push_back("1 - cos reaches 2, so Re psi - Re psi' can exceed C (the sharp bound is 2C)");
  }
  return r;
}

ExponentFn exponent_fn(const LevyTriplet& t) {
  return [t](double z) { return as_complex(eval_psi(t, z)); };
}

ExponentFn subordinate(ExponentFn outer, const LevyTriplet& sub) {
  if (sub.form != Form::drift) throw DomainError("subordinator must be in drift form");
  if (sub.linear != 0.0) throw DomainError("subordination formula needs zero drift");
  validate(sub);
  return [outer = std::move(outer), sub](double z) {
    std::complex<double> phi = outer(z);
    if (phi.real() < 0.0) {
      if (phi.real() < -1e-9 * std::abs(phi)) throw DomainError("outer exponent has negative real part");
      phi.real(0.0);
    }
    return measure_transform(sub, phi);
  };
}

}  // namespace huntlab
