#include "huntlab/exponent.hpp"

#include <cmath>

#include "huntlab/errors.hpp"
#include "huntlab/pieces.hpp"

namespace huntlab {

namespace {

using C = std::complex<double>;

ExponentValue power_piece(double z, const Piece& p, bool compensated) {
  const double alpha = -1.0 - p.expo;
  const double scale = p.coef * std::pow(z, alpha);
  if (!std::isfinite(scale)) throw OverflowError("exponent scale overflows");
  OscValue re, im;
  if (p.a == 0.0 && std::isinf(p.b) && !compensated && alpha > 0.0 && alpha < 1.0) {
    re = {osc_master_limit(alpha, OscKind::cos), 0.0};
    im = {osc_master_limit(alpha, OscKind::sin), 0.0};
  } else {
    const double ta = z * p.a, tb = z * p.b;
    re = osc_band(ta, tb, alpha, OscKind::cos);
    im = osc_band(ta, tb, alpha, compensated ? OscKind::sinc : OscKind::sin);
  }
  return {scale * re.value, scale * im.value,
          std::abs(scale) * (re.abs_err + im.abs_err) + 1e-15 * std::abs(scale * re.value)};
}

ExponentValue generic_piece(double z, const Piece& p, bool compensated) {
  const auto v = piece_transform(p, C(0.0, -z), compensated);
  return {v.value.real(), -v.value.imag(), v.abs_err};
}

void accumulate(ExponentValue& acc, const ExponentValue& v) {
  acc.re += v.re;
  acc.im_signed += v.im_signed;
  acc.abs_err += v.abs_err;
}

// Contribution of the positive-axis copy of the component at z > 0.
ExponentValue positive_side(double z, const MeasureComponent& c, Form form) {
  ExponentValue out;
  const bool general = form == Form::general;
  if (const auto* a = std::get_if<Atoms>(&c.shape)) {
    for (const auto& [x, m] : a->points) {
      const double h = std::sin(0.5 * z * x);
      out.re += m * 2.0 * h * h;
      double s = std::sin(z * x);
      if (general && x < 1.0) s -= z * x;
      out.im_signed += m * s;
    }
    out.abs_err = 1e-15 * (std::abs(out.re) + std::abs(out.im_signed));
    return out;
  }
  if (const auto* s = std::get_if<StableTail>(&c.shape)) {
    const double scale = s->coeff * std::pow(z, s->alpha);
    if (!std::isfinite(scale)) throw OverflowError("exponent scale overflows");
    out.re = scale * osc_master_limit(s->alpha, OscKind::cos);
    out.im_signed = scale * osc_master_limit(s->alpha, OscKind::sin);
    if (general) out.im_signed -= z * s->coeff / (1.0 - s->alpha);
    out.abs_err = 1e-15 * (std::abs(out.re) + std::abs(out.im_signed) + std::abs(z * s->coeff));
    return out;
  }
  std::vector<Piece> below, above;
  const auto all = pieces_of(c);
  if (general) {
    split_at_one(all, below, above);
  } else {
    above = all;
  }
  for (const auto& p : below) accumulate(out, p.is_power() ? power_piece(z, p, true) : generic_piece(z, p, true));
  for (const auto& p : above) accumulate(out, p.is_power() ? power_piece(z, p, false) : generic_piece(z, p, false));
  return out;
}

void check_finite(const ExponentValue& v) {
  if (!std::isfinite(v.re) || !std::isfinite(v.im_signed) || !std::isfinite(v.abs_err)) {
    throw OverflowError("exponent value left the double range");
  }
}

}  // namespace

ExponentValue component_exponent(double z, const MeasureComponent& comp, Form form) {
  if (z == 0.0) return {};
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  ExponentValue v = positive_side(std::abs(z), comp, form);
  switch (comp.side) {
    case Side::positive:
      break;
    case Side::negative:
      v.im_signed = -v.im_signed;
      break;
    case Side::symmetric:
      v.re *= 2.0;
      v.im_signed = 0.0;
      v.abs_err *= 2.0;
      break;
  }
  if (z < 0.0) v.im_signed = -v.im_signed;
  check_finite(v);
  return v;
}

ExponentValue band_exponent(double z, const MeasureComponent& comp) {
  validate(comp);
  return component_exponent(z, comp, Form::drift);
}

ExponentValue eval_psi(const LevyTriplet& t, double z) {
  validate(t);
  ExponentValue out;
  if (z == 0.0) return out;
  for (const auto& c : t.measure) accumulate(out, component_exponent(z, c, t.form));
  out.re += 0.5 * t.gaussian * z * z;
  out.im_signed += (t.form == Form::drift ? t.linear : -t.linear) * z;
  check_finite(out);
  return out;
}

AB ab_from(const ExponentValue& v) {
  const double A = 1.0 + v.re;
  return {A, std::hypot(A, v.im_signed)};
}

AB ab(const LevyTriplet& t, double z) { return ab_from(eval_psi(t, z)); }

double laplace_exponent(const LevyTriplet& t, double s) {
  if (t.form != Form::drift) throw DomainError("laplace exponent needs a drift-form triplet");
  if (!(s > 0.0)) throw DomainError("laplace exponent needs s > 0");
  validate(t);
  double sum = t.linear * s;
  for (const auto& c : t.measure) {
    if (const auto* a = std::get_if<Atoms>(&c.shape)) {
      for (const auto& [x, m] : a->points) sum += -m * std::expm1(-s * x);
    } else if (const auto* st = std::get_if<StableTail>(&c.shape)) {
      sum += st->coeff * std::tgamma(1.0 - st->alpha) / st->alpha * std::pow(s, st->alpha);
    } else {
      for (const auto& p : pieces_of(c)) sum += piece_transform(p, C(s, 0.0), false).value.real();
    }
  }
  return sum;
}

C measure_transform(const LevyTriplet& t, C phi, double* abs_err) {
  if (t.form != Form::drift) throw DomainError("measure transform needs a drift-form triplet");
  if (phi.real() < 0.0) throw DomainError("measure transform needs Re phi >= 0");
  validate(t);
  C sum = 0.0;
  double err = 0.0;
  for (const auto& c : t.measure) {
    if (const auto* a = std::get_if<Atoms>(&c.shape)) {
      for (const auto& [x, m] : a->points) sum += m * (1.0 - std::exp(-phi * x));
    } else {
      for (const auto& p : pieces_of(c)) {
        const auto v = piece_transform(p, phi, false);
        sum += v.value;
        err += v.abs_err;
      }
    }
  }
  if (abs_err) *abs_err = err;
  return sum;
}

LevyTriplet to_general(const LevyTriplet& t) {
  if (t.form == Form::general) return t;
  validate(t);
  LevyTriplet g = t;
  g.form = Form::general;
  double m1 = 0.0;
  for (const auto& c : t.measure) m1 += signed_first_moment(c, 0.0, 1.0);
  g.linear = -t.linear - m1;
  return g;
}

LevyTriplet to_drift(const LevyTriplet& t) {
  if (t.form == Form::drift) return t;
  LevyTriplet d = t;
  d.form = Form::drift;
  double m1 = 0.0;
  for (const auto& c : t.measure) {
    if (accumulates_at_zero(c) && local_index(c) >= 1.0) {
      throw DomainError("drift form needs integrable small jumps");
    }
    m1 += signed_first_moment(c, 0.0, 1.0);
  }
  d.linear = -t.linear - m1;
  validate(d);
  return d;
}

}  // namespace huntlab
