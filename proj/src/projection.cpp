#include "p3109/projection.hpp"

#include "p3109/errors.hpp"

namespace p3109 {

std::string sat_mode_name(SatMode m) {
  switch (m) {
    case SatMode::SatFinite: return "satfin";
    case SatMode::OvfInf: return "ovfinf";
    case SatMode::SatPropagate: return "satprop";
  }
  return "?";
}

SatMode parse_sat_mode(std::string_view name) {
  if (name == "satfin") return SatMode::SatFinite;
  if (name == "ovfinf") return SatMode::OvfInf;
  if (name == "satprop") return SatMode::SatPropagate;
  throw ParseError("unknown saturation mode '" + std::string(name) +
                   "' (expected satfin, ovfinf, or satprop)");
}

XReal saturate(const Format& f, const XReal& y, SatMode sat) {
  const DerivedConstants c = derive(f);

  if (y.is_nan()) return y;

  if (y.kind() == XReal::Kind::PosInf) {
    if (sat == SatMode::SatFinite) return XReal(c.max_finite);
    return f.is_extended() ? XReal::pos_inf() : XReal::nan();
  }
  if (y.kind() == XReal::Kind::NegInf) {
    if (sat == SatMode::SatFinite) return XReal(c.min_finite);
    if (f.is_signed() && f.is_extended()) return XReal::neg_inf();
    return XReal::nan();
  }

  const Dyadic& v = y.finite();
  if (v > c.max_finite) {
    if (sat == SatMode::OvfInf && f.is_extended()) return XReal::pos_inf();
    return XReal(c.max_finite);
  }
  if (v < c.min_finite) {
    if (f.is_signed()) {
      if (sat == SatMode::OvfInf && f.is_extended()) return XReal::neg_inf();
      return XReal(c.min_finite);
    }
    // Negative input to an unsigned format.
    if (sat == SatMode::OvfInf) return XReal::nan();
    return XReal(c.min_finite);
  }
  return y;
}

Value project(const Format& f, const XReal& x, const ProjectionSpec& spec,
              EntropySource* ent) {
  if (x.is_nan()) return Value::nan();
  XReal y = x;
  if (x.is_finite()) y = XReal(round_to_precision(f, x.finite(), spec.rnd, ent));
  return encode_value(f, saturate(f, y, spec.sat));
}

}  // namespace p3109
