#pragma once

#include <string>
#include <string_view>

#include "p3109/dyadic.hpp"
#include "p3109/format.hpp"
#include "p3109/rounding.hpp"
#include "p3109/value.hpp"

namespace p3109 {

enum class SatMode {
  SatFinite,     // clamp overflow to the maximum finite magnitude
  OvfInf,        // standard overflow behavior: to infinity when one exists
  SatPropagate,  // preserve input infinities, clamp finite overflow
};

/// CLI names: satfin, ovfinf, satprop.
std::string sat_mode_name(SatMode m);
SatMode parse_sat_mode(std::string_view name);

/// Projection specification pi = (rounding mode, saturation mode).
struct ProjectionSpec {
  RoundingMode rnd;
  SatMode sat = SatMode::SatFinite;

  std::string str() const { return rnd.str() + "/" + sat_mode_name(sat); }
};

/// Maps a rounded value (finite, or an infinity propagated from the input)
/// into the format's finite range [M_lo, M_hi] or onto a representable
/// infinity, per the saturation mode.
///
/// Two behaviors here go beyond the published table and are pinned down by
/// this implementation: finite-domain formats clamp under every mode (a
/// propagated infinity with OvfInf/SatPropagate becomes NaN since no
/// infinity exists), and a negative value entering an unsigned format
/// clamps to 0 under SatFinite/SatPropagate but yields NaN under OvfInf.
XReal saturate(const Format& f, const XReal& y, SatMode sat);

/// The three-step projection: round to precision, saturate, encode.
/// NaN maps to NaN; infinite inputs skip rounding.  The result is always a
/// valid Value of f.
Value project(const Format& f, const XReal& x, const ProjectionSpec& spec,
              EntropySource* ent = nullptr);

}  // namespace p3109
