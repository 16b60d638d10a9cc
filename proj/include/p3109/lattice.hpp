#pragma once

#include <optional>
#include <vector>

#include "p3109/dyadic.hpp"
#include "p3109/format.hpp"

namespace p3109 {

/// Sorted enumeration of a format's finite values, with neighbor and
/// nearest-value queries.  Built once per format; all queries are pure.
class ValueLattice {
public:
  explicit ValueLattice(const Format& f);

  const Format& format() const { return fmt_; }
  /// Strictly increasing; contains 0 exactly once.
  const std::vector<Dyadic>& finites() const { return finites_; }

  bool contains(const Dyadic& x) const;

  /// Strict neighbors in V_f together with the representable infinities:
  /// past the finite range they yield +/-inf for extended formats and
  /// nullopt where no such value exists.
  std::optional<XReal> pred(const Dyadic& x) const;
  std::optional<XReal> succ(const Dyadic& x) const;

  /// The finite values at minimal distance from x (one, or two at an exact
  /// midpoint).
  std::vector<Dyadic> nearest(const Dyadic& x) const;

  /// Gap above the largest finite value.
  Dyadic top_ulp() const;

private:
  Format fmt_;
  bool has_pos_inf_ = false;
  bool has_neg_inf_ = false;
  std::vector<Dyadic> finites_;
};

/// Deterministic rounding test points: every finite value, every midpoint
/// of adjacent values, the midpoints nudged a quarter-gap either way, and
/// overflow probes beyond both ends of the finite range (for unsigned
/// formats the low-side probes are negative).  Sorted, duplicate-free.
std::vector<Dyadic> midpoint_lattice(const Format& f);

}  // namespace p3109
