#include "p3109/lattice.hpp"

#include <algorithm>
#include <cassert>

#include "p3109/codec.hpp"
#include "p3109/errors.hpp"

namespace p3109 {

ValueLattice::ValueLattice(const Format& f) : fmt_(f) {
  has_pos_inf_ = f.is_extended();
  has_neg_inf_ = f.is_extended() && f.is_signed();
  for (const TableRow& row : enumerate(f))
    if (row.value.is_finite()) finites_.push_back(row.real.finite());
  std::sort(finites_.begin(), finites_.end());
  for (std::size_t i = 1; i < finites_.size(); ++i)
    assert(finites_[i - 1] < finites_[i]);
}

bool ValueLattice::contains(const Dyadic& x) const {
  return std::binary_search(finites_.begin(), finites_.end(), x);
}

std::optional<XReal> ValueLattice::pred(const Dyadic& x) const {
  auto it = std::lower_bound(finites_.begin(), finites_.end(), x);
  if (it == finites_.begin())
    return has_neg_inf_ ? std::optional<XReal>(XReal::neg_inf()) : std::nullopt;
  return XReal(*std::prev(it));
}

std::optional<XReal> ValueLattice::succ(const Dyadic& x) const {
  auto it = std::upper_bound(finites_.begin(), finites_.end(), x);
  if (it == finites_.end())
    return has_pos_inf_ ? std::optional<XReal>(XReal::pos_inf()) : std::nullopt;
  return XReal(*it);
}

std::vector<Dyadic> ValueLattice::nearest(const Dyadic& x) const {
  auto it = std::lower_bound(finites_.begin(), finites_.end(), x);
  std::vector<Dyadic> best;
  auto consider = [&](const Dyadic& v) {
    const Dyadic d = abs(v - x);
    if (best.empty()) {
      best.push_back(v);
      return;
    }
    const Dyadic cur = abs(best.front() - x);
    if (d < cur) best = {v};
    else if (d == cur && v != best.front()) best.push_back(v);
  };
  if (it != finites_.end()) consider(*it);
  if (it != finites_.begin()) consider(*std::prev(it));
  std::sort(best.begin(), best.end());
  return best;
}

Dyadic ValueLattice::top_ulp() const {
  const std::size_t n = finites_.size();
  return finites_[n - 1] - finites_[n - 2];
}

std::vector<Dyadic> midpoint_lattice(const Format& f) {
  const ValueLattice lat(f);
  const std::vector<Dyadic>& vs = lat.finites();
  std::vector<Dyadic> pts(vs);

  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const Dyadic mid = (vs[i] + vs[i + 1]).scaled_pow2(-1);
    const Dyadic quarter = (vs[i + 1] - vs[i]).scaled_pow2(-2);
    pts.push_back(mid);
    pts.push_back(mid - quarter);
    pts.push_back(mid + quarter);
  }

  // Overflow probes past both ends.
  const Dyadic top = vs.back();
  const Dyadic ulp = lat.top_ulp();
  const Dyadic half_ulp = ulp.scaled_pow2(-1);
  pts.push_back(top + half_ulp - half_ulp.scaled_pow2(-1));
  pts.push_back(top + half_ulp);
  pts.push_back(top + half_ulp + half_ulp.scaled_pow2(-1));
  pts.push_back(top + ulp);
  pts.push_back(top.scaled_pow2(1));
  if (f.is_signed()) {
    const std::size_t base = pts.size() - 5;
    for (std::size_t k = 0; k < 5; ++k) pts.push_back(-pts[base + k]);
  } else {
    // Negative probes for unsigned formats.
    pts.push_back(-vs[1].scaled_pow2(-1));
    pts.push_back(-vs[1]);
    pts.push_back(-top);
    pts.push_back(-top.scaled_pow2(1));
  }

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace p3109
