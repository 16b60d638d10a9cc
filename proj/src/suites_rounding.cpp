#include <functional>
#include <map>

#include <json.hpp>

#include "p3109/lattice.hpp"
#include "p3109/projection.hpp"
#include "p3109/rounding.hpp"
#include "p3109/suites.hpp"
#include "suite_util.hpp"

namespace p3109 {
namespace {

using detail::Cell;
using detail::effective_kmax;
using detail::per_format;
using nlohmann::json;

constexpr int kSrMax = 6;

// Independent oracle for the P-bit grid with unbounded exponent above and
// the subnormal grid below: pure arithmetic, no shared code with
// round_to_precision.
Dyadic grid_floor(const DerivedConstants& c, int precision, const Dyadic& x) {
  if (x.is_zero()) return Dyadic();
  const std::int64_t step_exp =
      std::max(msb_exponent(x), c.emin) - precision + 1;
  return Dyadic(x.scaled_pow2(-step_exp).floor(), step_exp);
}

Dyadic grid_ceil(const DerivedConstants& c, int precision, const Dyadic& x) {
  return -grid_floor(c, precision, -x);
}

std::vector<RoundingMode> deterministic_modes() {
  return {RoundingMode::down(),         RoundingMode::up(),
          RoundingMode::toward_zero(),  RoundingMode::nearest_even(),
          RoundingMode::odd(),          RoundingMode::nearest_ties_down(),
          RoundingMode::nearest_ties_up()};
}

// Applies fn(mode, entropy-or-null, instance-label) across the full mode
// sweep: every deterministic mode once, stochastic for k <= sr_kmax with
// every entropy value.
void for_each_mode(int sr_kmax,
                   const std::function<void(const RoundingMode&, EntropySource*,
                                            std::uint64_t)>& fn) {
  for (const RoundingMode& m : deterministic_modes()) fn(m, nullptr, 0);
  for (int k = 1; k <= sr_kmax; ++k) {
    const RoundingMode m = RoundingMode::stochastic(k);
    for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
      FixedEntropy ent(u);
      fn(m, &ent, u);
    }
  }
}

json point_inputs(const Format& f, const Dyadic& x, const RoundingMode& m,
                  std::uint64_t u) {
  json j{{"format", f.str()}, {"x", x.to_decimal_string()}, {"rnd", m.str()}};
  if (m.is_stochastic()) j["entropy"] = u;
  return j;
}

std::vector<Report> suite_rounding_faithful(const SuiteOptions& opts) {
  return per_format(
      "rounding-faithful",
      "result in {grid_floor, grid_ceil}; rd/ru match the oracle; sr all draws",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        for (const Dyadic& x : midpoint_lattice(f)) {
          const Dyadic fl = grid_floor(c, f.P, x);
          const Dyadic ce = grid_ceil(c, f.P, x);
          const Dyadic rd = round_to_precision(f, x, RoundingMode::down());
          const Dyadic ru = round_to_precision(f, x, RoundingMode::up());
          cell.expect(
              rd == fl, [] { return std::string("rd equals grid floor"); },
              [&] { return point_inputs(f, x, RoundingMode::down(), 0).dump(); },
              [&] {
                return json{{"got", rd.to_decimal_string()},
                            {"want", fl.to_decimal_string()}}
                    .dump();
              });
          cell.expect(
              ru == ce, [] { return std::string("ru equals grid ceil"); },
              [&] { return point_inputs(f, x, RoundingMode::up(), 0).dump(); },
              [&] {
                return json{{"got", ru.to_decimal_string()},
                            {"want", ce.to_decimal_string()}}
                    .dump();
              });
          for_each_mode(kSrMax, [&](const RoundingMode& m, EntropySource* ent,
                                    std::uint64_t u) {
            const Dyadic r = round_to_precision(f, x, m, ent);
            cell.expect(
                r == fl || r == ce,
                [] { return std::string("faithfulness: result is a grid neighbor"); },
                [&] { return point_inputs(f, x, m, u).dump(); },
                [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
          });
        }
      });
}

std::vector<Report> suite_rounding_exact(const SuiteOptions& opts) {
  return per_format(
      "rounding-exact", "grid points are fixpoints of every mode",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const ValueLattice lat(f);
        const DerivedConstants c = derive(f);
        std::vector<Dyadic> pts = lat.finites();
        // Grid points beyond the finite range (unbounded exponent): the rest
        // of the emax binade past m_top, then two full binades higher up.
        const std::int64_t m_full = (std::int64_t{1} << f.P) - 1;
        for (std::int64_t m = c.m_top + 1; m <= m_full; ++m)
          pts.push_back(Dyadic(m, c.emax_lsb));
        for (const std::int64_t e : {c.emax + 1, c.emax + 3})
          for (std::int64_t m = std::int64_t{1} << (f.P - 1); m <= m_full; ++m)
            pts.push_back(Dyadic(m, e - f.P + 1));
        for (const Dyadic& x : pts) {
          for_each_mode(kSrMax, [&](const RoundingMode& m, EntropySource* ent,
                                    std::uint64_t u) {
            const Dyadic r = round_to_precision(f, x, m, ent);
            cell.expect(
                r == x, [] { return std::string("exactness: grid point unchanged"); },
                [&] { return point_inputs(f, x, m, u).dump(); },
                [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
          });
        }
      });
}

std::vector<Report> suite_rounding_monotonic(const SuiteOptions& opts) {
  return per_format(
      "rounding-monotonic", "deterministic modes are monotone on the test lattice",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const std::vector<Dyadic> pts = midpoint_lattice(f);
        for (const RoundingMode& m : deterministic_modes()) {
          Dyadic prev;
          bool have_prev = false;
          for (const Dyadic& x : pts) {
            const Dyadic r = round_to_precision(f, x, m);
            if (have_prev)
              cell.expect(
                  prev <= r, [] { return std::string("monotonicity"); },
                  [&] { return point_inputs(f, x, m, 0).dump(); },
                  [&] {
                    return json{{"previous", prev.to_decimal_string()},
                                {"got", r.to_decimal_string()}}
                        .dump();
                  });
            prev = r;
            have_prev = true;
          }
        }
      });
}

std::vector<Report> suite_rounding_weak_monotonic(const SuiteOptions& opts) {
  // One side already representable: x <= v implies result(x) <= v and
  // symmetrically.  Holds for every mode including stochastic.
  return per_format(
      "rounding-weak-monotonic", "representable bounds are respected, sr included",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        for (const Dyadic& x : midpoint_lattice(f)) {
          const Dyadic fl = grid_floor(c, f.P, x);
          const Dyadic ce = grid_ceil(c, f.P, x);
          for_each_mode(kSrMax, [&](const RoundingMode& m, EntropySource* ent,
                                    std::uint64_t u) {
            const Dyadic r = round_to_precision(f, x, m, ent);
            cell.expect(
                fl <= r && r <= ce,
                [] { return std::string("weak monotonicity against grid neighbors"); },
                [&] { return point_inputs(f, x, m, u).dump(); },
                [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
          });
        }
      });
}

std::vector<Report> suite_rounding_carry(const SuiteOptions& opts) {
  return per_format(
      "rounding-carry", "rounding up at a binade top renormalizes to 2^(e+1)",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        for (std::int64_t e = c.emin; e <= c.emax + 2; ++e) {
          // Midpoint above the top grid point of binade e, and a point a
          // quarter step higher.
          const Dyadic mid((std::int64_t{2} << f.P) - 1, e - f.P);
          const Dyadic above = mid + Dyadic(1, e - f.P - 1);
          const Dyadic want(1, e + 1);
          auto chk = [&](const Dyadic& x, const RoundingMode& m) {
            const Dyadic r = round_to_precision(f, x, m);
            cell.expect(
                r == want, [] { return std::string("carry into next binade"); },
                [&] { return point_inputs(f, x, m, 0).dump(); },
                [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
          };
          chk(mid, RoundingMode::up());
          chk(above, RoundingMode::nearest_even());
          if (f.is_signed()) {
            const Dyadic r = round_to_precision(f, -mid, RoundingMode::down());
            cell.expect(
                r == -want, [] { return std::string("carry on the negative side"); },
                [&] { return point_inputs(f, -mid, RoundingMode::down(), 0).dump(); },
                [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
          }
        }
      });
}

std::vector<Report> suite_rne_p1_ties(const SuiteOptions& opts) {
  std::vector<Format> fmts;
  for (const Format& f : all_formats(3, effective_kmax(opts, 8)))
    if (f.P == 1) fmts.push_back(f);
  return per_format(
      "rne-p1-ties", "P=1 midpoints resolve to the even-exponent neighbor", fmts,
      opts, [](Cell& cell, const Format& f) {
        const ValueLattice lat(f);
        const std::vector<Dyadic>& vs = lat.finites();
        for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
          const Dyadic& lo = vs[i];
          const Dyadic& hi = vs[i + 1];
          const Dyadic mid = (lo + hi).scaled_pow2(-1);
          const std::int64_t elo = canonical_exponent(f, lo);
          const std::int64_t ehi = canonical_exponent(f, hi);
          const bool lo_even = elo % 2 == 0;
          const bool hi_even = ehi % 2 == 0;
          Dyadic expected;
          bool decided = true;
          if (lo_even != hi_even) {
            expected = lo_even ? lo : hi;
          } else if (lo.is_zero() || hi.is_zero()) {
            expected = Dyadic();  // exponents tie only around zero; zero wins
          } else {
            decided = false;
          }
          const Dyadic r = round_to_precision(f, mid, RoundingMode::nearest_even());
          cell.expect(
              decided && r == expected,
              [&] {
                return decided ? std::string("rne picks the even-exponent neighbor")
                               : std::string("parity oracle undecided");
              },
              [&] {
                return json{{"format", f.str()},
                            {"mid", mid.to_decimal_string()},
                            {"lo", lo.to_decimal_string()},
                            {"hi", hi.to_decimal_string()}}
                    .dump();
              },
              [&] { return json{{"got", r.to_decimal_string()}}.dump(); });
        }
      });
}

std::vector<Report> suite_rne_nearest(const SuiteOptions& opts) {
  return per_format(
      "rne-nearest", "projected rne result attains the minimal distance",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const ValueLattice lat(f);
        const ProjectionSpec spec{RoundingMode::nearest_even(), SatMode::SatFinite};
        for (const Dyadic& x : midpoint_lattice(f)) {
          const XReal r = eval(f, project(f, XReal(x), spec));
          const std::vector<Dyadic> best = lat.nearest(x);
          const bool ok =
              r.is_finite() &&
              std::find(best.begin(), best.end(), r.finite()) != best.end();
          cell.expect(
              ok, [] { return std::string("nearest oracle"); },
              [&] {
                return json{{"format", f.str()}, {"x", x.to_decimal_string()}}.dump();
              },
              [&] { return json{{"got", r.str()}}.dump(); });
        }
      });
}

// ---- projection suites ----------------------------------------------------

void for_each_spec(int sr_kmax,
                   const std::function<void(const ProjectionSpec&, EntropySource*,
                                            std::uint64_t)>& fn) {
  for (const SatMode sat :
       {SatMode::SatFinite, SatMode::OvfInf, SatMode::SatPropagate}) {
    for (const RoundingMode& m :
         {RoundingMode::down(), RoundingMode::up(), RoundingMode::toward_zero(),
          RoundingMode::nearest_even(), RoundingMode::odd()})
      fn(ProjectionSpec{m, sat}, nullptr, 0);
    for (int k = 1; k <= sr_kmax; ++k) {
      const RoundingMode m = RoundingMode::stochastic(k);
      for (std::uint64_t u = 0; u < (std::uint64_t{1} << k); ++u) {
        FixedEntropy ent(u);
        fn(ProjectionSpec{m, sat}, &ent, u);
      }
    }
  }
}

json spec_inputs(const Format& f, const Dyadic& x, const ProjectionSpec& spec,
                 std::uint64_t u) {
  json j{{"format", f.str()}, {"x", x.to_decimal_string()}, {"spec", spec.str()}};
  if (spec.rnd.is_stochastic()) j["entropy"] = u;
  return j;
}

std::vector<Report> suite_project_identity(const SuiteOptions& opts) {
  return per_format(
      "project-identity", "projection == rounding inside [M_lo, M_hi], all specs",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        for (const Dyadic& x : midpoint_lattice(f)) {
          if (x < c.min_finite || x > c.max_finite) continue;
          for_each_spec(kSrMax, [&](const ProjectionSpec& spec, EntropySource* ent,
                                    std::uint64_t u) {
            const XReal projected = eval(f, project(f, XReal(x), spec, ent));
            FixedEntropy replay(u);
            const Dyadic rounded = round_to_precision(
                f, x, spec.rnd, spec.rnd.is_stochastic() ? &replay : nullptr);
            cell.expect(
                projected == XReal(rounded),
                [] { return std::string("projection equals rounding in range"); },
                [&] { return spec_inputs(f, x, spec, u).dump(); },
                [&] {
                  return json{{"projected", projected.str()},
                              {"rounded", rounded.to_decimal_string()}}
                      .dump();
                });
          });
        }
      });
}

std::vector<Report> suite_project_faith(const SuiteOptions& opts) {
  return per_format(
      "project-faith", "projection is faithful on signed formats, all specs",
      signed_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const ValueLattice lat(f);
        for (const Dyadic& x : midpoint_lattice(f)) {
          const bool representable = lat.contains(x);
          const std::optional<XReal> lo = lat.pred(x);
          const std::optional<XReal> hi = lat.succ(x);
          for_each_spec(kSrMax, [&](const ProjectionSpec& spec, EntropySource* ent,
                                    std::uint64_t u) {
            const XReal r = eval(f, project(f, XReal(x), spec, ent));
            bool ok;
            if (representable) {
              ok = r == XReal(x);
            } else {
              ok = (lo && r == *lo) || (hi && r == *hi);
            }
            cell.expect(
                ok, [] { return std::string("projection faithfulness"); },
                [&] { return spec_inputs(f, x, spec, u).dump(); },
                [&] {
                  return json{{"got", r.str()},
                              {"pred", lo ? lo->str() : "none"},
                              {"succ", hi ? hi->str() : "none"}}
                      .dump();
                });
          });
        }
      });
}

std::vector<Report> suite_project_overflow_image(const SuiteOptions& opts) {
  return per_format(
      "project-overflow-image", "overflow lands on the boundary or infinity",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const XReal hi_bound(c.max_finite);
        const XReal lo_bound(c.min_finite);
        for (const Dyadic& x : midpoint_lattice(f)) {
          const bool above = x > c.max_finite;
          const bool below = x < c.min_finite;
          if (!above && !below) continue;
          for_each_spec(3, [&](const ProjectionSpec& spec, EntropySource* ent,
                               std::uint64_t u) {
            const XReal r = eval(f, project(f, XReal(x), spec, ent));
            bool ok;
            if (above) {
              ok = r == hi_bound || r == XReal::pos_inf();
            } else if (f.is_signed()) {
              ok = r == lo_bound || r == XReal::neg_inf();
            } else {
              // Negative into unsigned: clamps to zero or yields NaN.
              ok = r == lo_bound || r.is_nan();
            }
            cell.expect(
                ok, [] { return std::string("overflow image"); },
                [&] { return spec_inputs(f, x, spec, u).dump(); },
                [&] { return json{{"got", r.str()}}.dump(); });
          });
        }
      });
}

std::vector<Report> suite_project_closure(const SuiteOptions& opts) {
  return per_format(
      "project-closure", "projected values are always valid members of V_f",
      all_formats(3, effective_kmax(opts, 6)), opts,
      [](Cell& cell, const Format& f) {
        std::vector<XReal> pts;
        for (const Dyadic& x : midpoint_lattice(f)) pts.push_back(XReal(x));
        pts.push_back(XReal::pos_inf());
        pts.push_back(XReal::neg_inf());
        pts.push_back(XReal::nan());
        for (const XReal& x : pts) {
          for_each_spec(3, [&](const ProjectionSpec& spec, EntropySource* ent,
                               std::uint64_t u) {
            const Value v = project(f, x, spec, ent);
            cell.expect(
                is_valid(f, v) && in_value_set(f, eval(f, v)),
                [] { return std::string("projection closure"); },
                [&] {
                  json j{{"format", f.str()}, {"x", x.str()}, {"spec", spec.str()}};
                  if (spec.rnd.is_stochastic()) j["entropy"] = u;
                  return j.dump();
                },
                [&] { return json{{"got", v.str()}}.dump(); });
          });
        }
      });
}

}  // namespace

namespace detail {

std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>>
rounding_suites() {
  return {
      {"rounding-faithful", suite_rounding_faithful},
      {"rounding-exact", suite_rounding_exact},
      {"rounding-monotonic", suite_rounding_monotonic},
      {"rounding-weak-monotonic", suite_rounding_weak_monotonic},
      {"rounding-carry", suite_rounding_carry},
      {"rne-p1-ties", suite_rne_p1_ties},
      {"rne-nearest", suite_rne_nearest},
      {"project-identity", suite_project_identity},
      {"project-faith", suite_project_faith},
      {"project-overflow-image", suite_project_overflow_image},
      {"project-closure", suite_project_closure},
  };
}

}  // namespace detail

}  // namespace p3109
