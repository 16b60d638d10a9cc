#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "p3109/algorithms.hpp"
#include "p3109/codec.hpp"
#include "p3109/errors.hpp"
#include "p3109/lattice.hpp"
#include "p3109/suites.hpp"
#include "suite_util.hpp"

namespace p3109 {
namespace {

using detail::Cell;
using detail::effective_kmax;
using detail::per_format;
using nlohmann::json;

struct Operand {
  Value value = Value::nan();
  Dyadic real;
  std::int64_t canon_exp = 0;
};

std::vector<Operand> finite_operands(const Format& f) {
  std::vector<Operand> out;
  for (const TableRow& row : enumerate(f)) {
    if (!row.value.is_finite()) continue;
    Operand op;
    op.value = row.value;
    op.real = row.real.finite();
    op.canon_exp = canonical_exponent(f, op.real);
    out.push_back(op);
  }
  return out;
}

// Operand-pair index sweep: exhaustive up to K=6, seeded samples beyond.
std::vector<std::pair<std::size_t, std::size_t>> pair_sweep(
    std::size_t n, bool sample, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (!sample) {
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  for (int k = 0; k < 20000; ++k) pairs.emplace_back(dist(rng), dist(rng));
  return pairs;
}

struct SpecSweepEntry {
  ProjectionSpec spec1, spec2, spec3;
  bool stochastic = false;
};

std::vector<SpecSweepEntry> fts_spec_sweep() {
  const auto fin = SatMode::SatFinite;
  const auto inf = SatMode::OvfInf;
  const auto prop = SatMode::SatPropagate;
  const std::vector<RoundingMode> rnd1 = {
      RoundingMode::down(),         RoundingMode::up(),
      RoundingMode::toward_zero(),  RoundingMode::nearest_even(),
      RoundingMode::odd(),          RoundingMode::nearest_ties_down(),
      RoundingMode::nearest_ties_up(), RoundingMode::stochastic(2)};
  const std::vector<std::pair<ProjectionSpec, ProjectionSpec>> tail = {
      {{RoundingMode::nearest_even(), fin}, {RoundingMode::nearest_even(), fin}},
      {{RoundingMode::down(), inf}, {RoundingMode::up(), fin}},
      {{RoundingMode::toward_zero(), prop}, {RoundingMode::odd(), fin}},
      {{RoundingMode::stochastic(2), fin}, {RoundingMode::stochastic(2), prop}},
  };
  std::vector<SpecSweepEntry> out;
  for (const RoundingMode& r1 : rnd1)
    for (const SatMode s1 : {fin, inf, prop})
      for (const auto& [p2, p3] : tail) {
        SpecSweepEntry e{{r1, s1}, p2, p3, false};
        e.stochastic = r1.is_stochastic() || p2.rnd.is_stochastic() ||
                       p3.rnd.is_stochastic();
        out.push_back(e);
      }
  return out;
}

json fts_inputs(const Format& f, const FtsTrace& tr, std::uint64_t u,
                bool stochastic) {
  json j{{"format", f.str()},
         {"a", tr.a.str()},
         {"b", tr.b.str()},
         {"specs", {tr.specs[0].str(), tr.specs[1].str(), tr.specs[2].str()}}};
  if (stochastic) j["entropy"] = u;
  return j;
}

constexpr const char* kFtsSuites[] = {
    "fts-exact-z",  "fts-delta-in-f",      "fts-eft",
    "fts-faith",    "fts-overflow-immune", "fts-overflow-exact"};

}  // namespace

std::vector<Report> run_fts_family(const SuiteOptions& opts,
                                   const std::vector<std::string>& which) {
  const std::set<std::string> enabled(which.begin(), which.end());
  for (const std::string& name : which)
    if (std::find(std::begin(kFtsSuites), std::end(kFtsSuites), name) ==
        std::end(kFtsSuites))
      throw Error("unknown FastTwoSum suite '" + name + "'");

  const int kmax = effective_kmax(opts, 6);
  std::vector<std::pair<Format, bool>> fmts;  // (format, sampled)
  for (const Format& f : signed_formats(3, std::min(kmax, 6)))
    fmts.emplace_back(f, false);
  if (opts.deep || kmax > 6)
    for (const Format& f : signed_formats(7, std::max(kmax, opts.deep ? 8 : 0)))
      fmts.emplace_back(f, true);

  const std::vector<SpecSweepEntry> sweep = fts_spec_sweep();
  const char* spec_desc =
      "rnd1 in {rd,ru,rz,rne,ro,rn-down,rn-up,sr:2(all draws)} x sat1 x 4 tail specs";

  std::vector<Report> out;
  for (const auto& [f, sampled] : fmts) {
    std::map<std::string, Cell> cells;
    for (const char* name : kFtsSuites)
      if (enabled.count(name))
        cells.emplace(name, Cell(name, f.str(), spec_desc, opts));
    auto cell_ptr = [&](const char* name) -> Cell* {
      const auto it = cells.find(name);
      return it == cells.end() ? nullptr : &it->second;
    };
    Cell* c_exact_z = cell_ptr("fts-exact-z");
    Cell* c_delta = cell_ptr("fts-delta-in-f");
    Cell* c_eft = cell_ptr("fts-eft");
    Cell* c_faith = cell_ptr("fts-faith");
    Cell* c_immune = cell_ptr("fts-overflow-immune");
    Cell* c_ovf_exact = cell_ptr("fts-overflow-exact");
    const auto t0 = std::chrono::steady_clock::now();

    const DerivedConstants c = derive(f);
    const ValueLattice lat(f);
    const std::vector<Operand> ops = finite_operands(f);
    const auto pairs = pair_sweep(ops.size(), sampled, opts.seed ^ f.K);

    auto contains = [&](const Dyadic& x) { return lat.contains(x); };

    for (const auto& [ia, ib] : pairs) {
      const Operand& a = ops[ia];
      const Operand& b = ops[ib];
      const Dyadic exact = a.real + b.real;
      const bool in_range = abs(exact) <= c.max_finite;
      const bool exp_ok = a.canon_exp >= b.canon_exp;

      for (const SpecSweepEntry& entry : sweep) {
        const std::uint64_t draws = entry.stochastic ? 4 : 1;
        for (std::uint64_t u = 0; u < draws; ++u) {
          FixedEntropy ent(u);
          EntropySource* ep = entry.stochastic ? &ent : nullptr;
          const FtsTrace tr =
              fast_two_sum(f, a.value, b.value, entry.spec1, entry.spec2,
                           entry.spec3, ep);
          const XReal sv = eval(f, tr.s);
          const XReal tv = eval(f, tr.t);
          const bool s_finite = sv.is_finite();
          const bool nearest1 = entry.spec1.rnd.is_nearest();

          auto inputs = [&] { return fts_inputs(f, tr, u, entry.stochastic).dump(); };
          auto trace = [&] { return tr.to_json(); };

          if (c_exact_z != nullptr && in_range && exp_ok) {
            const bool ok = s_finite && contains(sv.finite() - a.real);
            c_exact_z->expect(
                ok, [] { return std::string("s - a is representable"); }, inputs,
                trace);
          }
          if (c_delta != nullptr && in_range && nearest1) {
            const bool ok = tr.delta.is_finite() && contains(tr.delta.finite());
            c_delta->expect(
                ok, [] { return std::string("delta = a+b-s is representable"); },
                inputs, trace);
          }
          if (c_eft != nullptr && in_range && exp_ok && nearest1) {
            c_eft->expect(
                tv == tr.delta, [] { return std::string("t equals a+b-s exactly"); },
                inputs, trace);
          }
          if (c_faith != nullptr && in_range && exp_ok) {
            bool ok = false;
            if (tr.delta.is_finite()) {
              const Dyadic& d = tr.delta.finite();
              if (contains(d)) {
                ok = tv == tr.delta;
              } else {
                const auto lo = lat.pred(d);
                const auto hi = lat.succ(d);
                ok = (lo && tv == *lo) || (hi && tv == *hi);
              }
            }
            c_faith->expect(
                ok, [] { return std::string("t is a faithful rounding of delta"); },
                inputs, trace);
          }
          // Overflow immunity holds under FastTwoSum's operating condition
          // e_a >= e_b; without it, s = -M_hi with a tiny positive a makes
          // s - a round below -M_hi in every precision.
          if (c_immune != nullptr && s_finite && exp_ok) {
            FixedEntropy replay(u);
            const Dyadic rounded2 = round_to_precision(
                f, sv.finite() - a.real, entry.spec2.rnd,
                entry.spec2.rnd.is_stochastic() ? &replay : nullptr);
            c_immune->expect(
                abs(rounded2) <= c.max_finite,
                [] { return std::string("step 2 cannot overflow"); }, inputs,
                trace);
          }
          if (c_ovf_exact != nullptr && !in_range && s_finite && exp_ok &&
              abs(sv.finite()) == c.max_finite) {
            c_ovf_exact->expect(
                tv == tr.delta,
                [] { return std::string("t equals the exact overflow error"); },
                inputs, trace);
          }
        }
      }
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    for (auto& [name, cell] : cells) {
      Report rep = std::move(cell).take();
      rep.ms = ms / static_cast<double>(cells.size());
      if (sampled) rep.spec += " (sampled pairs)";
      out.push_back(std::move(rep));
    }
  }
  return out;
}

namespace {

std::vector<Report> make_fts_suite(const char* name, const SuiteOptions& opts) {
  return run_fts_family(opts, {name});
}

// ---- ExtractScalar ---------------------------------------------------------

std::vector<SatMode> all_sats() {
  return {SatMode::SatFinite, SatMode::OvfInf, SatMode::SatPropagate};
}

json es_inputs(const Format& f, const EsTrace& tr) {
  return json{{"format", f.str()},
              {"sigma", tr.sigma.str()},
              {"x", tr.x.str()},
              {"sats",
               {sat_mode_name(tr.sats[0]), sat_mode_name(tr.sats[1]),
                sat_mode_name(tr.sats[2])}}};
}

std::vector<Report> suite_extract_abcd(const SuiteOptions& opts) {
  std::vector<Format> fmts;
  for (const Format& f : signed_formats(3, effective_kmax(opts, 6)))
    if (f.P >= 2) fmts.push_back(f);
  return per_format(
      "extract-scalar-abcd",
      "x = x_h + x_l; bounds (b)-(d) for all sigma, x, j, sat modes", fmts, opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const std::vector<Operand> ops = finite_operands(f);
        std::vector<Operand> sigmas;
        for (const Operand& op : ops) {
          if (op.real.signum() <= 0) continue;
          if (op.real == Dyadic(1, msb_exponent(op.real))) sigmas.push_back(op);
        }
        for (const Operand& sig : sigmas) {
          const std::int64_t i = msb_exponent(sig.real);
          for (const Operand& x : ops) {
            if (abs(x.real) > sig.real) continue;               // needs j >= 0
            if (abs(sig.real + x.real) > c.max_finite) continue;  // no overflow
            for (const SatMode s1 : all_sats())
              for (const SatMode s2 : all_sats())
                for (const SatMode s3 : all_sats()) {
                  const EsTrace tr =
                      extract_scalar(f, sig.value, x.value, s1, s2, s3);
                  const XReal xh = eval(f, tr.x_high);
                  const XReal xl = eval(f, tr.x_low);
                  auto inputs = [&] { return es_inputs(f, tr).dump(); };
                  auto trace = [&] { return tr.to_json(); };
                  const bool finite_outs = xh.is_finite() && xl.is_finite();
                  cell.expect(
                      finite_outs && xh.finite() + xl.finite() == x.real,
                      [] { return std::string("(a) x = x_h + x_l"); }, inputs,
                      trace);
                  if (!finite_outs) continue;
                  cell.expect(
                      abs(xl.finite()).scaled_pow2(f.P) <= sig.real,
                      [] { return std::string("(b) |x_l| <= 2^-P sigma"); },
                      inputs, trace);
                  cell.expect(
                      xh.finite().scaled_pow2(f.P - i).is_integer(),
                      [] { return std::string("(c) x_h in 2^-P sigma Z"); },
                      inputs, trace);
                  const std::int64_t j_top = tr.j_max ? *tr.j_max : f.P + 2;
                  for (std::int64_t j = 0; j <= j_top; ++j)
                    cell.expect(
                        abs(xh.finite()) <= sig.real.scaled_pow2(-j),
                        [&] {
                          return "(d) |x_h| <= 2^-j sigma at j=" + std::to_string(j);
                        },
                        inputs, trace);
                }
          }
        }
      });
}

std::vector<Report> suite_extract_d_p1(const SuiteOptions& opts) {
  std::vector<Format> fmts;
  for (const Format& f : signed_formats(3, effective_kmax(opts, 6)))
    if (f.P == 1) fmts.push_back(f);

  std::uint64_t witnesses_total = 0;
  std::vector<Report> reports = per_format(
      "extract-scalar-d-p1",
      "search for P=1 cases where (a) holds but (d) fails", fmts, opts,
      [&witnesses_total](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const std::vector<Operand> ops = finite_operands(f);
        std::uint64_t found = 0;
        for (const Operand& sig : ops) {
          if (sig.real.signum() <= 0) continue;
          // For P = 1 every positive finite value is a power of two.
          for (const Operand& x : ops) {
            if (abs(x.real) > sig.real) continue;
            if (abs(sig.real + x.real) > c.max_finite) continue;
            for (const SatMode s1 : all_sats())
              for (const SatMode s2 : all_sats())
                for (const SatMode s3 : all_sats()) {
                  const EsTrace tr =
                      extract_scalar(f, sig.value, x.value, s1, s2, s3);
                  const XReal xh = eval(f, tr.x_high);
                  const XReal xl = eval(f, tr.x_low);
                  cell.count_case();
                  if (!xh.is_finite() || !xl.is_finite()) continue;
                  if (!(xh.finite() + xl.finite() == x.real)) continue;  // (a)
                  const std::int64_t j_top = tr.j_max ? *tr.j_max : 0;
                  for (std::int64_t j = 0; j <= j_top; ++j) {
                    if (abs(xh.finite()) <= sig.real.scaled_pow2(-j)) continue;
                    ++found;
                    if (found <= 4) {
                      json w = json::parse(tr.to_json());
                      w["j"] = j;
                      w["format"] = f.str();
                      cell.note(w.dump());
                    }
                  }
                }
          }
        }
        witnesses_total += found;
        cell.report().spec += "; witnesses=" + std::to_string(found);
      });

  Report agg;
  agg.suite = "extract-scalar-d-p1";
  agg.format = "all";
  agg.spec = "at least one witness must exist across the swept formats";
  agg.cases = 1;
  if (witnesses_total == 0) {
    agg.failure_count = 1;
    agg.failures.push_back(
        Failure{"{}", "{}", "no P=1 witness violating (d) was found"});
  }
  reports.push_back(std::move(agg));
  return reports;
}

}  // namespace

namespace detail {

std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>>
algorithm_suites() {
  std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>> m{
      {"extract-scalar-abcd", suite_extract_abcd},
      {"extract-scalar-d-p1", suite_extract_d_p1},
  };
  for (const char* name : kFtsSuites)
    m.emplace(name, [name](const SuiteOptions& o) { return make_fts_suite(name, o); });
  return m;
}

}  // namespace detail

}  // namespace p3109
