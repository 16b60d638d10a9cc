#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "p3109/codec.hpp"
#include "p3109/errors.hpp"
#include "p3109/lattice.hpp"
#include "p3109/suites.hpp"
#include "suite_util.hpp"

namespace p3109 {

using detail::Cell;
using detail::effective_kmax;
using detail::per_format;
using nlohmann::json;

std::string Report::to_json() const {
  json jf = json::array();
  for (const Failure& f : failures) {
    json e{{"violated", f.violated}};
    e["inputs"] = f.inputs.empty() ? json() : json::parse(f.inputs, nullptr, false);
    e["trace"] = f.trace.empty() ? json() : json::parse(f.trace, nullptr, false);
    jf.push_back(e);
  }
  json j{{"suite", suite},     {"format", format},
         {"spec", spec},       {"cases", cases},
         {"failures", jf},     {"failure_count", failure_count},
         {"ms", ms}};
  if (!notes.empty()) {
    json jn = json::array();
    for (const std::string& n : notes) jn.push_back(json::parse(n, nullptr, false));
    j["notes"] = jn;
  }
  return j.dump();
}

std::vector<Format> all_formats(int kmin, int kmax) {
  std::vector<Format> out;
  for (int K = kmin; K <= kmax; ++K)
    for (const Signedness s : {Signedness::Signed, Signedness::Unsigned})
      for (const Domain d : {Domain::Finite, Domain::Extended}) {
        const int pmax = s == Signedness::Signed ? K - 1 : K;
        for (int P = 1; P <= pmax; ++P) out.push_back(make_format(K, P, s, d));
      }
  return out;
}

std::vector<Format> signed_formats(int kmin, int kmax) {
  std::vector<Format> out;
  for (const Format& f : all_formats(kmin, kmax))
    if (f.is_signed()) out.push_back(f);
  return out;
}

namespace detail {

std::vector<Report> per_format(const std::string& suite, const std::string& spec,
                               const std::vector<Format>& formats,
                               const SuiteOptions& opts,
                               const std::function<void(Cell&, const Format&)>& body) {
  std::vector<Report> out;
  for (const Format& f : formats) {
    Cell cell(suite, f.str(), spec, opts);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(cell, f);
    } catch (const std::exception& ex) {
      cell.expect(false, "unexpected exception",
                  json{{"what", ex.what()}}.dump());
    }
    const auto t1 = std::chrono::steady_clock::now();
    Report rep = std::move(cell).take();
    rep.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace detail

namespace {

json pair_inputs(const Format& f, std::uint64_t n) {
  return json{{"format", f.str()}, {"encoding", n}};
}

// ---- formats suites -----------------------------------------------------

std::vector<Report> suite_emax_consistency(const SuiteOptions& opts) {
  return per_format(
      "emax-consistency", "decode(n_fmax) vs derived emax/M_hi",
      all_formats(3, effective_kmax(opts, 10)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const Value v = decode(f, c.n_fmax);
        const json in{{"format", f.str()}, {"n_fmax", c.n_fmax}};
        cell.expect(v.is_finite() && v.significand() != 0,
                    "decode(n_fmax) must be finite nonzero", in.dump());
        if (!v.is_finite() || v.significand() == 0) return;
        const XReal x = eval(f, v);
        cell.expect(msb_exponent(x.finite()) == c.emax,
                    "MSB exponent of decode(n_fmax) equals emax", in.dump());
        cell.expect(x.finite() == c.max_finite,
                    "decode(n_fmax) evaluates to max_finite", in.dump());
        cell.expect(is_valid(f, v), "decode(n_fmax) is a valid value", in.dump());
      });
}

std::vector<Report> suite_reserved_encodings(const SuiteOptions& opts) {
  return per_format(
      "reserved-encodings", "special slots match the published table",
      all_formats(3, effective_kmax(opts, 10)), opts,
      [](Cell& cell, const Format& f) {
        const std::uint64_t full = std::uint64_t{1} << f.K;
        const std::uint64_t nan_slot =
            f.is_signed() ? full >> 1 : full - 1;
        const std::uint64_t pinf_slot =
            f.is_signed() ? (full >> 1) - 1 : full - 2;
        std::uint64_t specials = 0;
        for (std::uint64_t n = 0; n < full; ++n) {
          const Value v = decode(f, n);
          const bool is_special = !v.is_finite();
          if (is_special) ++specials;
          bool expected_special = n == nan_slot;
          if (f.is_extended()) {
            expected_special = expected_special || n == pinf_slot;
            if (f.is_signed()) expected_special = expected_special || n == full - 1;
          }
          cell.expect(is_special == expected_special,
                      "special values exactly at the table slots",
                      pair_inputs(f, n).dump());
          if (n == nan_slot)
            cell.expect(v.is_nan(), "NaN at its slot", pair_inputs(f, n).dump());
          if (f.is_extended() && n == pinf_slot)
            cell.expect(v.is_inf() && !v.negative(), "+inf at its slot",
                        pair_inputs(f, n).dump());
          if (f.is_extended() && f.is_signed() && n == full - 1)
            cell.expect(v.is_inf() && v.negative(), "-inf at its slot",
                        pair_inputs(f, n).dump());
        }
        const std::uint64_t expected =
            f.is_extended() ? (f.is_signed() ? 3 : 2) : 1;
        cell.expect(specials == expected, "reserved encoding count",
                    json{{"format", f.str()}, {"count", specials}}.dump());
      });
}

std::vector<Report> suite_emax_errata(const SuiteOptions& opts) {
  // Regression for the interim-report errata: unsigned low-precision
  // formats do not follow the default emax, and the unsigned extended
  // infinity lives at 2^K - 2.
  std::vector<Format> fmts;
  for (int K = 3; K <= effective_kmax(opts, 10); ++K) {
    fmts.push_back(make_format(K, 1, Signedness::Unsigned, Domain::Extended));
    fmts.push_back(make_format(K, 2, Signedness::Unsigned, Domain::Extended));
    fmts.push_back(make_format(K, 1, Signedness::Unsigned, Domain::Finite));
  }
  return per_format(
      "emax-errata", "unsigned P=1/P=2 emax cases; inf slot 2^K-2", fmts, opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const std::int64_t dflt = (std::int64_t{1} << c.exp_width) - 1 - c.bias;
        const json in{{"format", f.str()}, {"emax", c.emax}};
        if (f.is_extended() && f.P == 1)
          cell.expect(c.emax == dflt - 2 && c.emax != dflt,
                      "unsigned extended P=1: emax = 2^W-3-B", in.dump());
        if (f.is_extended() && f.P == 2)
          cell.expect(c.emax == dflt - 1 && c.emax != dflt,
                      "unsigned extended P=2: emax = 2^W-2-B", in.dump());
        if (!f.is_extended() && f.P == 1)
          cell.expect(c.emax == dflt - 1,
                      "unsigned finite P=1: emax = 2^W-2-B", in.dump());
        if (f.is_extended()) {
          const std::uint64_t slot = (std::uint64_t{1} << f.K) - 2;
          cell.expect(encode_bits(f, Value::inf(false)) == slot,
                      "+inf encodes as 2^K-2", in.dump());
          cell.expect(decode(f, slot) == Value::inf(false),
                      "2^K-2 decodes to +inf", in.dump());
        }
      });
}

// ---- codec suites --------------------------------------------------------

std::vector<Report> suite_phi_injective(const SuiteOptions& opts) {
  return per_format(
      "phi-injective", "all encodings decode to distinct values",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const std::uint64_t full = std::uint64_t{1} << f.K;
        std::vector<std::pair<Value, std::uint64_t>> seen;
        seen.reserve(full);
        for (std::uint64_t n = 0; n < full; ++n) seen.emplace_back(decode(f, n), n);
        std::sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) {
          if (value_total_less(a.first, b.first)) return true;
          if (value_total_less(b.first, a.first)) return false;
          return a.second < b.second;
        });
        for (std::uint64_t n = 0; n < full; ++n) {
          const bool dup = n > 0 && seen[n].first == seen[n - 1].first;
          cell.expect(!dup, "two encodings decode equal",
                      json{{"format", f.str()},
                           {"n1", n > 0 ? seen[n - 1].second : 0},
                           {"n2", seen[n].second}}
                          .dump());
        }
      });
}

std::vector<Report> suite_phi_roundtrip(const SuiteOptions& opts) {
  return per_format(
      "phi-roundtrip", "encode_bits∘decode = id and decode∘encode_bits = id",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const std::uint64_t full = std::uint64_t{1} << f.K;
        for (std::uint64_t n = 0; n < full; ++n) {
          const Value v = decode(f, n);
          cell.expect(is_valid(f, v), "decode yields a valid value",
                      pair_inputs(f, n).dump());
          cell.expect(encode_bits(f, v) == n, "encode_bits(decode(n)) == n",
                      pair_inputs(f, n).dump());
        }
        for (const Value& v : all_values(f)) {
          const std::uint64_t n = encode_bits(f, v);
          cell.expect(n < full && decode(f, n) == v,
                      "decode(encode_bits(v)) == v",
                      json{{"format", f.str()}, {"value", v.str()}}.dump());
        }
      });
}

std::vector<Report> suite_phi_reduction(const SuiteOptions& opts) {
  return per_format(
      "phi-reduction", "negate(decode(n)) = decode(n + 2^(K-1)) on 0<n<2^(K-1)",
      signed_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const std::uint64_t half = std::uint64_t{1} << (f.K - 1);
        for (std::uint64_t n = 1; n < half; ++n)
          cell.expect(negate(decode(f, n)) == decode(f, n + half),
                      "reduction identity", pair_inputs(f, n).dump());
      });
}

std::vector<Report> suite_region_disjointness(const SuiteOptions& opts) {
  return per_format(
      "region-disjointness", "NaN/inf/finite and normal/subnormal regions disjoint",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        const std::uint64_t full = std::uint64_t{1} << f.K;
        const std::uint64_t half = full >> 1;
        const std::int64_t lead = std::int64_t{1} << (f.P - 1);
        std::uint64_t nans = 0, infs = 0;
        for (std::uint64_t n = 0; n < full; ++n) {
          const Value v = decode(f, n);
          if (v.is_nan()) ++nans;
          if (v.is_inf()) ++infs;
          if (!v.is_finite()) continue;
          const std::int64_t m = v.significand();
          const std::int64_t mag = m < 0 ? -m : m;
          if (f.is_signed()) {
            cell.expect(n < half ? m >= 0 : m < 0,
                        "sign region matches encoding half",
                        pair_inputs(f, n).dump());
          }
          const bool subnormal = mag < lead;
          const bool normal = mag >= lead;
          cell.expect(subnormal != normal, "normal xor subnormal",
                      pair_inputs(f, n).dump());
          if (subnormal)
            cell.expect(v.exponent() == c.emin_lsb,
                        "subnormals pinned to emin_lsb", pair_inputs(f, n).dump());
        }
        cell.expect(nans == 1, "exactly one NaN",
                    json{{"format", f.str()}, {"count", nans}}.dump());
        const std::uint64_t expected_infs =
            f.is_extended() ? (f.is_signed() ? 2 : 1) : 0;
        cell.expect(infs == expected_infs, "infinity count",
                    json{{"format", f.str()}, {"count", infs}}.dump());
      });
}

std::vector<Report> suite_differential_decode(const SuiteOptions& opts) {
  return per_format(
      "differential-decode", "decode == decode_reference on every encoding",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const std::uint64_t full = std::uint64_t{1} << f.K;
        for (std::uint64_t n = 0; n < full; ++n) {
          const Value a = decode(f, n);
          const Value b = decode_reference(f, n);
          cell.expect(
              a == b, [] { return std::string("decoder mismatch"); },
              [&] { return pair_inputs(f, n).dump(); },
              [&] {
                return json{{"decode", a.str()}, {"reference", b.str()}}.dump();
              });
        }
      });
}

// ---- model suites --------------------------------------------------------

std::vector<Report> suite_eval_injective(const SuiteOptions& opts) {
  return per_format(
      "eval-injective", "no two valid values evaluate equal; counts match",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const std::vector<Value> vs = all_values(f);
        const std::uint64_t full = std::uint64_t{1} << f.K;
        cell.expect(vs.size() == full, "value count is 2^K",
                    json{{"format", f.str()}, {"count", vs.size()}}.dump());
        std::vector<std::pair<XReal, std::size_t>> evals;
        evals.reserve(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i)
          evals.emplace_back(eval(f, vs[i]), i);
        std::sort(evals.begin(), evals.end(), [](const auto& a, const auto& b) {
          return xreal_total_less(a.first, b.first);
        });
        for (std::size_t i = 1; i < evals.size(); ++i)
          cell.expect(!(evals[i].first == evals[i - 1].first),
                      "two distinct values evaluate equal",
                      json{{"format", f.str()},
                           {"v1", vs[evals[i - 1].second].str()},
                           {"v2", vs[evals[i].second].str()}}
                          .dump());
      });
}

std::vector<Report> suite_round_trip_identity(const SuiteOptions& opts) {
  return per_format(
      "round-trip-identity", "encode_value(eval(v)) == v for every valid value",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        for (const Value& v : all_values(f))
          cell.expect(encode_value(f, eval(f, v)) == v, "round-trip identity",
                      json{{"format", f.str()}, {"value", v.str()}}.dump());
      });
}

std::vector<Report> suite_canonical_codec_agreement(const SuiteOptions& opts) {
  return per_format(
      "canonical-codec-agreement", "validity predicate == decode image",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const DerivedConstants c = derive(f);
        std::set<std::pair<std::int64_t, std::int64_t>> image;
        const std::uint64_t full = std::uint64_t{1} << f.K;
        for (std::uint64_t n = 0; n < full; ++n) {
          const Value v = decode(f, n);
          if (v.is_finite()) image.insert({v.significand(), v.exponent()});
        }
        const std::int64_t mspan = std::int64_t{1} << f.P;
        for (std::int64_t e = c.emin_lsb - 2; e <= c.emax_lsb + 2; ++e)
          for (std::int64_t m = -mspan - 1; m <= mspan + 1; ++m) {
            const bool valid = is_valid(f, Value::finite(m, e));
            const bool in_image = image.count({m, e}) > 0;
            cell.expect(valid == in_image,
                        "canonical (m,e) iff bit-codec reaches it",
                        json{{"format", f.str()}, {"m", m}, {"e", e}}.dump());
          }
      });
}

std::vector<Report> suite_lattice_codec_agreement(const SuiteOptions& opts) {
  return per_format(
      "lattice-codec-agreement", "sorted codec finites == value lattice",
      all_formats(3, effective_kmax(opts, 8)), opts,
      [](Cell& cell, const Format& f) {
        const ValueLattice lat(f);
        std::vector<Dyadic> direct;
        for (const Value& v : all_values(f))
          if (v.is_finite()) direct.push_back(eval(f, v).finite());
        std::sort(direct.begin(), direct.end());
        cell.expect(direct.size() == lat.finites().size(), "lattice size",
                    json{{"format", f.str()}, {"size", direct.size()}}.dump());
        const std::size_t n = std::min(direct.size(), lat.finites().size());
        for (std::size_t i = 0; i < n; ++i)
          cell.expect(direct[i] == lat.finites()[i], "lattice element mismatch",
                      json{{"format", f.str()}, {"index", i}}.dump());
        const std::uint64_t reserved =
            f.is_extended() ? (f.is_signed() ? 3 : 2) : 1;
        cell.expect(lat.finites().size() ==
                        (std::uint64_t{1} << f.K) - reserved,
                    "lattice size is 2^K - reserved",
                    json{{"format", f.str()}}.dump());
      });
}

std::vector<Report> suite_triangle(const SuiteOptions& opts) {
  // Umbrella: the two codec bijection suites plus the two semantic ones.
  std::vector<Report> out;
  for (auto* fn : {&suite_phi_injective, &suite_phi_roundtrip,
                   &suite_eval_injective, &suite_round_trip_identity}) {
    for (Report& r : (*fn)(opts)) {
      r.spec = r.suite + ": " + r.spec;
      r.suite = "triangle-isomorphism";
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

// Implemented in suites_rounding.cpp / suites_algorithms.cpp.
namespace detail {
std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>>
rounding_suites();
std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>>
algorithm_suites();
}  // namespace detail

namespace {

using SuiteMap =
    std::map<std::string, std::function<std::vector<Report>(const SuiteOptions&)>>;

const SuiteMap& registry() {
  static const SuiteMap map = [] {
    SuiteMap m{
        {"emax-consistency", suite_emax_consistency},
        {"reserved-encodings", suite_reserved_encodings},
        {"emax-errata", suite_emax_errata},
        {"phi-injective", suite_phi_injective},
        {"phi-roundtrip", suite_phi_roundtrip},
        {"phi-reduction", suite_phi_reduction},
        {"region-disjointness", suite_region_disjointness},
        {"differential-decode", suite_differential_decode},
        {"eval-injective", suite_eval_injective},
        {"round-trip-identity", suite_round_trip_identity},
        {"canonical-codec-agreement", suite_canonical_codec_agreement},
        {"lattice-codec-agreement", suite_lattice_codec_agreement},
        {"triangle-isomorphism", suite_triangle},
    };
    for (auto& [k, v] : detail::rounding_suites()) m.emplace(k, v);
    for (auto& [k, v] : detail::algorithm_suites()) m.emplace(k, v);
    return m;
  }();
  return map;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : registry()) v.push_back(k);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return names;
}

bool is_suite_name(const std::string& name) { return registry().count(name) > 0; }

std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw Error("unknown suite '" + name + "'");
  return it->second(opts);
}

std::vector<Report> run_all_suites(const SuiteOptions& opts) {
  std::vector<Report> out;
  std::vector<std::string> fts;
  for (const std::string& name : suite_names()) {
    if (name.rfind("fts-", 0) == 0) {
      fts.push_back(name);
      continue;
    }
    if (name == "triangle-isomorphism") continue;  // umbrella of other suites
    auto reports = run_suite(name, opts);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  auto shared = run_fts_family(opts, fts);
  out.insert(out.end(), shared.begin(), shared.end());
  return out;
}

std::uint64_t total_failures(const std::vector<Report>& reports) {
  std::uint64_t n = 0;
  for (const Report& r : reports) n += r.failure_count;
  return n;
}

std::string summarize(const std::vector<Report>& reports) {
  struct Agg {
    std::uint64_t cases = 0, failures = 0, cells = 0;
    double ms = 0;
  };
  std::map<std::string, Agg> by_suite;
  std::vector<std::string> order;
  for (const Report& r : reports) {
    if (by_suite.find(r.suite) == by_suite.end()) order.push_back(r.suite);
    Agg& a = by_suite[r.suite];
    a.cases += r.cases;
    a.failures += r.failure_count;
    a.cells += 1;
    a.ms += r.ms;
  }
  std::ostringstream os;
  for (const std::string& s : order) {
    const Agg& a = by_suite[s];
    os << (a.failures == 0 ? "PASS " : "FAIL ") << s << ": " << a.cells
       << " formats, " << a.cases << " cases, " << a.failures << " failures, "
       << static_cast<std::uint64_t>(a.ms) << " ms\n";
  }
  return os.str();
}

}  // namespace p3109
