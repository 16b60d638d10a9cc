#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include <json.hpp>

#include "p3109/codec.hpp"
#include "p3109/errors.hpp"
#include "p3109/suites.hpp"

using namespace p3109;

namespace {

// Coverage gate: every verification suite must stay registered.  This list
// is maintained by hand; a registry change has to be mirrored here.
const std::set<std::string> kExpectedSuites = {
    "emax-consistency", "reserved-encodings", "emax-errata",
    "phi-injective", "phi-roundtrip", "phi-reduction", "region-disjointness",
    "differential-decode",
    "eval-injective", "round-trip-identity", "canonical-codec-agreement",
    "lattice-codec-agreement", "triangle-isomorphism",
    "rounding-faithful", "rounding-exact", "rounding-monotonic",
    "rounding-weak-monotonic", "rounding-carry", "rne-p1-ties", "rne-nearest",
    "project-identity", "project-faith", "project-overflow-image",
    "project-closure",
    "fts-exact-z", "fts-delta-in-f", "fts-eft", "fts-faith",
    "fts-overflow-immune", "fts-overflow-exact",
    "extract-scalar-abcd", "extract-scalar-d-p1",
};

SuiteOptions small() {
  SuiteOptions o;
  o.kmax = 4;
  return o;
}

}  // namespace

TEST_CASE("registry is complete against the static suite list") {
  const auto& names = suite_names();
  const std::set<std::string> got(names.begin(), names.end());
  CHECK(got == kExpectedSuites);
  for (const std::string& name : kExpectedSuites) CHECK(is_suite_name(name));
  CHECK_FALSE(is_suite_name("bogus"));
  CHECK_THROWS_AS(run_suite("bogus", small()), Error);
}

TEST_CASE("format range helpers") {
  CHECK(all_formats(3, 8).size() == 120);
  CHECK(all_formats(3, 3).size() == 10);
  CHECK(signed_formats(3, 6).size() == 28);
  for (const Format& f : signed_formats(3, 6)) CHECK(f.is_signed());
}

TEST_CASE("small clean runs pass") {
  for (const char* name : {"phi-injective", "differential-decode", "rne-p1-ties",
                           "project-faith", "extract-scalar-abcd"}) {
    const auto reports = run_suite(name, small());
    CHECK(reports.size() > 0);
    CHECK(total_failures(reports) == 0);
    for (const Report& r : reports) CHECK(r.passed());
  }
}

TEST_CASE("fts family shares one sweep across suites") {
  const auto reports =
      run_fts_family(small(), {"fts-eft", "fts-faith", "fts-overflow-exact"});
  std::set<std::string> suites;
  std::set<std::string> formats;
  for (const Report& r : reports) {
    suites.insert(r.suite);
    formats.insert(r.format);
    CHECK(r.passed());
  }
  CHECK(suites == std::set<std::string>{"fts-eft", "fts-faith", "fts-overflow-exact"});
  CHECK(formats.size() == signed_formats(3, 4).size());
  CHECK_THROWS_AS(run_fts_family(small(), {"fts-nope"}), Error);
}

TEST_CASE("the P=1 extract sweep emits witnesses") {
  const auto reports = run_suite("extract-scalar-d-p1", small());
  CHECK(total_failures(reports) == 0);
  bool witnessed = false;
  for (const Report& r : reports)
    if (!r.notes.empty()) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("mutations make the suites fail") {
  for (const auto m : {testing::Mutation::NanSlot, testing::Mutation::InfSlot,
                       testing::Mutation::Bias}) {
    testing::ScopedMutation guard(m);
    std::uint64_t failures = 0;
    for (const char* name : {"differential-decode", "phi-roundtrip"})
      failures += total_failures(run_suite(name, small()));
    CHECK(failures > 0);
  }
  // and they are fully reverted
  CHECK(total_failures(run_suite("differential-decode", small())) == 0);
}

TEST_CASE("report JSON carries the schema fields") {
  const auto reports = run_suite("emax-errata", small());
  REQUIRE(!reports.empty());
  const auto j = nlohmann::json::parse(reports[0].to_json());
  for (const char* key : {"suite", "format", "spec", "cases", "failures", "ms"})
    CHECK(j.contains(key));
  CHECK(j["failures"].is_array());

  // failure entries carry inputs/trace/violated
  testing::ScopedMutation guard(testing::Mutation::Bias);
  const auto bad = run_suite("differential-decode", small());
  bool checked = false;
  for (const Report& r : bad)
    if (!r.failures.empty()) {
      const auto fj = nlohmann::json::parse(r.to_json());
      const auto& f0 = fj["failures"][0];
      CHECK(f0.contains("inputs"));
      CHECK(f0.contains("trace"));
      CHECK(f0.contains("violated"));
      checked = true;
      break;
    }
  CHECK(checked);
}

TEST_CASE("recorded failures are capped but counted in full") {
  testing::ScopedMutation guard(testing::Mutation::Bias);
  SuiteOptions o = small();
  o.max_recorded_failures = 2;
  const auto reports = run_suite("differential-decode", o);
  for (const Report& r : reports) {
    CHECK(r.failures.size() <= 2);
    if (r.failure_count > 2) CHECK(r.failures.size() == 2);
  }
  CHECK(total_failures(reports) > 0);
}
