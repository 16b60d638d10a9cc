// Acceptance gate: every release-blocking criterion with its tolerance and
// runtime budget pinned in code.  Prints one PASS/FAIL line per criterion
// and exits nonzero if any fail.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "p3109/algorithms.hpp"
#include "p3109/codec.hpp"
#include "p3109/suites.hpp"

using namespace p3109;

namespace {

int g_criterion = 0;
int g_failures = 0;

struct Outcome {
  bool ok = true;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string detail;
};

void run(const char* name, double budget_seconds, Outcome (*body)()) {
  ++g_criterion;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out = body();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = budget_seconds <= 0 || secs < budget_seconds;
  const bool pass = out.ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%d/8] %s %s: %llu cases, %llu failures%s%s (%.1f s%s)\n",
              g_criterion, pass ? "PASS" : "FAIL", name,
              static_cast<unsigned long long>(out.cases),
              static_cast<unsigned long long>(out.failures),
              out.detail.empty() ? "" : ", ", out.detail.c_str(), secs,
              in_budget ? "" : " OVER BUDGET");
  std::fflush(stdout);
}

Outcome from_reports(const std::vector<Report>& reports) {
  Outcome out;
  for (const Report& r : reports) {
    out.cases += r.cases;
    out.failures += r.failure_count;
  }
  out.ok = out.failures == 0;
  return out;
}

Outcome criterion_triangle() {
  SuiteOptions o;
  o.kmax = 8;
  auto reports = run_suite("triangle-isomorphism", o);
  Outcome out = from_reports(reports);
  std::set<std::string> formats;
  for (const Report& r : reports) formats.insert(r.format);
  out.detail = std::to_string(formats.size()) + " formats";
  return out;
}

Outcome criterion_differential() {
  SuiteOptions o;
  o.kmax = 8;
  return from_reports(run_suite("differential-decode", o));
}

Outcome criterion_emax_errata() {
  SuiteOptions o;
  o.kmax = 10;
  Outcome out = from_reports(run_suite("emax-errata", o));
  // Pin the quoted identities directly as well.
  for (int K = 3; K <= 10; ++K) {
    const auto ue1 = derive(make_format(K, 1, Signedness::Unsigned, Domain::Extended));
    const auto ue2 = derive(make_format(K, 2, Signedness::Unsigned, Domain::Extended));
    const std::int64_t w1 = std::int64_t{1} << ue1.exp_width;
    const std::int64_t w2 = std::int64_t{1} << ue2.exp_width;
    out.cases += 4;
    if (ue1.emax != w1 - 3 - ue1.bias || ue1.emax == w1 - 1 - ue1.bias) {
      out.ok = false;
      ++out.failures;
    }
    if (ue2.emax != w2 - 2 - ue2.bias) {
      out.ok = false;
      ++out.failures;
    }
    const Format ue = make_format(K, 2, Signedness::Unsigned, Domain::Extended);
    const std::uint64_t inf_slot = (std::uint64_t{1} << K) - 2;
    if (encode_bits(ue, Value::inf(false)) != inf_slot) {
      out.ok = false;
      ++out.failures;
    }
    if (!(decode(ue, inf_slot) == Value::inf(false))) {
      out.ok = false;
      ++out.failures;
    }
  }
  return out;
}

Outcome criterion_projection() {
  SuiteOptions o;
  o.kmax = 6;
  auto reports = run_suite("project-identity", o);
  auto faith = run_suite("project-faith", o);
  reports.insert(reports.end(), faith.begin(), faith.end());
  return from_reports(reports);
}

Outcome criterion_fts() {
  SuiteOptions o;
  o.kmax = 6;
  return from_reports(run_fts_family(
      o, {"fts-exact-z", "fts-delta-in-f", "fts-eft", "fts-faith",
          "fts-overflow-immune", "fts-overflow-exact"}));
}

Outcome criterion_extract() {
  SuiteOptions o;
  o.kmax = 6;
  Outcome out = from_reports(run_suite("extract-scalar-abcd", o));
  const auto p1 = run_suite("extract-scalar-d-p1", o);
  for (const Report& r : p1) {
    out.cases += r.cases;
    out.failures += r.failure_count;
  }
  std::uint64_t witnesses = 0;
  std::string example;
  for (const Report& r : p1) {
    witnesses += r.notes.size();
    if (example.empty() && !r.notes.empty()) example = r.notes.front();
  }
  if (witnesses == 0 || out.failures != 0) out.ok = false;
  out.detail = "P=1 witnesses recorded: " + std::to_string(witnesses);
  if (!example.empty()) out.detail += ", e.g. " + example;
  return out;
}

Outcome criterion_p1_ties() {
  SuiteOptions o;
  o.kmax = 8;
  return from_reports(run_suite("rne-p1-ties", o));
}

Outcome criterion_mutation() {
  Outcome out;
  const testing::Mutation muts[] = {testing::Mutation::NanSlot,
                                    testing::Mutation::InfSlot,
                                    testing::Mutation::Bias};
  const char* names[] = {"nan-slot", "inf-slot", "bias"};
  for (int i = 0; i < 3; ++i) {
    testing::ScopedMutation guard(muts[i]);
    SuiteOptions o;
    o.kmax = 5;
    std::uint64_t failures = 0;
    std::uint64_t cases = 0;
    for (const char* suite : {"differential-decode", "phi-roundtrip"}) {
      for (const Report& r : run_suite(suite, o)) {
        failures += r.failure_count;
        cases += r.cases;
      }
    }
    out.cases += cases;
    if (failures == 0) {
      out.ok = false;
      ++out.failures;
      out.detail += std::string(out.detail.empty() ? "" : "; ") + names[i] +
                    " mutation went undetected";
    }
  }
  // clean rerun must pass again
  SuiteOptions o;
  o.kmax = 5;
  if (total_failures(run_suite("differential-decode", o)) != 0) {
    out.ok = false;
    ++out.failures;
    out.detail += "; mutation state leaked";
  }
  return out;
}

}  // namespace

int main() {
  run("triangle isomorphism (K<=8)", 30.0, criterion_triangle);
  run("differential decode (K<=8)", 0.0, criterion_differential);
  run("emax errata regression (K<=10)", 0.0, criterion_emax_errata);
  run("projection identity+faithfulness (K<=6, sr all draws)", 60.0,
      criterion_projection);
  run("FastTwoSum suites (K<=6, exhaustive pairs)", 120.0, criterion_fts);
  run("ExtractScalar (a)-(d) and P=1 witness", 0.0, criterion_extract);
  run("P=1 rne tie rule (K<=8)", 0.0, criterion_p1_ties);
  run("mutation sanity (nan/inf/bias)", 0.0, criterion_mutation);
  if (g_failures != 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all 8 criteria passed\n");
  return 0;
}
