#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "p3109/format.hpp"

namespace p3109 {

/// One recorded counterexample.  inputs/trace hold JSON text.
struct Failure {
  std::string inputs;
  std::string trace;
  std::string violated;
};

/// Result of one suite over one format (or "all" for aggregates).
/// failures holds the first few counterexamples; failure_count counts all.
struct Report {
  std::string suite;
  std::string format;
  std::string spec;  // description of the sweep
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;
  std::vector<Failure> failures;
  std::vector<std::string> notes;  // extra JSON records (e.g. found witnesses)
  double ms = 0;

  bool passed() const { return failure_count == 0; }
  /// {"suite","format","spec","cases","failures":[...],"ms",...}
  std::string to_json() const;
};

struct SuiteOptions {
  int kmax = 0;        // 0: per-suite default (6, 8, or 10)
  bool deep = false;   // adds sampled K=7,8 to the operand-pair sweeps
  std::uint64_t seed = 20260810;
  std::size_t max_recorded_failures = 10;
};

/// Names of every registered suite, in run order.  The registry is checked
/// complete against this list by the test suite.
const std::vector<std::string>& suite_names();

bool is_suite_name(const std::string& name);

/// Runs one suite; one Report per format cell.  Throws Error for unknown
/// names.
std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opts);

/// Runs every registered suite.  The FastTwoSum suites share a single
/// operand sweep here instead of repeating it per suite.
std::vector<Report> run_all_suites(const SuiteOptions& opts);

/// Runs any subset of the fts-* suites over one shared operand sweep.
std::vector<Report> run_fts_family(const SuiteOptions& opts,
                                   const std::vector<std::string>& which);

/// Aggregation helper: one line of human-readable summary per suite name.
std::string summarize(const std::vector<Report>& reports);

/// Total failures across reports.
std::uint64_t total_failures(const std::vector<Report>& reports);

// Format range helpers shared by suites, the CLI, and the tests.
std::vector<Format> all_formats(int kmin, int kmax);
std::vector<Format> signed_formats(int kmin, int kmax);

}  // namespace p3109
