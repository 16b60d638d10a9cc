#pragma once

// Internal plumbing shared by the suite implementations.

#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "p3109/suites.hpp"

namespace p3109::detail {

/// Accumulates one Report; failure details are built lazily so passing
/// checks stay cheap.
class Cell {
public:
  Cell(std::string suite, std::string format, std::string spec,
       const SuiteOptions& opts)
      : opts_(&opts) {
    rep_.suite = std::move(suite);
    rep_.format = std::move(format);
    rep_.spec = std::move(spec);
  }

  template <typename ViolatedFn, typename InputsFn, typename TraceFn>
  void expect(bool ok, ViolatedFn&& violated, InputsFn&& inputs, TraceFn&& trace) {
    ++rep_.cases;
    if (ok) return;
    ++rep_.failure_count;
    if (rep_.failures.size() < opts_->max_recorded_failures)
      rep_.failures.push_back(Failure{inputs(), trace(), violated()});
  }

  void expect(bool ok, const char* violated, const std::string& inputs) {
    expect(
        ok, [&] { return std::string(violated); }, [&] { return inputs; },
        [] { return std::string(); });
  }

  void count_case() { ++rep_.cases; }
  void note(std::string json) { rep_.notes.push_back(std::move(json)); }

  Report take() && { return std::move(rep_); }
  Report& report() { return rep_; }

private:
  Report rep_;
  const SuiteOptions* opts_;
};

/// Runs `body` once per format, timing each cell and converting stray
/// exceptions into recorded failures.
std::vector<Report> per_format(const std::string& suite, const std::string& spec,
                               const std::vector<Format>& formats,
                               const SuiteOptions& opts,
                               const std::function<void(Cell&, const Format&)>& body);

inline int effective_kmax(const SuiteOptions& opts, int fallback) {
  return opts.kmax > 0 ? opts.kmax : fallback;
}

}  // namespace p3109::detail
