#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "p3109/projection.hpp"
#include "p3109/value.hpp"

namespace p3109 {

/// Addition/subtraction as projections of the exact extended-real result.
Value fp_add(const Format& f, const Value& a, const Value& b,
             const ProjectionSpec& spec, EntropySource* ent = nullptr);
Value fp_sub(const Format& f, const Value& a, const Value& b,
             const ProjectionSpec& spec, EntropySource* ent = nullptr);

/// Full intermediate record of one FastTwoSum run:
///   s = project1(a + b),  z = project2(s - a),  t = project3(b - z)
/// exact_sum and delta (= a + b - s, exactly) are carried for analysis.
struct FtsTrace {
  Value a = Value::nan();
  Value b = Value::nan();
  Value s = Value::nan();
  Value z = Value::nan();
  Value t = Value::nan();
  XReal exact_sum;
  XReal delta;
  std::array<ProjectionSpec, 3> specs;

  std::string to_json() const;
};

/// Runs FastTwoSum.  Requires a signed format and finite operands; throws
/// PreconditionViolation otherwise.
FtsTrace fast_two_sum(const Format& f, const Value& a, const Value& b,
                      const ProjectionSpec& spec1, const ProjectionSpec& spec2,
                      const ProjectionSpec& spec3, EntropySource* ent = nullptr);

/// Full intermediate record of one ExtractScalar run (rounding fixed to
/// rne):
///   s = project(sigma + x), x_high = project(s - sigma),
///   x_low = project(x - x_high)
/// sigma must be 2^i; j_max is the largest j with |x| <= 2^-j sigma
/// (unbounded for x = 0, hence optional; may be negative when |x| > sigma).
struct EsTrace {
  Value sigma = Value::nan();
  Value x = Value::nan();
  Value s = Value::nan();
  Value x_high = Value::nan();
  Value x_low = Value::nan();
  std::int64_t i = 0;
  std::optional<std::int64_t> j_max;
  std::array<SatMode, 3> sats{};

  std::string to_json() const;
};

/// Runs ExtractScalar.  Requires a signed format, finite x, and a finite
/// positive power of two for sigma; throws PreconditionViolation otherwise.
EsTrace extract_scalar(const Format& f, const Value& sigma, const Value& x,
                       SatMode sat1, SatMode sat2, SatMode sat3);

}  // namespace p3109
