#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "p3109/format.hpp"
#include "p3109/value.hpp"

namespace p3109 {

/// One row of a format's full encoding table.
struct TableRow {
  std::uint64_t encoding = 0;
  Value value = Value::nan();
  XReal real;
};

/// Bit-level decoder: maps an encoding in [0, 2^K) to its Value.
/// Throws OutOfRange.
Value decode(const Format& f, std::uint64_t n);

/// Inverse of decode.  Throws InvalidValue if v is not valid for f.
std::uint64_t encode_bits(const Format& f, const Value& v);

/// Independent decoder written from the field-layout rules (sign bit,
/// biased exponent field, implicit leading bit) for differential testing
/// against decode.  See CONTRIBUTING.md for the independence policy.
Value decode_reference(const Format& f, std::uint64_t n);

/// All 2^K rows in encoding order.  Guarded to K <= 16; throws
/// FormatTooLarge beyond.
std::vector<TableRow> enumerate(const Format& f);

/// K-character binary rendering of an encoding.
std::string to_binary(const Format& f, std::uint64_t n);

/// Table export: CSV columns encoding,binary,class,m,e,value (header row
/// included), or the same rows as JSON lines.
void write_table_csv(std::ostream& os, const Format& f);
void write_table_jsonl(std::ostream& os, const Format& f);

namespace testing {

/// Deliberate single-constant corruptions of decode, used by the
/// verification harness to prove its suites can fail.  Never enabled
/// outside tests and `verify --mutate`.
enum class Mutation { None, NanSlot, InfSlot, Bias };

void set_mutation(Mutation m);
Mutation mutation();

/// RAII: applies a mutation and restores None.
class ScopedMutation {
public:
  explicit ScopedMutation(Mutation m) { set_mutation(m); }
  ~ScopedMutation() { set_mutation(Mutation::None); }
  ScopedMutation(const ScopedMutation&) = delete;
  ScopedMutation& operator=(const ScopedMutation&) = delete;
};

}  // namespace testing

}  // namespace p3109
