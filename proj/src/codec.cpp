#include "p3109/codec.hpp"

#include <atomic>
#include <ostream>

#include <json.hpp>

#include "p3109/errors.hpp"

namespace p3109 {

namespace {

std::atomic<testing::Mutation> g_mutation{testing::Mutation::None};

// The three documented codec constants (NaN slot, infinity slot, bias) as
// seen by decode.  Mutations perturb exactly one of them, and only here:
// encode_bits, decode_reference, and derive stay honest so the harness
// must notice.
std::uint64_t nan_slot(const Format& f) {
  std::uint64_t slot = f.is_signed() ? std::uint64_t{1} << (f.K - 1)
                                     : (std::uint64_t{1} << f.K) - 1;
  if (g_mutation.load(std::memory_order_relaxed) == testing::Mutation::NanSlot)
    slot ^= 1;
  return slot;
}

std::uint64_t pos_inf_slot(const Format& f) {
  std::uint64_t slot = f.is_signed() ? (std::uint64_t{1} << (f.K - 1)) - 1
                                     : (std::uint64_t{1} << f.K) - 2;
  if (g_mutation.load(std::memory_order_relaxed) == testing::Mutation::InfSlot)
    slot -= 1;
  return slot;
}

std::int64_t decode_bias(const DerivedConstants& c) {
  std::int64_t b = c.bias;
  if (g_mutation.load(std::memory_order_relaxed) == testing::Mutation::Bias)
    b += 1;
  return b;
}

// Finite region: split the encoding into raw exponent field and trailing
// significand at bit P-1.
Value decode_fin(const Format& f, const DerivedConstants& c, std::uint64_t n) {
  const std::uint64_t e_raw = n >> (f.P - 1);
  const std::uint64_t trailing = n & ((std::uint64_t{1} << (f.P - 1)) - 1);
  if (e_raw == 0)
    return Value::finite(static_cast<std::int64_t>(trailing), c.emin_lsb);
  const std::int64_t m = static_cast<std::int64_t>(trailing) + (std::int64_t{1} << (f.P - 1));
  const std::int64_t e = static_cast<std::int64_t>(e_raw) - decode_bias(c) - f.P + 1;
  return Value::finite(m, e);
}

}  // namespace

Value decode(const Format& f, std::uint64_t n) {
  const std::uint64_t full = std::uint64_t{1} << f.K;
  if (n >= full)
    throw OutOfRange("encoding " + std::to_string(n) + " out of range for " + f.str());
  const DerivedConstants c = derive(f);

  if (f.is_signed()) {
    const std::uint64_t half = full >> 1;
    if (n == nan_slot(f)) return Value::nan();
    if (f.is_extended()) {
      if (n == pos_inf_slot(f)) return Value::inf(false);
      if (n == full - 1) return Value::inf(true);
    }
    if (n < half) return decode_fin(f, c, n);
    return negate(decode_fin(f, c, n - half));
  }

  if (n == nan_slot(f)) return Value::nan();
  if (f.is_extended() && n == pos_inf_slot(f)) return Value::inf(false);
  return decode_fin(f, c, n);
}

std::uint64_t encode_bits(const Format& f, const Value& v) {
  if (!is_valid(f, v))
    throw InvalidValue("value " + v.str() + " is not valid for " + f.str());
  const DerivedConstants c = derive(f);
  const std::uint64_t full = std::uint64_t{1} << f.K;

  switch (v.kind()) {
    case Value::Kind::NaN:
      return f.is_signed() ? full >> 1 : full - 1;
    case Value::Kind::Inf:
      if (v.negative()) return full - 1;
      return f.is_signed() ? (full >> 1) - 1 : full - 2;
    case Value::Kind::Finite:
      break;
  }

  const std::int64_t m = v.significand();
  const std::int64_t mag = m < 0 ? -m : m;
  const std::int64_t lead = std::int64_t{1} << (f.P - 1);
  std::uint64_t n;
  if (mag < lead) {
    n = static_cast<std::uint64_t>(mag);  // subnormal: the encoding is m itself
  } else {
    n = static_cast<std::uint64_t>((mag - lead) +
                                   (v.exponent() + f.P - 1 + c.bias) * lead);
  }
  if (m < 0) n += full >> 1;
  return n;
}

std::vector<TableRow> enumerate(const Format& f) {
  if (f.K > 16)
    throw FormatTooLarge("enumerate is guarded to K <= 16 (got K=" +
                         std::to_string(f.K) + ")");
  const std::uint64_t full = std::uint64_t{1} << f.K;
  std::vector<TableRow> rows;
  rows.reserve(full);
  for (std::uint64_t n = 0; n < full; ++n) {
    const Value v = decode(f, n);
    rows.push_back(TableRow{n, v, eval(f, v)});
  }
  return rows;
}

std::string to_binary(const Format& f, std::uint64_t n) {
  std::string s(static_cast<std::size_t>(f.K), '0');
  for (int i = 0; i < f.K; ++i)
    if ((n >> i) & 1) s[static_cast<std::size_t>(f.K - 1 - i)] = '1';
  return s;
}

namespace {

struct RowFields {
  std::string cls, m, e, value;
};

RowFields row_fields(const TableRow& r) {
  RowFields out;
  switch (r.value.kind()) {
    case Value::Kind::NaN:
      out.cls = "nan";
      out.value = "nan";
      break;
    case Value::Kind::Inf:
      out.cls = "inf";
      out.value = r.value.negative() ? "-inf" : "+inf";
      break;
    case Value::Kind::Finite:
      out.cls = "finite";
      out.m = std::to_string(r.value.significand());
      out.e = std::to_string(r.value.exponent());
      out.value = r.real.finite().to_decimal_string();
      break;
  }
  return out;
}

}  // namespace

void write_table_csv(std::ostream& os, const Format& f) {
  os << "encoding,binary,class,m,e,value\n";
  for (const TableRow& r : enumerate(f)) {
    const RowFields x = row_fields(r);
    os << r.encoding << ',' << to_binary(f, r.encoding) << ',' << x.cls << ','
       << x.m << ',' << x.e << ',' << x.value << '\n';
  }
}

void write_table_jsonl(std::ostream& os, const Format& f) {
  for (const TableRow& r : enumerate(f)) {
    const RowFields x = row_fields(r);
    nlohmann::json j{{"encoding", r.encoding},
                     {"binary", to_binary(f, r.encoding)},
                     {"class", x.cls}};
    if (r.value.is_finite()) {
      j["m"] = x.m;
      j["e"] = r.value.exponent();
    }
    j["value"] = x.value;
    os << j.dump() << '\n';
  }
}

namespace testing {

void set_mutation(Mutation m) { g_mutation.store(m, std::memory_order_relaxed); }
Mutation mutation() { return g_mutation.load(std::memory_order_relaxed); }

}  // namespace testing

}  // namespace p3109
