#include "p3109/value.hpp"

#include <ostream>
#include <tuple>

#include <json.hpp>

#include "p3109/errors.hpp"

namespace p3109 {

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::NaN: return true;
    case Value::Kind::Inf: return a.neg_ == b.neg_;
    case Value::Kind::Finite: return a.m_ == b.m_ && a.e_ == b.e_;
  }
  return false;
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::NaN: return "nan";
    case Kind::Inf: return neg_ ? "-inf" : "+inf";
    case Kind::Finite: break;
  }
  return "fin(" + std::to_string(m_) + "," + std::to_string(e_) + ")";
}

std::string Value::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::NaN:
      j["class"] = "nan";
      break;
    case Kind::Inf:
      j["class"] = "inf";
      j["sign"] = neg_;
      break;
    case Kind::Finite:
      j["class"] = "finite";
      j["m"] = std::to_string(m_);
      j["e"] = e_;
      break;
  }
  return j.dump();
}

Value negate(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::NaN: return Value::nan();
    case Value::Kind::Inf: return Value::inf(!v.negative());
    case Value::Kind::Finite: break;
  }
  return Value::finite(-v.significand(), v.exponent());
}

bool value_total_less(const Value& a, const Value& b) {
  auto key = [](const Value& v) {
    const int rank = v.is_nan() ? 0 : v.is_inf() ? 1 : 2;
    const std::int64_t sign = v.is_inf() && v.negative() ? 1 : 0;
    const std::int64_t m = v.is_finite() ? v.significand() : 0;
    const std::int64_t e = v.is_finite() ? v.exponent() : 0;
    return std::make_tuple(rank, sign, m, e);
  };
  return key(a) < key(b);
}

bool is_canonical(const Format& f, std::int64_t m, std::int64_t e) {
  const DerivedConstants c = derive(f);
  const std::int64_t mag = m < 0 ? -m : m;
  const std::int64_t lead = std::int64_t{1} << (f.P - 1);
  if (mag >= 2 * lead || e < c.emin_lsb) return false;  // not bounded
  if (e == c.emin_lsb && mag < lead) return true;       // subnormal (incl. zero)
  if (mag < lead || e > c.emax_lsb) return false;
  if (e == c.emax_lsb && mag > c.m_top) return false;
  return true;
}

bool is_valid(const Format& f, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::NaN:
      return true;
    case Value::Kind::Inf:
      if (!f.is_extended()) return false;
      return !v.negative() || f.is_signed();
    case Value::Kind::Finite:
      break;
  }
  if (!f.is_signed() && v.significand() < 0) return false;
  return is_canonical(f, v.significand(), v.exponent());
}

XReal eval(const Format&, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::NaN: return XReal::nan();
    case Value::Kind::Inf: return v.negative() ? XReal::neg_inf() : XReal::pos_inf();
    case Value::Kind::Finite: break;
  }
  return XReal(Dyadic(v.significand(), v.exponent()));
}

std::optional<Value> try_encode_value(const Format& f, const XReal& x) {
  const DerivedConstants c = derive(f);
  switch (x.kind()) {
    case XReal::Kind::NaN:
      return Value::nan();
    case XReal::Kind::PosInf:
      if (f.is_extended()) return Value::inf(false);
      return std::nullopt;
    case XReal::Kind::NegInf:
      if (f.is_extended() && f.is_signed()) return Value::inf(true);
      return std::nullopt;
    case XReal::Kind::Finite:
      break;
  }
  const Dyadic& d = x.finite();
  if (d.is_zero()) return Value::finite(0, c.emin_lsb);
  if (!f.is_signed() && d.is_negative()) return std::nullopt;

  const std::int64_t e = std::max(msb_exponent(d), c.emin) - f.P + 1;
  const Dyadic scaled = d.scaled_pow2(-e);
  if (!scaled.is_integer()) return std::nullopt;
  const BigInt mb = scaled.floor();
  // |m| < 2^P always fits: the scaling puts the MSB at bit P-1 or below.
  const std::int64_t m = mb.convert_to<std::int64_t>();
  if (!is_canonical(f, m, e)) return std::nullopt;
  return Value::finite(m, e);
}

bool in_value_set(const Format& f, const XReal& x) {
  return try_encode_value(f, x).has_value();
}

Value encode_value(const Format& f, const XReal& x) {
  if (auto v = try_encode_value(f, x)) return *v;
  throw NotInValueSet("value " + x.str() + " is not representable in " + f.str());
}

std::vector<Value> all_values(const Format& f) {
  const DerivedConstants c = derive(f);
  std::vector<Value> out;
  out.push_back(Value::nan());
  if (f.is_extended()) {
    out.push_back(Value::inf(false));
    if (f.is_signed()) out.push_back(Value::inf(true));
  }
  const std::int64_t m_hi = (std::int64_t{1} << f.P) - 1;
  const std::int64_t m_lo = f.is_signed() ? -m_hi : 0;
  for (std::int64_t e = c.emin_lsb; e <= c.emax_lsb; ++e)
    for (std::int64_t m = m_lo; m <= m_hi; ++m)
      if (is_canonical(f, m, e)) out.push_back(Value::finite(m, e));
  return out;
}

std::int64_t canonical_exponent(const Format& f, const Dyadic& x) {
  const DerivedConstants c = derive(f);
  if (x.is_zero()) return c.emin;
  return std::max(msb_exponent(x), c.emin);
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace p3109
