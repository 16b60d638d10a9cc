#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "p3109/dyadic.hpp"
#include "p3109/format.hpp"

namespace p3109 {

/// Algebraic P3109 value: NaN, a signed infinity, or a finite pair (m, e)
/// with e attached to the significand's least significant bit.
///
/// The constructors do not validate against a format; producers (decode,
/// encode_value, project) only build valid values, and is_valid() gives the
/// full predicate for checking.
class Value {
public:
  enum class Kind { NaN, Inf, Finite };

  static Value nan() { return Value(Kind::NaN, false, 0, 0); }
  static Value inf(bool negative) { return Value(Kind::Inf, negative, 0, 0); }
  static Value finite(std::int64_t m, std::int64_t e) {
    return Value(Kind::Finite, false, m, e);
  }

  Kind kind() const { return kind_; }
  bool is_nan() const { return kind_ == Kind::NaN; }
  bool is_inf() const { return kind_ == Kind::Inf; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  /// Infinity sign; undefined unless is_inf().
  bool negative() const { return neg_; }
  /// Finite fields; undefined unless is_finite().
  std::int64_t significand() const { return m_; }
  std::int64_t exponent() const { return e_; }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  /// Short rendering for diagnostics, e.g. "fin(14,4)", "+inf".
  std::string str() const;
  /// {"class":"nan"|"inf"|"finite","sign":bool?,"m":string,"e":int}
  std::string to_json() const;

private:
  Value(Kind k, bool neg, std::int64_t m, std::int64_t e)
      : kind_(k), neg_(neg), m_(m), e_(e) {}

  Kind kind_;
  bool neg_;
  std::int64_t m_;
  std::int64_t e_;
};

Value negate(const Value& v);

/// Sort key (kind rank, sign, m, e) for containers; not a numeric order.
bool value_total_less(const Value& a, const Value& b);

/// Canonical finite pair: bounded and either normal or subnormal.
///
/// bounded:    |m| < 2^P  and  emin_lsb <= e
/// subnormal:  bounded, e = emin_lsb, |m| < 2^(P-1)
/// normal:     bounded, |m| >= 2^(P-1), e <= emax_lsb, and at e = emax_lsb
///             the significand also stays at or below m_top (the slots above
///             it encode specials; only formats with P > 1 lose them this
///             way — for P = 1 the emax case analysis already excluded the
///             whole binade).
bool is_canonical(const Format& f, std::int64_t m, std::int64_t e);

/// Full validity: canonical finite pair with the signedness constraint,
/// or a special value the domain admits.
bool is_valid(const Format& f, const Value& v);

/// Semantic evaluation: finite (m, e) -> m * 2^e, specials to themselves.
XReal eval(const Format& f, const Value& v);

/// True iff some valid Value of f evaluates to x.
bool in_value_set(const Format& f, const XReal& x);

/// Inverse of eval on the value set: returns the unique valid Value
/// evaluating to x (normal when |x| >= 2^emin, else subnormal at emin_lsb).
/// Throws NotInValueSet.
Value encode_value(const Format& f, const XReal& x);

/// encode_value that reports failure as nullopt instead of throwing.
std::optional<Value> try_encode_value(const Format& f, const XReal& x);

/// Every valid Value of f, enumerated directly from the validity predicate
/// (not via the bit codec), in a deterministic order.
std::vector<Value> all_values(const Format& f);

/// max(floor(log2 |x|), emin); emin for x = 0.
std::int64_t canonical_exponent(const Format& f, const Dyadic& x);

std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace p3109
