#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace p3109 {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binary rational m * 2^e with an arbitrary-precision significand.
///
/// Storage is not kept normalized (the significand may be even); equality
/// and ordering are semantic, defined on the rational value.  The single
/// exception is zero, which is always stored as (0, 0).
class Dyadic {
public:
  Dyadic() = default;
  Dyadic(BigInt significand, std::int64_t exponent);
  Dyadic(long long v) : Dyadic(BigInt(v), 0) {}  // NOLINT: implicit by design

  const BigInt& significand() const { return m_; }
  std::int64_t exponent() const { return e_; }

  bool is_zero() const { return m_.is_zero(); }
  bool is_negative() const { return m_ < 0; }
  /// -1, 0, or +1.
  int signum() const;

  /// Value * 2^k (exact, exponent shift only).
  Dyadic scaled_pow2(std::int64_t k) const;

  /// True iff the value is an integer.
  bool is_integer() const;
  /// Largest integer <= value.
  BigInt floor() const;
  /// Smallest integer >= value.
  BigInt ceil() const;

  /// Equivalent representation with odd significand (or canonical zero).
  Dyadic normalized() const;

  /// Exact decimal rendering, "[-]digits[.digits]" with no trailing
  /// fraction zeros.  Every dyadic terminates in decimal.
  std::string to_decimal_string() const;

  /// Parses "[-]digits[.digits]" or "[-]digits*2^[-]digits".  Throws
  /// ParseError on malformed input or on a decimal that is not a dyadic
  /// rational (e.g. "0.1").  Host float syntax (exponent letters, hex) is
  /// rejected so inputs stay bit-exact.
  static Dyadic parse(std::string_view text);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a);

  /// Semantic three-way comparison: sign of (a - b) as rationals.
  static int compare(const Dyadic& a, const Dyadic& b);

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return compare(a, b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

private:
  BigInt m_;
  std::int64_t e_ = 0;
};

Dyadic abs(const Dyadic& x);

/// floor(log2 |x|), computed exactly as e + bitlength(|m|) - 1.
/// Throws ZeroInput for x = 0.
std::int64_t msb_exponent(const Dyadic& x);

std::ostream& operator<<(std::ostream& os, const Dyadic& x);

/// Closed extended real: a dyadic, +inf, -inf, or NaN.
///
/// Equality is structural (NaN == NaN holds); this models membership in a
/// value set, not IEEE comparison semantics.
class XReal {
public:
  enum class Kind { Finite, PosInf, NegInf, NaN };

  XReal() : kind_(Kind::Finite) {}
  XReal(Dyadic d) : kind_(Kind::Finite), fin_(std::move(d)) {}  // NOLINT
  static XReal pos_inf() { return XReal(Kind::PosInf); }
  static XReal neg_inf() { return XReal(Kind::NegInf); }
  static XReal nan() { return XReal(Kind::NaN); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_nan() const { return kind_ == Kind::NaN; }
  bool is_inf() const { return kind_ == Kind::PosInf || kind_ == Kind::NegInf; }

  /// Finite payload; undefined unless is_finite().
  const Dyadic& finite() const { return fin_; }

  friend XReal operator+(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a, const XReal& b);
  friend XReal operator-(const XReal& a);

  friend bool operator==(const XReal& a, const XReal& b);
  friend bool operator!=(const XReal& a, const XReal& b) { return !(a == b); }

  /// "nan", "+inf", "-inf", or the exact decimal string.
  std::string str() const;

private:
  explicit XReal(Kind k) : kind_(k) {}

  Kind kind_;
  Dyadic fin_;
};

/// Arbitrary total order for containers: -inf < finite < +inf < nan.
bool xreal_total_less(const XReal& a, const XReal& b);

/// Parses what Dyadic::parse accepts, plus "inf", "+inf", "-inf", "nan".
XReal parse_xreal(std::string_view text);

std::ostream& operator<<(std::ostream& os, const XReal& x);

}  // namespace p3109
