#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "p3109/dyadic.hpp"

namespace p3109 {

enum class Signedness { Signed, Unsigned };
enum class Domain { Finite, Extended };

/// A P3109 format: bitwidth K, precision P, signedness, domain.
/// Construct through make_format / parse_format so the parameter
/// constraints are always established.
struct Format {
  int K = 0;
  int P = 0;
  Signedness s = Signedness::Signed;
  Domain d = Domain::Extended;

  bool is_signed() const { return s == Signedness::Signed; }
  bool is_extended() const { return d == Domain::Extended; }

  /// Compact name, e.g. "8p4se".
  std::string str() const;

  friend bool operator==(const Format& a, const Format& b) {
    return a.K == b.K && a.P == b.P && a.s == b.s && a.d == b.d;
  }
};

/// Everything computable from the four parameters.
struct DerivedConstants {
  std::int64_t bias = 0;      // 2^(W-1)
  std::int64_t exp_width = 0; // W: K-P signed, K-P+1 unsigned
  std::int64_t emin = 0;      // MSB exponent bounds
  std::int64_t emax = 0;
  std::int64_t emin_lsb = 0;  // LSB exponent bounds
  std::int64_t emax_lsb = 0;
  std::uint64_t n_fmax = 0;   // largest finite encoding in the non-negative region
  std::int64_t m_top = 0;     // largest |significand| admitted at emax_lsb
  Dyadic max_finite;          // M_hi = m_top * 2^emax_lsb
  Dyadic min_finite;          // M_lo = -M_hi if signed, 0 otherwise
};

/// Validates the parameter constraints (K > 2; P > 0; P < K when signed,
/// P <= K when unsigned) and returns the format.  Throws
/// ConstraintViolation naming the violated clause.  K is additionally
/// capped at 62 so derived constants fit machine integers.
Format make_format(int K, int P, Signedness s, Domain d);

DerivedConstants derive(const Format& f);

/// Parses "<K>p<P><s|u><f|e>", e.g. "8p4se".  Throws ParseError.
Format parse_format(std::string_view name);

/// JSON text {"K":int,"P":int,"signed":bool,"extended":bool}.
std::string format_to_json(const Format& f);
Format format_from_json(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Format& f);

}  // namespace p3109
