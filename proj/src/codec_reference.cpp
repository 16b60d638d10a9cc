// Reference decoder for differential testing.
//
// Written directly from the field-layout description of the encodings:
// an optional sign bit on top, then a W-bit biased exponent field, then
// P-1 trailing significand bits, with the special-value slots looked up
// from the published table.  Kept deliberately separate from codec.cpp;
// see CONTRIBUTING.md before touching either file.

#include <cstdint>

#include "p3109/codec.hpp"
#include "p3109/errors.hpp"

namespace p3109 {

Value decode_reference(const Format& f, std::uint64_t n) {
  const std::uint64_t all = (std::uint64_t{1} << f.K) - 1;
  if (n > all)
    throw OutOfRange("encoding " + std::to_string(n) + " out of range for " + f.str());

  const bool has_sign_bit = f.s == Signedness::Signed;
  const std::uint64_t sign_mask = has_sign_bit ? (all >> 1) + 1 : 0;

  // Special-value slots per the standard's table.
  if (has_sign_bit) {
    if (n == sign_mask) return Value::nan();  // the would-be -0 pattern
    if (f.d == Domain::Extended) {
      if (n == sign_mask - 1) return Value::inf(false);
      if (n == all) return Value::inf(true);
    }
  } else {
    if (n == all) return Value::nan();
    if (f.d == Domain::Extended && n == all - 1) return Value::inf(false);
  }

  const bool neg = has_sign_bit && (n & sign_mask) != 0;
  const std::uint64_t magnitude = has_sign_bit ? n & (sign_mask - 1) : n;

  // Bias from the format parameters: 2^(K-P-1) signed, 2^(K-P) unsigned.
  const std::int64_t bias = std::int64_t{1} << (has_sign_bit ? f.K - f.P - 1 : f.K - f.P);
  const std::int64_t lowest = 1 - bias;  // smallest MSB exponent

  const std::uint64_t frac_mask = (std::uint64_t{1} << (f.P - 1)) - 1;
  const std::uint64_t exp_field = magnitude >> (f.P - 1);
  const std::int64_t frac = static_cast<std::int64_t>(magnitude & frac_mask);

  std::int64_t sig, e_msb;
  if (exp_field == 0) {
    // Subnormal: no implicit bit, pinned to the lowest exponent.
    sig = frac;
    e_msb = lowest;
  } else {
    sig = frac | (std::int64_t{1} << (f.P - 1));
    e_msb = static_cast<std::int64_t>(exp_field) - bias;
  }
  return Value::finite(neg ? -sig : sig, e_msb - (f.P - 1));
}

}  // namespace p3109
