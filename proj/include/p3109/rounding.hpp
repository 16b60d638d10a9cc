#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "p3109/dyadic.hpp"
#include "p3109/format.hpp"

namespace p3109 {

/// Rounding mode; stochastic rounding carries the entropy width k >= 1.
///
/// NearestTiesDown / NearestTiesUp are the extra members of the
/// round-to-nearest family used by the verification sweeps; they have no
/// command-line names.
struct RoundingMode {
  enum class Kind {
    Down,             // rd: toward -inf
    Up,               // ru: toward +inf
    TowardZero,       // rz
    NearestEven,      // rne
    Odd,              // ro
    Stochastic,       // sr:<k>
    NearestTiesDown,
    NearestTiesUp,
  };

  Kind kind = Kind::NearestEven;
  int sr_bits = 0;

  static RoundingMode down() { return {Kind::Down, 0}; }
  static RoundingMode up() { return {Kind::Up, 0}; }
  static RoundingMode toward_zero() { return {Kind::TowardZero, 0}; }
  static RoundingMode nearest_even() { return {Kind::NearestEven, 0}; }
  static RoundingMode odd() { return {Kind::Odd, 0}; }
  static RoundingMode stochastic(int k) { return {Kind::Stochastic, k}; }
  static RoundingMode nearest_ties_down() { return {Kind::NearestTiesDown, 0}; }
  static RoundingMode nearest_ties_up() { return {Kind::NearestTiesUp, 0}; }

  bool is_stochastic() const { return kind == Kind::Stochastic; }
  /// Member of the round-to-nearest family (any tie-breaking rule).
  bool is_nearest() const {
    return kind == Kind::NearestEven || kind == Kind::NearestTiesDown ||
           kind == Kind::NearestTiesUp;
  }

  /// CLI name: rd, ru, rz, rne, ro, sr:<k>.
  std::string str() const;

  friend bool operator==(const RoundingMode& a, const RoundingMode& b) {
    return a.kind == b.kind && a.sr_bits == b.sr_bits;
  }
};

/// Parses a CLI mode name.  The test-only nearest variants are not
/// accepted here.  Throws ParseError.
RoundingMode parse_rounding_mode(std::string_view name);

/// Supplier of k uniform random bits per rounding event.
class EntropySource {
public:
  virtual ~EntropySource() = default;
  /// Uniform draw from [0, 2^k), 1 <= k <= 62.
  virtual std::uint64_t draw(int k) = 0;
};

/// PRNG-backed source; the same seed yields the same bit stream.
class SeededEntropy final : public EntropySource {
public:
  explicit SeededEntropy(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t draw(int k) override { return rng_() >> (64 - k); }

private:
  std::mt19937_64 rng_;
};

/// Returns the same value on every draw (masked to k bits); lets the
/// suites enumerate every stochastic outcome deterministically.
class FixedEntropy final : public EntropySource {
public:
  explicit FixedEntropy(std::uint64_t u) : u_(u) {}
  std::uint64_t draw(int k) override {
    return u_ & ((std::uint64_t{1} << k) - 1);
  }

private:
  std::uint64_t u_;
};

/// Rounds a scaled significand to an integer.
///
/// `canon_exp` is the canonical (MSB) exponent the result will carry; it is
/// consulted only by rne at a tie when precision = 1, where P3109 breaks
/// ties by exponent parity (1-bit significands have no parity of their
/// own).  It is passed on every call rather than baked into the mode so the
/// rounder itself stays binade-independent.
///
/// Contract, all modes: the result is floor(s) or ceil(s), and an integral
/// s is returned unchanged.  All modes except stochastic are monotonic.
BigInt round_scaled(const RoundingMode& mode, int precision, std::int64_t canon_exp,
                    const Dyadic& s, EntropySource* ent);

/// Rounds a finite x to a P-bit significand with unbounded exponent above
/// and the subnormal grid (exponent clamped at emin) below.  Stochastic
/// modes require an entropy source.
Dyadic round_to_precision(const Format& f, const Dyadic& x, const RoundingMode& mode,
                          EntropySource* ent = nullptr);

}  // namespace p3109
