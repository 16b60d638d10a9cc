#include "p3109/rounding.hpp"

#include <algorithm>

#include "p3109/errors.hpp"

namespace p3109 {

std::string RoundingMode::str() const {
  switch (kind) {
    case Kind::Down: return "rd";
    case Kind::Up: return "ru";
    case Kind::TowardZero: return "rz";
    case Kind::NearestEven: return "rne";
    case Kind::Odd: return "ro";
    case Kind::Stochastic: return "sr:" + std::to_string(sr_bits);
    case Kind::NearestTiesDown: return "rn-down";
    case Kind::NearestTiesUp: return "rn-up";
  }
  return "?";
}

RoundingMode parse_rounding_mode(std::string_view name) {
  if (name == "rd") return RoundingMode::down();
  if (name == "ru") return RoundingMode::up();
  if (name == "rz") return RoundingMode::toward_zero();
  if (name == "rne") return RoundingMode::nearest_even();
  if (name == "ro") return RoundingMode::odd();
  if (name.substr(0, 3) == "sr:") {
    int k = 0;
    for (char c : name.substr(3)) {
      if (c < '0' || c > '9' || k > 62) { k = 0; break; }
      k = k * 10 + (c - '0');
    }
    if (k >= 1 && k <= 62) return RoundingMode::stochastic(k);
  }
  throw ParseError("unknown rounding mode '" + std::string(name) +
                   "' (expected rd, ru, rz, rne, ro, or sr:<k>)");
}

namespace {

bool is_even(const BigInt& v) { return (boost::multiprecision::abs(v) & 1) == 0; }

// rne tie-break for P = 1.  Candidates are consecutive integers whose
// magnitudes lie in {0, 1, 2}: the zero candidate wins outright (its
// neighbor pair shares one canonical exponent, and zero has the even
// significand); otherwise the magnitude-2 candidate sits one binade above
// canon_exp, so the exponent parities differ and exactly one is even.
BigInt tie_p1(std::int64_t canon_exp, const BigInt& lo, const BigInt& hi) {
  if (lo.is_zero() || hi.is_zero()) return 0;
  auto result_exp = [&](const BigInt& c) {
    return canon_exp + (boost::multiprecision::abs(c) == 2 ? 1 : 0);
  };
  return result_exp(lo) % 2 == 0 ? lo : hi;
}

}  // namespace

BigInt round_scaled(const RoundingMode& mode, int precision, std::int64_t canon_exp,
                    const Dyadic& s, EntropySource* ent) {
  if (s.is_integer()) return s.floor();

  const BigInt lo = s.floor();
  const BigInt hi = lo + 1;

  switch (mode.kind) {
    case RoundingMode::Kind::Down:
      return lo;
    case RoundingMode::Kind::Up:
      return hi;
    case RoundingMode::Kind::TowardZero:
      return s.is_negative() ? hi : lo;
    case RoundingMode::Kind::Odd:
      return is_even(lo) ? hi : lo;
    case RoundingMode::Kind::Stochastic: {
      if (ent == nullptr)
        throw PreconditionViolation("stochastic rounding requires an entropy source");
      if (mode.sr_bits < 1)
        throw PreconditionViolation("stochastic rounding requires k >= 1");
      // Round up with probability floor(frac * 2^k) / 2^k.
      const Dyadic frac = s - Dyadic(lo, 0);
      const BigInt threshold = frac.scaled_pow2(mode.sr_bits).floor();
      const std::uint64_t u = ent->draw(mode.sr_bits);
      return BigInt(u) < threshold ? hi : lo;
    }
    case RoundingMode::Kind::NearestEven:
    case RoundingMode::Kind::NearestTiesDown:
    case RoundingMode::Kind::NearestTiesUp:
      break;
  }

  const Dyadic frac = s - Dyadic(lo, 0);
  const int cmp_half = Dyadic::compare(frac, Dyadic(1, -1));
  if (cmp_half < 0) return lo;
  if (cmp_half > 0) return hi;
  switch (mode.kind) {
    case RoundingMode::Kind::NearestTiesDown: return lo;
    case RoundingMode::Kind::NearestTiesUp: return hi;
    default: break;
  }
  if (precision > 1) return is_even(lo) ? lo : hi;
  return tie_p1(canon_exp, lo, hi);
}

Dyadic round_to_precision(const Format& f, const Dyadic& x, const RoundingMode& mode,
                          EntropySource* ent) {
  if (x.is_zero()) return Dyadic();
  const DerivedConstants c = derive(f);
  const std::int64_t canon = std::max(msb_exponent(x), c.emin);
  std::int64_t e_scale = canon - f.P + 1;
  BigInt m = round_scaled(mode, f.P, canon, x.scaled_pow2(-e_scale), ent);
  const BigInt top = BigInt(1) << static_cast<unsigned>(f.P);
  if (boost::multiprecision::abs(m) == top) {
    m >>= 1;  // carried into the next binade
    e_scale += 1;
  }
  return Dyadic(std::move(m), e_scale);
}

}  // namespace p3109
