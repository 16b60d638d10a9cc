#include "p3109/format.hpp"

#include <cctype>
#include <ostream>

#include <json.hpp>

#include "p3109/errors.hpp"

namespace p3109 {

std::string Format::str() const {
  std::string r = std::to_string(K) + "p" + std::to_string(P);
  r += is_signed() ? 's' : 'u';
  r += is_extended() ? 'e' : 'f';
  return r;
}

Format make_format(int K, int P, Signedness s, Domain d) {
  if (K <= 2)
    throw ConstraintViolation("K must be greater than 2 (got " + std::to_string(K) + ")");
  if (K > 62)
    throw ConstraintViolation("K must be at most 62 (got " + std::to_string(K) + ")");
  if (P <= 0)
    throw ConstraintViolation("P must be positive (got " + std::to_string(P) + ")");
  if (s == Signedness::Signed && P >= K)
    throw ConstraintViolation("signed formats require P < K (got P=" + std::to_string(P) +
                              ", K=" + std::to_string(K) + ")");
  if (s == Signedness::Unsigned && P > K)
    throw ConstraintViolation("unsigned formats require P <= K (got P=" + std::to_string(P) +
                              ", K=" + std::to_string(K) + ")");
  return Format{K, P, s, d};
}

DerivedConstants derive(const Format& f) {
  DerivedConstants c;
  c.exp_width = f.is_signed() ? f.K - f.P : f.K - f.P + 1;
  c.bias = std::int64_t{1} << (c.exp_width - 1);
  c.emin = 1 - c.bias;
  c.emin_lsb = c.emin - f.P + 1;

  // emax defaults to 2^W-1-B; low-precision formats lose top binades to the
  // reserved special-value encodings.
  const std::int64_t top = (std::int64_t{1} << c.exp_width) - c.bias;
  c.emax = top - 1;
  if (f.is_signed()) {
    if (f.is_extended() && f.P == 1) c.emax = top - 2;
  } else {
    if (!f.is_extended() && f.P == 1) c.emax = top - 2;
    if (f.is_extended() && f.P == 1) c.emax = top - 3;
    if (f.is_extended() && f.P == 2) c.emax = top - 2;
  }
  c.emax_lsb = c.emax - f.P + 1;

  const std::uint64_t full = std::uint64_t{1} << f.K;
  if (f.is_signed()) {
    c.n_fmax = (full >> 1) - (f.is_extended() ? 2 : 1);
  } else {
    c.n_fmax = full - (f.is_extended() ? 3 : 2);
  }

  const std::int64_t m_full = (std::int64_t{1} << f.P) - 1;
  c.m_top = m_full;
  if (f.P >= 2) {
    if (f.is_signed() && f.is_extended()) c.m_top = m_full - 1;
    if (!f.is_signed() && !f.is_extended()) c.m_top = m_full - 1;
    if (!f.is_signed() && f.is_extended() && f.P >= 3) c.m_top = m_full - 2;
  }

  c.max_finite = Dyadic(c.m_top, c.emax_lsb);
  c.min_finite = f.is_signed() ? -c.max_finite : Dyadic();
  return c;
}

Format parse_format(std::string_view name) {
  const std::string text(name);
  auto fail = [&]() -> Format {
    throw ParseError("bad format name '" + text + "' (expected <K>p<P><s|u><f|e>)");
  };

  std::size_t i = 0;
  auto read_int = [&]() -> int {
    std::size_t start = i;
    long v = 0;
    while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i]))) {
      v = v * 10 + (name[i] - '0');
      if (v > 1000) return -1;
      ++i;
    }
    return i == start ? -1 : static_cast<int>(v);
  };

  const int K = read_int();
  if (K < 0 || i >= name.size() || name[i] != 'p') return fail();
  ++i;
  const int P = read_int();
  if (P < 0 || i + 2 != name.size()) return fail();
  Signedness s;
  if (name[i] == 's') s = Signedness::Signed;
  else if (name[i] == 'u') s = Signedness::Unsigned;
  else return fail();
  Domain d;
  if (name[i + 1] == 'e') d = Domain::Extended;
  else if (name[i + 1] == 'f') d = Domain::Finite;
  else return fail();
  return make_format(K, P, s, d);
}

std::string format_to_json(const Format& f) {
  nlohmann::json j{{"K", f.K},
                   {"P", f.P},
                   {"signed", f.is_signed()},
                   {"extended", f.is_extended()}};
  return j.dump();
}

Format format_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("K") || !j.contains("P") ||
      !j.contains("signed") || !j.contains("extended"))
    throw ParseError("bad format JSON");
  return make_format(j["K"].get<int>(), j["P"].get<int>(),
                     j["signed"].get<bool>() ? Signedness::Signed : Signedness::Unsigned,
                     j["extended"].get<bool>() ? Domain::Extended : Domain::Finite);
}

std::ostream& operator<<(std::ostream& os, const Format& f) { return os << f.str(); }

}  // namespace p3109
