#include "p3109/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

#include "p3109/errors.hpp"

namespace p3109 {

namespace {

BigInt pow2(std::int64_t k) {
  BigInt one = 1;
  return one << static_cast<unsigned>(k);
}

BigInt pow5(std::int64_t k) {
  BigInt r = 1;
  const BigInt five = 5;
  for (std::int64_t i = 0; i < k; ++i) r *= five;
  return r;
}

}  // namespace

Dyadic::Dyadic(BigInt significand, std::int64_t exponent)
    : m_(std::move(significand)), e_(exponent) {
  if (m_.is_zero()) e_ = 0;  // single representation of zero
}

int Dyadic::signum() const {
  if (m_.is_zero()) return 0;
  return m_ < 0 ? -1 : 1;
}

Dyadic Dyadic::scaled_pow2(std::int64_t k) const {
  if (m_.is_zero()) return Dyadic();
  return Dyadic(m_, e_ + k);
}

bool Dyadic::is_integer() const {
  if (e_ >= 0 || m_.is_zero()) return true;
  BigInt a = boost::multiprecision::abs(m_);
  return (a & (pow2(-e_) - 1)) == 0;
}

BigInt Dyadic::floor() const {
  if (e_ >= 0) return m_ << static_cast<unsigned>(e_);
  const unsigned d = static_cast<unsigned>(-e_);
  // cpp_int's right shift is unreliable for negative multi-limb values with
  // nonzero dropped bits, so divide magnitudes: floor(-x) = -ceil(x).
  if (m_ >= 0) return m_ >> d;
  BigInt q = (boost::multiprecision::abs(m_) + (pow2(-e_) - 1)) >> d;
  return -q;
}

BigInt Dyadic::ceil() const {
  return -((-*this).floor());
}

Dyadic Dyadic::normalized() const {
  if (m_.is_zero()) return Dyadic();
  BigInt a = boost::multiprecision::abs(m_);
  const unsigned tz = static_cast<unsigned>(lsb(a));
  a >>= tz;
  return Dyadic(m_ < 0 ? BigInt(-a) : a, e_ + tz);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.e_, b.e_);
  BigInt m = (a.m_ << static_cast<unsigned>(a.e_ - e)) +
             (b.m_ << static_cast<unsigned>(b.e_ - e));
  return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator-(const Dyadic& a) { return Dyadic(-a.m_, a.e_); }

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
  const int sa = a.signum();
  const int sb = b.signum();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  return (a - b).signum();
}

Dyadic abs(const Dyadic& x) { return x.is_negative() ? -x : x; }

std::int64_t msb_exponent(const Dyadic& x) {
  if (x.is_zero()) throw ZeroInput("msb_exponent: input is zero");
  const BigInt a = boost::multiprecision::abs(x.significand());
  return x.exponent() + static_cast<std::int64_t>(msb(a));
}

std::string Dyadic::to_decimal_string() const {
  if (m_.is_zero()) return "0";
  const bool neg = m_ < 0;
  BigInt a = boost::multiprecision::abs(m_);
  std::string out;
  if (e_ >= 0) {
    a <<= static_cast<unsigned>(e_);
    out = a.str();
  } else {
    const std::int64_t d = -e_;
    a *= pow5(d);  // m / 2^d == m*5^d / 10^d
    std::string digits = a.str();
    if (static_cast<std::int64_t>(digits.size()) <= d)
      digits.insert(0, static_cast<std::size_t>(d + 1 - digits.size()), '0');
    std::string ip = digits.substr(0, digits.size() - static_cast<std::size_t>(d));
    std::string fp = digits.substr(digits.size() - static_cast<std::size_t>(d));
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    out = fp.empty() ? ip : ip + "." + fp;
  }
  return neg ? "-" + out : out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

BigInt parse_digits(std::string_view s) {
  BigInt r = 0;
  for (char c : s) {
    r *= 10;
    r += c - '0';
  }
  return r;
}

}  // namespace

Dyadic Dyadic::parse(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ParseError("empty number");
  bool neg = false;
  if (s.front() == '-' || s.front() == '+') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }

  // m*2^e form
  if (const auto star = s.find('*'); star != std::string_view::npos) {
    std::string_view ms = s.substr(0, star);
    std::string_view rest = s.substr(star + 1);
    if (rest.substr(0, 2) != "2^")
      throw ParseError("expected '<m>*2^<e>' in '" + std::string(text) + "'");
    std::string_view es = rest.substr(2);
    bool eneg = false;
    if (!es.empty() && (es.front() == '-' || es.front() == '+')) {
      eneg = es.front() == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(ms) || !all_digits(es))
      throw ParseError("malformed number '" + std::string(text) + "'");
    BigInt m = parse_digits(ms);
    const BigInt eb = parse_digits(es);
    if (eb > 1000000)
      throw ParseError("exponent out of range in '" + std::string(text) + "'");
    std::int64_t e = eb.convert_to<std::int64_t>();
    if (eneg) e = -e;
    if (neg) m = -m;
    return Dyadic(std::move(m), e);
  }

  // decimal form
  std::string_view ip = s;
  std::string_view fp;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
    if (fp.empty()) throw ParseError("malformed number '" + std::string(text) + "'");
    if (!all_digits(fp)) throw ParseError("malformed number '" + std::string(text) + "'");
  }
  if (!all_digits(ip)) throw ParseError("malformed number '" + std::string(text) + "'");

  BigInt n = parse_digits(ip);
  const std::int64_t d = static_cast<std::int64_t>(fp.size());
  if (d > 0) {
    for (char c : fp) {
      n *= 10;
      n += c - '0';
    }
    const BigInt p5 = pow5(d);
    if (n % p5 != 0)
      throw ParseError("'" + std::string(text) +
                       "' is not a dyadic rational (needs a factor of 5^" +
                       std::to_string(d) + ")");
    n /= p5;
  }
  if (neg) n = -n;
  return Dyadic(std::move(n), -d);
}

std::ostream& operator<<(std::ostream& os, const Dyadic& x) {
  return os << x.to_decimal_string();
}

XReal operator+(const XReal& a, const XReal& b) {
  using K = XReal::Kind;
  if (a.is_nan() || b.is_nan()) return XReal::nan();
  if (a.kind() == K::PosInf) return b.kind() == K::NegInf ? XReal::nan() : a;
  if (a.kind() == K::NegInf) return b.kind() == K::PosInf ? XReal::nan() : a;
  if (b.is_inf()) return b;
  return XReal(a.finite() + b.finite());
}

XReal operator-(const XReal& a, const XReal& b) { return a + (-b); }

XReal operator-(const XReal& a) {
  using K = XReal::Kind;
  switch (a.kind()) {
    case K::PosInf: return XReal::neg_inf();
    case K::NegInf: return XReal::pos_inf();
    case K::NaN: return XReal::nan();
    case K::Finite: break;
  }
  return XReal(-a.finite());
}

bool operator==(const XReal& a, const XReal& b) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() != XReal::Kind::Finite) return true;
  return a.finite() == b.finite();
}

std::string XReal::str() const {
  switch (kind_) {
    case Kind::NaN: return "nan";
    case Kind::PosInf: return "+inf";
    case Kind::NegInf: return "-inf";
    case Kind::Finite: break;
  }
  return fin_.to_decimal_string();
}

bool xreal_total_less(const XReal& a, const XReal& b) {
  auto rank = [](const XReal& x) {
    switch (x.kind()) {
      case XReal::Kind::NegInf: return 0;
      case XReal::Kind::Finite: return 1;
      case XReal::Kind::PosInf: return 2;
      case XReal::Kind::NaN: return 3;
    }
    return 3;
  };
  const int ra = rank(a);
  const int rb = rank(b);
  if (ra != rb) return ra < rb;
  if (a.kind() != XReal::Kind::Finite) return false;
  return a.finite() < b.finite();
}

XReal parse_xreal(std::string_view text) {
  if (text == "nan") return XReal::nan();
  if (text == "inf" || text == "+inf") return XReal::pos_inf();
  if (text == "-inf") return XReal::neg_inf();
  return XReal(Dyadic::parse(text));
}

std::ostream& operator<<(std::ostream& os, const XReal& x) { return os << x.str(); }

}  // namespace p3109
