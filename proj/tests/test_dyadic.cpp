#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "p3109/dyadic.hpp"
#include "p3109/errors.hpp"

using namespace p3109;

namespace {

// Independent big-rational oracle: p/q with q > 0, normalized by gcd.
struct Rational {
  BigInt p, q;

  static Rational of(const Dyadic& d) {
    if (d.exponent() >= 0)
      return norm(d.significand() * (BigInt(1) << static_cast<unsigned>(d.exponent())),
                  1);
    return norm(d.significand(), BigInt(1) << static_cast<unsigned>(-d.exponent()));
  }
  static Rational norm(BigInt p, BigInt q) {
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(p), q);
    if (g == 0) g = 1;
    return Rational{p / g, q / g};
  }
  Rational add(const Rational& o) const { return norm(p * o.q + o.p * q, q * o.q); }
  bool operator==(const Rational& o) const { return p == o.p && q == o.q; }
};

}  // namespace

TEST_CASE("dyadic addition examples") {
  CHECK(Dyadic(1, 0) + Dyadic(3, -6) == Dyadic(67, -6));
  CHECK(Dyadic(5, 3) + Dyadic() == Dyadic(5, 3));
  CHECK(Dyadic(14, 4) - Dyadic(14, 4) == Dyadic());
  CHECK((Dyadic(14, 4) - Dyadic(14, 4)).exponent() == 0);  // canonical zero
}

TEST_CASE("dyadic equality is semantic, storage is not normalized") {
  const Dyadic a(4, -2);
  const Dyadic b(1, 0);
  CHECK(a == b);
  CHECK(a.significand() == 4);
  CHECK(a.normalized().significand() == 1);
  CHECK(Dyadic(-12, 3).normalized() == Dyadic(-3, 5));
}

TEST_CASE("dyadic arithmetic agrees with a big-rational oracle") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long long> mdist(-(1LL << 40), 1LL << 40);
  std::uniform_int_distribution<int> edist(-120, 120);
  for (int i = 0; i < 100000; ++i) {
    const Dyadic a(mdist(rng), edist(rng));
    const Dyadic b(mdist(rng), edist(rng));
    REQUIRE(Rational::of(a + b) == Rational::of(a).add(Rational::of(b)));
    REQUIRE(Rational::of(a - b) == Rational::of(a).add(Rational::of(-b)));
  }
}

TEST_CASE("floor and ceil across limb boundaries") {
  // Regression: inexact right shifts of negative multi-limb significands.
  const Dyadic x(-((BigInt(1) << 104) + 1), -104);  // -(1 + 2^-104)
  CHECK(x.floor() == -2);
  CHECK(x.ceil() == -1);
  CHECK_FALSE(x.is_integer());
  const Dyadic y((BigInt(1) << 104) + 1, -104);
  CHECK(y.floor() == 1);
  CHECK(y.ceil() == 2);
  CHECK(Dyadic(-5, -1).floor() == -3);
  CHECK(Dyadic(-5, -1).ceil() == -2);
  CHECK(Dyadic(-4, -2).floor() == -1);
  CHECK(Dyadic(-4, -2).is_integer());
}

TEST_CASE("msb_exponent") {
  CHECK(msb_exponent(Dyadic(14, 4)) == 7);
  CHECK(msb_exponent(Dyadic(1, 0)) == 0);
  CHECK(msb_exponent(Dyadic(3, -6)) == -5);
  CHECK_THROWS_AS(msb_exponent(Dyadic()), ZeroInput);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> mdist(1, 1LL << 50);
  std::uniform_int_distribution<int> edist(-80, 80);
  for (int i = 0; i < 2000; ++i) {
    Dyadic x(mdist(rng), edist(rng));
    if (rng() & 1) x = -x;
    const std::int64_t e = msb_exponent(x);
    CHECK(Dyadic(1, e) <= abs(x));
    CHECK(abs(x) < Dyadic(1, e + 1));
  }
}

TEST_CASE("extended real truth table") {
  const XReal fin(Dyadic(5, 0));
  const XReal pi = XReal::pos_inf();
  const XReal ni = XReal::neg_inf();
  const XReal nan = XReal::nan();

  CHECK((pi + ni).is_nan());
  CHECK((ni + pi).is_nan());
  CHECK(pi + fin == pi);
  CHECK(fin + pi == pi);
  CHECK(ni + fin == ni);
  CHECK(pi + pi == pi);
  CHECK(ni + ni == ni);
  CHECK((nan + fin).is_nan());
  CHECK((fin + nan).is_nan());
  CHECK((nan + pi).is_nan());
  CHECK((nan + nan).is_nan());
  CHECK(XReal(Dyadic(1, 0)) + XReal(Dyadic(1, -10)) == XReal(Dyadic(1025, -10)));
  CHECK(-pi == ni);
  CHECK(pi - pi == nan);  // structural NaN equality
  CHECK(fin - fin == XReal(Dyadic()));

  // exhaustive 4x4 addition table
  const XReal ops[] = {fin, pi, ni, nan};
  for (const XReal& a : ops)
    for (const XReal& b : ops) {
      const XReal s = a + b;
      if (a.is_nan() || b.is_nan()) {
        CHECK(s.is_nan());
      } else if (a.is_inf() && b.is_inf()) {
        if (a == b) CHECK(s == a);
        else CHECK(s.is_nan());
      } else if (a.is_inf()) {
        CHECK(s == a);
      } else if (b.is_inf()) {
        CHECK(s == b);
      } else {
        CHECK(s == XReal(a.finite() + b.finite()));
      }
    }
}

TEST_CASE("decimal rendering is exact") {
  CHECK(Dyadic(1, -3).to_decimal_string() == "0.125");
  CHECK(Dyadic(14, 4).to_decimal_string() == "224");
  CHECK(Dyadic(-3, -1).to_decimal_string() == "-1.5");
  CHECK(Dyadic().to_decimal_string() == "0");
  CHECK(Dyadic(2, -1).to_decimal_string() == "1");
  CHECK(Dyadic(1, -10).to_decimal_string() == "0.0009765625");
}

TEST_CASE("parsing round-trips and rejects non-dyadics") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> mdist(-(1LL << 30), 1LL << 30);
  std::uniform_int_distribution<int> edist(-40, 40);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic x(mdist(rng), edist(rng));
    CHECK(Dyadic::parse(x.to_decimal_string()) == x);
  }
  CHECK(Dyadic::parse("67*2^-6") == Dyadic(67, -6));
  CHECK(Dyadic::parse("-14*2^4") == Dyadic(-14, 4));
  CHECK(Dyadic::parse("448") == Dyadic(448, 0));
  CHECK_THROWS_AS(Dyadic::parse("0.1"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("1e-3"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse(""), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("1.2.3"), ParseError);
  CHECK_THROWS_AS(Dyadic::parse("2^-6"), ParseError);
  CHECK(parse_xreal("nan").is_nan());
  CHECK(parse_xreal("-inf") == XReal::neg_inf());
  CHECK(parse_xreal("0.25") == XReal(Dyadic(1, -2)));
}

TEST_CASE("ordering") {
  CHECK(Dyadic(1, -1) < Dyadic(1, 0));
  CHECK(Dyadic(-1, 10) < Dyadic(1, -10));
  CHECK(Dyadic(3, 2) > Dyadic(11, 0));
  CHECK(xreal_total_less(XReal::neg_inf(), XReal(Dyadic(-1000, 0))));
  CHECK(xreal_total_less(XReal(Dyadic(1000, 0)), XReal::pos_inf()));
  CHECK(xreal_total_less(XReal::pos_inf(), XReal::nan()));
}
