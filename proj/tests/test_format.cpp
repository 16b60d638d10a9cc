#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "p3109/errors.hpp"
#include "p3109/format.hpp"

using namespace p3109;

TEST_CASE("make_format validates the parameter constraints") {
  CHECK_NOTHROW(make_format(8, 4, Signedness::Signed, Domain::Extended));
  // P < K required for signed formats
  CHECK_THROWS_AS(make_format(3, 3, Signedness::Signed, Domain::Extended),
                  ConstraintViolation);
  // P <= K is enough for unsigned
  CHECK_NOTHROW(make_format(3, 3, Signedness::Unsigned, Domain::Finite));
  CHECK_THROWS_AS(make_format(2, 1, Signedness::Signed, Domain::Extended),
                  ConstraintViolation);
  CHECK_THROWS_AS(make_format(8, 0, Signedness::Signed, Domain::Extended),
                  ConstraintViolation);
  CHECK_THROWS_AS(make_format(8, 9, Signedness::Unsigned, Domain::Finite),
                  ConstraintViolation);
  CHECK_NOTHROW(make_format(24, 7, Signedness::Signed, Domain::Finite));
  CHECK_THROWS_AS(make_format(63, 2, Signedness::Signed, Domain::Extended),
                  ConstraintViolation);
}

TEST_CASE("derived constants for 8p4se") {
  const DerivedConstants c = derive(parse_format("8p4se"));
  CHECK(c.bias == 8);
  CHECK(c.exp_width == 4);
  CHECK(c.emin == -7);
  CHECK(c.emax == 7);
  CHECK(c.emin_lsb == -10);
  CHECK(c.emax_lsb == 4);
  CHECK(c.n_fmax == 126);
  CHECK(c.max_finite == Dyadic(14, 4));  // 224
  CHECK(c.min_finite == Dyadic(-14, 4));
}

TEST_CASE("derived constants for low-precision unsigned formats") {
  const DerivedConstants a = derive(parse_format("3p1ue"));
  CHECK(a.bias == 4);
  CHECK(a.exp_width == 3);
  CHECK(a.emax == 1);
  CHECK(a.n_fmax == 5);
  CHECK(a.max_finite == Dyadic(1, 1));  // 2

  const DerivedConstants b = derive(parse_format("4p2ue"));
  CHECK(b.emax == 2);  // 2^3 - 2 - 4
  CHECK(b.n_fmax == 13);
  CHECK(b.max_finite == Dyadic(3, 1));  // 6

  const DerivedConstants c = derive(parse_format("8p4sf"));
  CHECK(c.n_fmax == 127);
  CHECK(c.max_finite == Dyadic(15, 4));  // 240
}

TEST_CASE("emax errata regression: unsigned P=1 and P=2 extended") {
  for (int K = 3; K <= 10; ++K) {
    const DerivedConstants p1 = derive(make_format(K, 1, Signedness::Unsigned,
                                                   Domain::Extended));
    const std::int64_t dflt1 = (std::int64_t{1} << p1.exp_width) - 1 - p1.bias;
    CHECK(p1.emax == dflt1 - 2);
    CHECK(p1.emax != dflt1);
    const DerivedConstants p2 = derive(make_format(K, 2, Signedness::Unsigned,
                                                   Domain::Extended));
    const std::int64_t dflt2 = (std::int64_t{1} << p2.exp_width) - 1 - p2.bias;
    CHECK(p2.emax == dflt2 - 1);
  }
}

TEST_CASE("format names parse and print") {
  for (const char* name : {"8p4se", "3p1ue", "4p2sf", "16p8uf", "3p3ue"}) {
    const Format f = parse_format(name);
    CHECK(f.str() == name);
  }
  CHECK_THROWS_AS(parse_format("8p4"), ParseError);
  CHECK_THROWS_AS(parse_format("8x4se"), ParseError);
  CHECK_THROWS_AS(parse_format("p4se"), ParseError);
  CHECK_THROWS_AS(parse_format("8p4sq"), ParseError);
  CHECK_THROWS_AS(parse_format("8p4see"), ParseError);
  // constraint failures surface as ConstraintViolation, not ParseError
  CHECK_THROWS_AS(parse_format("3p3se"), ConstraintViolation);
}

TEST_CASE("format JSON round trip") {
  const Format f = parse_format("5p2ue");
  CHECK(format_from_json(format_to_json(f)) == f);
  CHECK(format_to_json(f).find("\"K\":5") != std::string::npos);
  CHECK_THROWS_AS(format_from_json("{\"K\":5}"), ParseError);
}
