#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "p3109/codec.hpp"
#include "p3109/errors.hpp"

using namespace p3109;

TEST_CASE("decode special slots") {
  const Format se = parse_format("8p4se");
  CHECK(decode(se, 128) == Value::nan());
  CHECK(decode(se, 127) == Value::inf(false));
  CHECK(decode(se, 255) == Value::inf(true));
  const Format ue = parse_format("8p4ue");
  CHECK(decode(ue, 255) == Value::nan());
  CHECK(decode(ue, 254) == Value::inf(false));  // errata slot, 2^K-2
  const Format sf = parse_format("8p4sf");
  CHECK(decode(sf, 128) == Value::nan());
  CHECK(decode(sf, 127) == Value::finite(15, 4));
}

TEST_CASE("decode finite region") {
  const Format se = parse_format("8p4se");
  CHECK(decode(se, 126) == Value::finite(14, 4));
  CHECK(decode(se, 0) == Value::finite(0, -10));
  CHECK(decode(se, 1) == Value::finite(1, -10));
  CHECK(decode(se, 129) == Value::finite(-1, -10));
  CHECK(decode(parse_format("4p2se"), 5) == Value::finite(3, -1));  // 1.5
  CHECK_THROWS_AS(decode(se, 256), OutOfRange);
}

TEST_CASE("encode_bits inverts decode") {
  const Format se = parse_format("8p4se");
  CHECK(encode_bits(se, Value::finite(14, 4)) == 126);
  CHECK(encode_bits(se, Value::finite(-3, -10)) == 131);  // subnormal + sign half
  CHECK(encode_bits(parse_format("8p4ue"), Value::nan()) == 255);
  CHECK_THROWS_AS(encode_bits(se, Value::finite(15, 4)), InvalidValue);
  CHECK_THROWS_AS(encode_bits(parse_format("8p4sf"), Value::inf(false)),
                  InvalidValue);
}

TEST_CASE("enumerate row values") {
  const Format ue = parse_format("3p1ue");
  const auto rows = enumerate(ue);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].real == XReal(Dyadic()));
  CHECK(rows[1].real == XReal(Dyadic(1, -3)));
  CHECK(rows[2].real == XReal(Dyadic(1, -2)));
  CHECK(rows[3].real == XReal(Dyadic(1, -1)));
  CHECK(rows[4].real == XReal(Dyadic(1, 0)));
  CHECK(rows[5].real == XReal(Dyadic(1, 1)));
  CHECK(rows[6].value == Value::inf(false));
  CHECK(rows[7].value == Value::nan());

  const auto se = enumerate(parse_format("4p2se"));
  const char* want[] = {"0", "0.25", "0.5", "0.75", "1", "1.5", "2"};
  for (int i = 0; i < 7; ++i) CHECK(se[i].real.str() == want[i]);
  CHECK(se[7].value == Value::inf(false));

  CHECK_THROWS_AS(enumerate(make_format(17, 4, Signedness::Signed, Domain::Finite)),
                  FormatTooLarge);
}

TEST_CASE("reference decoder agrees on the documented examples") {
  const Format se = parse_format("8p4se");
  CHECK(decode_reference(se, 128) == Value::nan());
  CHECK(decode_reference(se, 127) == Value::inf(false));
  CHECK(decode_reference(se, 255) == Value::inf(true));
  CHECK(decode_reference(se, 126) == Value::finite(14, 4));
  CHECK(decode_reference(se, 0) == Value::finite(0, -10));
  CHECK(decode_reference(parse_format("8p4ue"), 254) == Value::inf(false));
  CHECK(decode_reference(parse_format("4p2se"), 5) == Value::finite(3, -1));
}

TEST_CASE("binary rendering") {
  const Format f = parse_format("8p4se");
  CHECK(to_binary(f, 126) == "01111110");
  CHECK(to_binary(parse_format("3p1ue"), 5) == "101");
}

TEST_CASE("csv export") {
  std::ostringstream os;
  write_table_csv(os, parse_format("3p1ue"));
  const std::string text = os.str();
  CHECK(text.find("encoding,binary,class,m,e,value") == 0);
  CHECK(text.find("5,101,finite,1,1,2") != std::string::npos);
  CHECK(text.find("6,110,inf,,,+inf") != std::string::npos);
  CHECK(text.find("7,111,nan,,,nan") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 9);  // header + 2^K rows
}

TEST_CASE("mutations corrupt decode and only decode") {
  const Format f = parse_format("8p4se");
  {
    testing::ScopedMutation guard(testing::Mutation::NanSlot);
    CHECK(decode(f, 128) != Value::nan());
    CHECK(decode_reference(f, 128) == Value::nan());
  }
  {
    testing::ScopedMutation guard(testing::Mutation::Bias);
    CHECK(decode(f, 126) != Value::finite(14, 4));
    CHECK(decode_reference(f, 126) == Value::finite(14, 4));
  }
  CHECK(testing::mutation() == testing::Mutation::None);
  CHECK(decode(f, 128) == Value::nan());
}
