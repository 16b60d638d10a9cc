#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "p3109/errors.hpp"
#include "p3109/projection.hpp"

using namespace p3109;

namespace {
const Format se = parse_format("8p4se");
const Format sf = parse_format("8p4sf");
const Format ue = parse_format("8p4ue");
}  // namespace

TEST_CASE("saturate on finite overflow") {
  CHECK(saturate(se, XReal(Dyadic(448, 0)), SatMode::SatFinite) ==
        XReal(Dyadic(224, 0)));
  CHECK(saturate(se, XReal(Dyadic(448, 0)), SatMode::OvfInf) == XReal::pos_inf());
  CHECK(saturate(se, XReal(Dyadic(448, 0)), SatMode::SatPropagate) ==
        XReal(Dyadic(224, 0)));
  // finite-domain formats clamp under every mode
  CHECK(saturate(sf, XReal(Dyadic(448, 0)), SatMode::OvfInf) ==
        XReal(Dyadic(240, 0)));
  CHECK(saturate(se, XReal(Dyadic(-448, 0)), SatMode::OvfInf) == XReal::neg_inf());
  CHECK(saturate(se, XReal(Dyadic(100, 0)), SatMode::OvfInf) ==
        XReal(Dyadic(100, 0)));
}

TEST_CASE("saturate on propagated infinities") {
  CHECK(saturate(se, XReal::pos_inf(), SatMode::SatPropagate) == XReal::pos_inf());
  CHECK(saturate(se, XReal::pos_inf(), SatMode::SatFinite) == XReal(Dyadic(224, 0)));
  CHECK(saturate(se, XReal::neg_inf(), SatMode::SatFinite) == XReal(Dyadic(-224, 0)));
  // no infinity exists in a finite-domain format
  CHECK(saturate(sf, XReal::pos_inf(), SatMode::OvfInf).is_nan());
  CHECK(saturate(sf, XReal::pos_inf(), SatMode::SatPropagate).is_nan());
  CHECK(saturate(sf, XReal::pos_inf(), SatMode::SatFinite) == XReal(Dyadic(240, 0)));
  CHECK(saturate(ue, XReal::neg_inf(), SatMode::SatPropagate).is_nan());
  CHECK(saturate(ue, XReal::neg_inf(), SatMode::SatFinite) == XReal(Dyadic()));
  CHECK(saturate(ue, XReal::pos_inf(), SatMode::OvfInf) == XReal::pos_inf());
}

TEST_CASE("negative values entering an unsigned format") {
  CHECK(saturate(ue, XReal(Dyadic(-1, 0)), SatMode::SatFinite) == XReal(Dyadic()));
  CHECK(saturate(ue, XReal(Dyadic(-1, 0)), SatMode::SatPropagate) == XReal(Dyadic()));
  CHECK(saturate(ue, XReal(Dyadic(-1, 0)), SatMode::OvfInf).is_nan());
}

TEST_CASE("project pipeline examples") {
  CHECK(project(se, XReal(Dyadic(67, -6)),
                {RoundingMode::nearest_even(), SatMode::SatFinite}) ==
        Value::finite(8, -3));
  CHECK(project(se, XReal(Dyadic(448, 0)), {RoundingMode::down(), SatMode::OvfInf}) ==
        Value::inf(false));
  // rounding happens before saturation: RD pulls 224 + 2^-10 back in range
  CHECK(project(se, XReal(Dyadic(224, 0) + Dyadic(1, -10)),
                {RoundingMode::down(), SatMode::OvfInf}) == Value::finite(14, 4));
  CHECK(project(se, XReal(Dyadic(224, 0) + Dyadic(1, -10)),
                {RoundingMode::up(), SatMode::OvfInf}) == Value::inf(false));
  CHECK(project(se, XReal::nan(), {RoundingMode::down(), SatMode::OvfInf}) ==
        Value::nan());
  CHECK(project(se, XReal::neg_inf(), {RoundingMode::up(), SatMode::SatPropagate}) ==
        Value::inf(true));
  CHECK(project(ue, XReal(Dyadic(-5, -3)),
                {RoundingMode::nearest_even(), SatMode::OvfInf}) == Value::nan());
}

TEST_CASE("project with stochastic rounding is seed-deterministic") {
  const ProjectionSpec spec{RoundingMode::stochastic(4), SatMode::SatFinite};
  SeededEntropy e1(99), e2(99);
  const Value a = project(se, XReal(Dyadic(67, -6)), spec, &e1);
  const Value b = project(se, XReal(Dyadic(67, -6)), spec, &e2);
  CHECK(a == b);
  FixedEntropy lo(0), hi(15);
  CHECK(project(se, XReal(Dyadic(67, -6)), spec, &lo) == Value::finite(9, -3));
  CHECK(project(se, XReal(Dyadic(67, -6)), spec, &hi) == Value::finite(8, -3));
}

TEST_CASE("sat mode names") {
  CHECK(parse_sat_mode("satfin") == SatMode::SatFinite);
  CHECK(parse_sat_mode("ovfinf") == SatMode::OvfInf);
  CHECK(parse_sat_mode("satprop") == SatMode::SatPropagate);
  CHECK(sat_mode_name(SatMode::SatPropagate) == "satprop");
  CHECK_THROWS_AS(parse_sat_mode("clamp"), ParseError);
}
