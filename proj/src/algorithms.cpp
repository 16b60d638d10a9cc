#include "p3109/algorithms.hpp"

#include <json.hpp>

#include "p3109/errors.hpp"

namespace p3109 {

Value fp_add(const Format& f, const Value& a, const Value& b,
             const ProjectionSpec& spec, EntropySource* ent) {
  return project(f, eval(f, a) + eval(f, b), spec, ent);
}

Value fp_sub(const Format& f, const Value& a, const Value& b,
             const ProjectionSpec& spec, EntropySource* ent) {
  return project(f, eval(f, a) - eval(f, b), spec, ent);
}

FtsTrace fast_two_sum(const Format& f, const Value& a, const Value& b,
                      const ProjectionSpec& spec1, const ProjectionSpec& spec2,
                      const ProjectionSpec& spec3, EntropySource* ent) {
  if (!f.is_signed())
    throw PreconditionViolation("fast_two_sum requires a signed format");
  if (!a.is_finite() || !b.is_finite())
    throw PreconditionViolation("fast_two_sum requires finite operands");

  FtsTrace tr;
  tr.a = a;
  tr.b = b;
  tr.specs = {spec1, spec2, spec3};
  const XReal av = eval(f, a);
  const XReal bv = eval(f, b);
  tr.exact_sum = av + bv;

  tr.s = project(f, tr.exact_sum, spec1, ent);
  tr.z = project(f, eval(f, tr.s) - av, spec2, ent);
  tr.t = project(f, bv - eval(f, tr.z), spec3, ent);
  tr.delta = tr.exact_sum - eval(f, tr.s);
  return tr;
}

std::string FtsTrace::to_json() const {
  nlohmann::json j{
      {"a", nlohmann::json::parse(a.to_json())},
      {"b", nlohmann::json::parse(b.to_json())},
      {"s", nlohmann::json::parse(s.to_json())},
      {"z", nlohmann::json::parse(z.to_json())},
      {"t", nlohmann::json::parse(t.to_json())},
      {"exact_sum", exact_sum.str()},
      {"delta", delta.str()},
      {"specs", {specs[0].str(), specs[1].str(), specs[2].str()}},
  };
  return j.dump();
}

EsTrace extract_scalar(const Format& f, const Value& sigma, const Value& x,
                       SatMode sat1, SatMode sat2, SatMode sat3) {
  if (!f.is_signed())
    throw PreconditionViolation("extract_scalar requires a signed format");
  if (!sigma.is_finite() || !x.is_finite())
    throw PreconditionViolation("extract_scalar requires finite operands");
  const std::int64_t sm = sigma.significand();
  if (sm <= 0 || (sm & (sm - 1)) != 0)
    throw PreconditionViolation("sigma must be a positive power of two, got " +
                                sigma.str());

  EsTrace tr;
  tr.sigma = sigma;
  tr.x = x;
  tr.sats = {sat1, sat2, sat3};
  const XReal sv = eval(f, sigma);
  const XReal xv = eval(f, x);
  tr.i = msb_exponent(sv.finite());

  if (!xv.finite().is_zero()) {
    // Largest j with |x| <= 2^(i-j): one less than the exponent gap unless
    // x is itself a power of two.
    const Dyadic ax = abs(xv.finite());
    const std::int64_t mx = msb_exponent(ax);
    const bool exact_pow2 = ax == Dyadic(1, mx);
    tr.j_max = tr.i - mx - (exact_pow2 ? 0 : 1);
  }

  const RoundingMode rne = RoundingMode::nearest_even();
  tr.s = project(f, sv + xv, {rne, sat1});
  tr.x_high = project(f, eval(f, tr.s) - sv, {rne, sat2});
  tr.x_low = project(f, xv - eval(f, tr.x_high), {rne, sat3});
  return tr;
}

std::string EsTrace::to_json() const {
  nlohmann::json j{
      {"sigma", nlohmann::json::parse(sigma.to_json())},
      {"x", nlohmann::json::parse(x.to_json())},
      {"s", nlohmann::json::parse(s.to_json())},
      {"x_high", nlohmann::json::parse(x_high.to_json())},
      {"x_low", nlohmann::json::parse(x_low.to_json())},
      {"i", i},
      {"sats",
       {sat_mode_name(sats[0]), sat_mode_name(sats[1]), sat_mode_name(sats[2])}},
  };
  if (j_max) j["j_max"] = *j_max;
  return j.dump();
}

}  // namespace p3109
