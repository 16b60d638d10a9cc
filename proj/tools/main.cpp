#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "p3109/algorithms.hpp"
#include "p3109/codec.hpp"
#include "p3109/errors.hpp"
#include "p3109/lattice.hpp"
#include "p3109/projection.hpp"
#include "p3109/suites.hpp"

namespace {

using namespace p3109;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct CommonValueArgs {
  std::string format;
  std::string rnd = "rne";
  std::string sat = "satfin";
  std::uint64_t seed = 0;
};

std::unique_ptr<EntropySource> make_entropy(std::uint64_t seed) {
  return std::make_unique<SeededEntropy>(seed);
}

void print_row_text(std::ostream& os, const Format& f, const TableRow& r) {
  os << std::setw(8) << r.encoding << "  " << to_binary(f, r.encoding) << "  ";
  switch (r.value.kind()) {
    case Value::Kind::NaN:
      os << "nan\n";
      return;
    case Value::Kind::Inf:
      os << (r.value.negative() ? "-inf" : "+inf") << '\n';
      return;
    case Value::Kind::Finite:
      break;
  }
  os << "m=" << std::setw(5) << r.value.significand() << " e=" << std::setw(5)
     << r.value.exponent() << "  " << r.real.finite().to_decimal_string() << '\n';
}

int cmd_inspect(const std::string& fmt_name, bool as_json) {
  const Format f = parse_format(fmt_name);
  if (as_json) {
    write_table_jsonl(std::cout, f);
    return kExitOk;
  }
  const DerivedConstants c = derive(f);
  std::cout << "format " << f.str() << ": K=" << f.K << " P=" << f.P
            << (f.is_signed() ? " signed" : " unsigned")
            << (f.is_extended() ? " extended" : " finite") << '\n'
            << "bias=" << c.bias << " W=" << c.exp_width << " emin=" << c.emin
            << " emax=" << c.emax << " emin_lsb=" << c.emin_lsb
            << " emax_lsb=" << c.emax_lsb << " n_fmax=" << c.n_fmax
            << " max_finite=" << c.max_finite.to_decimal_string()
            << " min_finite=" << c.min_finite.to_decimal_string() << '\n';
  for (const TableRow& r : enumerate(f)) print_row_text(std::cout, f, r);
  return kExitOk;
}

int cmd_project(const CommonValueArgs& args, const std::string& value_text,
                bool as_json) {
  const Format f = parse_format(args.format);
  const ProjectionSpec spec{parse_rounding_mode(args.rnd), parse_sat_mode(args.sat)};
  const XReal x = parse_xreal(value_text);
  auto ent = make_entropy(args.seed);
  const Value v = project(f, x, spec, ent.get());
  const std::uint64_t n = encode_bits(f, v);
  const XReal out = eval(f, v);
  if (as_json) {
    json j{{"format", f.str()},
           {"input", x.str()},
           {"spec", spec.str()},
           {"encoding", n},
           {"binary", to_binary(f, n)},
           {"value", json::parse(v.to_json())},
           {"decimal", out.str()}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "encoding: " << n << " (0b" << to_binary(f, n) << ")\n"
              << "value:    " << v.to_json() << '\n'
              << "decimal:  " << out.str() << '\n';
  }
  return kExitOk;
}

Value require_value(const Format& f, const std::string& text) {
  const XReal x = parse_xreal(text);
  if (!in_value_set(f, x))
    throw ParseError("'" + text + "' is not representable in " + f.str());
  return encode_value(f, x);
}

int cmd_fts(const std::string& fmt_name, const std::string& a_text,
            const std::string& b_text, const std::array<std::string, 3>& rnds,
            const std::array<std::string, 3>& sats, std::uint64_t seed) {
  const Format f = parse_format(fmt_name);
  const Value a = require_value(f, a_text);
  const Value b = require_value(f, b_text);
  auto ent = make_entropy(seed);
  const FtsTrace tr = fast_two_sum(
      f, a, b, {parse_rounding_mode(rnds[0]), parse_sat_mode(sats[0])},
      {parse_rounding_mode(rnds[1]), parse_sat_mode(sats[1])},
      {parse_rounding_mode(rnds[2]), parse_sat_mode(sats[2])}, ent.get());
  std::cout << tr.to_json() << '\n';
  return kExitOk;
}

int cmd_extract(const std::string& fmt_name, const std::string& sigma_text,
                const std::string& x_text, const std::array<std::string, 3>& sats) {
  const Format f = parse_format(fmt_name);
  const Value sigma = require_value(f, sigma_text);
  const Value x = require_value(f, x_text);
  const EsTrace tr = extract_scalar(f, sigma, x, parse_sat_mode(sats[0]),
                                    parse_sat_mode(sats[1]), parse_sat_mode(sats[2]));
  std::cout << tr.to_json() << '\n';
  return kExitOk;
}

int cmd_verify(std::vector<std::string> suites, int kmax, bool deep,
               std::uint64_t seed, bool as_json, const std::string& mutate) {
  testing::Mutation mut = testing::Mutation::None;
  if (!mutate.empty()) {
    if (mutate == "nan") mut = testing::Mutation::NanSlot;
    else if (mutate == "inf") mut = testing::Mutation::InfSlot;
    else if (mutate == "bias") mut = testing::Mutation::Bias;
    else throw ParseError("unknown mutation '" + mutate + "' (nan, inf, or bias)");
  }
  testing::ScopedMutation guard(mut);

  SuiteOptions opts;
  opts.kmax = kmax;
  opts.deep = deep;
  if (seed != 0) opts.seed = seed;

  std::vector<Report> reports;
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) {
    reports = run_all_suites(opts);
  } else {
    for (const std::string& name : suites) {
      if (!is_suite_name(name)) {
        std::cerr << "unknown suite '" << name << "'; available:\n";
        for (const std::string& s : suite_names()) std::cerr << "  " << s << '\n';
        return kExitUsage;
      }
      auto r = run_suite(name, opts);
      reports.insert(reports.end(), r.begin(), r.end());
    }
  }

  if (as_json) {
    for (const Report& r : reports) std::cout << r.to_json() << '\n';
  } else {
    std::cout << summarize(reports);
  }
  return total_failures(reports) == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_diff(int kmax) {
  SuiteOptions opts;
  opts.kmax = kmax;
  const auto reports = run_suite("differential-decode", opts);
  std::cout << summarize(reports);
  for (const Report& r : reports)
    for (const Failure& fl : r.failures)
      std::cerr << "mismatch: " << fl.inputs << " " << fl.trace << '\n';
  return total_failures(reports) == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_export(const std::vector<std::string>& fmt_names, int kmax,
               const std::string& dir, bool jsonl) {
  std::vector<Format> fmts;
  for (const std::string& name : fmt_names) fmts.push_back(parse_format(name));
  if (fmts.empty() && kmax > 0) fmts = all_formats(3, kmax);
  if (fmts.empty())
    throw ParseError("export needs format names or --kmax");
  std::filesystem::create_directories(dir);
  for (const Format& f : fmts) {
    const std::string path =
        dir + "/" + f.str() + (jsonl ? ".jsonl" : ".csv");
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    if (jsonl) write_table_jsonl(os, f);
    else write_table_csv(os, f);
    std::cout << path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-exact P3109 format inspector and verification harness"};
  app.require_subcommand(1);

  // inspect
  std::string ins_fmt;
  bool ins_json = false;
  auto* ins = app.add_subcommand("inspect", "Print a format's constants and table");
  ins->add_option("format", ins_fmt, "Format name, e.g. 8p4se")->required();
  ins->add_flag("--json", ins_json, "JSON lines, one row per encoding");

  // project
  CommonValueArgs proj_args;
  std::string proj_value;
  bool proj_json = false;
  auto* proj = app.add_subcommand("project", "Project a value into a format");
  proj->add_option("format", proj_args.format)->required();
  proj->add_option("value", proj_value,
                   "Exact decimal or m*2^e (also inf, -inf, nan)")
      ->required();
  proj->add_option("--rnd", proj_args.rnd, "rd|ru|rz|rne|ro|sr:<k>");
  proj->add_option("--sat", proj_args.sat, "satfin|ovfinf|satprop");
  proj->add_option("--seed", proj_args.seed, "Entropy seed for sr");
  proj->add_flag("--json", proj_json);

  // fts
  std::string fts_fmt, fts_a, fts_b;
  std::array<std::string, 3> fts_rnds{"rne", "rne", "rne"};
  std::array<std::string, 3> fts_sats{"satfin", "satfin", "satfin"};
  std::uint64_t fts_seed = 0;
  auto* fts = app.add_subcommand("fts", "FastTwoSum trace");
  fts->add_option("format", fts_fmt)->required();
  fts->add_option("a", fts_a)->required();
  fts->add_option("b", fts_b)->required();
  fts->add_option("--rnd1", fts_rnds[0]);
  fts->add_option("--rnd2", fts_rnds[1]);
  fts->add_option("--rnd3", fts_rnds[2]);
  fts->add_option("--sat1", fts_sats[0]);
  fts->add_option("--sat2", fts_sats[1]);
  fts->add_option("--sat3", fts_sats[2]);
  fts->add_option("--seed", fts_seed);

  // extract
  std::string ex_fmt, ex_sigma, ex_x;
  std::array<std::string, 3> ex_sats{"satfin", "satfin", "satfin"};
  auto* ext = app.add_subcommand("extract", "ExtractScalar trace (rne)");
  ext->add_option("format", ex_fmt)->required();
  ext->add_option("sigma", ex_sigma, "A positive power of two in the format")
      ->required();
  ext->add_option("x", ex_x)->required();
  ext->add_option("--sat1", ex_sats[0]);
  ext->add_option("--sat2", ex_sats[1]);
  ext->add_option("--sat3", ex_sats[2]);

  // verify
  std::vector<std::string> ver_suites;
  int ver_kmax = 0;
  bool ver_deep = false;
  std::uint64_t ver_seed = 0;
  bool ver_json = false;
  std::string ver_mutate;
  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("--suite", ver_suites, "Suite name(s), or 'all'");
  ver->add_option("--kmax", ver_kmax, "Cap the swept bitwidth");
  ver->add_flag("--deep", ver_deep, "Include sampled K=7,8 operand sweeps");
  ver->add_option("--seed", ver_seed);
  ver->add_flag("--json", ver_json, "One JSON report per line");
  ver->add_option("--mutate", ver_mutate,
                  "Corrupt a codec constant (nan|inf|bias) to prove the "
                  "suites can fail");

  // diff
  int diff_kmax = 0;
  auto* dif = app.add_subcommand("diff", "Differential decode check");
  dif->add_option("--kmax", diff_kmax);

  // export
  std::vector<std::string> exp_fmts;
  int exp_kmax = 0;
  std::string exp_dir = "tables";
  bool exp_jsonl = false;
  auto* exp = app.add_subcommand("export", "Write per-format tables");
  exp->add_option("formats", exp_fmts, "Format names");
  exp->add_option("--kmax", exp_kmax, "Export every format up to K");
  exp->add_option("--dir", exp_dir, "Output directory");
  exp->add_flag("--json,--jsonl", exp_jsonl, "JSON lines instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ins) return cmd_inspect(ins_fmt, ins_json);
    if (*proj) return cmd_project(proj_args, proj_value, proj_json);
    if (*fts) return cmd_fts(fts_fmt, fts_a, fts_b, fts_rnds, fts_sats, fts_seed);
    if (*ext) return cmd_extract(ex_fmt, ex_sigma, ex_x, ex_sats);
    if (*ver)
      return cmd_verify(ver_suites, ver_kmax, ver_deep, ver_seed, ver_json,
                        ver_mutate);
    if (*dif) return cmd_diff(diff_kmax);
    if (*exp) return cmd_export(exp_fmts, exp_kmax, exp_dir, exp_jsonl);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
