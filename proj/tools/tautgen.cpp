#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "tautgen/io.hpp"

using namespace tautgen;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240607;
constexpr int kMaxRank = 5;

enum Exit { kVerified = 0, kFalsified = 1, kInvalid = 2 };

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

IntVector parse_int_list(const std::string& text) {
  IntVector out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("not an integer list: '" + text + "'");
    }
  }
  return out;
}

// "x" or "x:y" per entry, comma separated.
std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      auto colon = item.find(':');
      double re = std::stod(item.substr(0, colon));
      double im = colon == std::string::npos ? 0 : std::stod(item.substr(colon + 1));
      out.emplace_back(re, im);
    } catch (const std::exception&) {
      throw InputError("not a coefficient list: '" + text + "'");
    }
  }
  return out;
}

AMatrix toric_a_matrix(const std::string& fan_path, const std::string& bundle, std::ostream& log) {
  FanData fan = fan_from_json(read_json_file(fan_path));
  fan.validate();
  if (bundle == "anticanonical") return a_matrix(anticanonical_sections(fan));
  IntVector rep = parse_int_list(bundle);
  if (rep.size() != fan.ray_count()) throw InputError("bundle needs one coefficient per ray");
  auto l = cy_power_check(fan, class_of(class_group(fan), rep));
  if (l)
    log << "K_X = " << to_string(*l) << " L\n";
  else
    log << "K_X is not a multiple of L\n";
  return a_matrix(sections(fan, rep));
}

std::string polynomial_text(const std::vector<Exponent>& monomials, const RationalMatrix& basis, std::size_t row) {
  std::string out;
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    BigRational q = basis(row, c);
    if (q == 0) continue;
    std::string mono;
    for (std::size_t i = 0; i < monomials[c].size(); ++i) {
      if (monomials[c][i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "a" + std::to_string(i);
      if (monomials[c][i] > 1) mono += "^" + std::to_string(monomials[c][i]);
    }
    bool negative = q < 0;
    BigRational mag = negative ? BigRational(-q) : q;
    std::string term = mono.empty() ? to_string(mag) : (mag == 1 ? mono : to_string(mag) + "*" + mono);
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

int cmd_toric(const std::string& fan_path, const std::string& bundle, long order, int bound, const std::string& out_dir) {
  AMatrix a = toric_a_matrix(fan_path, bundle, std::cout);
  TautSystem sys = build_toric_gkz(a);
  if (bound > 0) {
    std::set<std::string> seen;
    for (const auto& op : sys.polynomial_ops) {
      seen.insert(op.to_string());
      seen.insert((BigRational(-1) * op).to_string());
    }
    for (const auto& op : binomial_generators_bounded(a, bound))
      if (!seen.count(op.to_string()) && !seen.count((BigRational(-1) * op).to_string()))
        sys.add_polynomial("binomial degree<=" + std::to_string(bound), op);
  }
  std::filesystem::create_directories(out_dir);
  write_json_file(join_path(out_dir, "system.json"), to_json(sys));
  std::cout << sys.variable_count() << " variables, " << sys.symmetry_ops.size() << " symmetry ops, "
            << sys.polynomial_ops.size() << " polynomial ops\n";

  PeriodSeries p = period_series(a, order);
  check_period_invariants(a, p);
  write_json_file(join_path(out_dir, "series.json"), to_json(p));
  auto report = verify_system(sys, p);
  write_json_file(join_path(out_dir, "report.json"), to_json(report, sys));
  std::cout << "series: " << p.series.size() << " terms to order " << order << "\n";
  std::cout << (report.passed ? "verified" : "FALSIFIED");
  if (report.certified_order) std::cout << " through order " << *report.certified_order;
  std::cout << "\n";
  return report.passed ? kVerified : kFalsified;
}

int cmd_flag(const std::string& flag_path, const std::string& target, std::size_t samples, std::uint64_t seed,
             const std::string& out_path, const std::string& report_path) {
  FlagInput input = flag_from_json(read_json_file(flag_path));
  if (input.n > kMaxRank) throw InputError("flag input limited to n <= " + std::to_string(kMaxRank));
  auto rd = root_data_A(input.n);
  TautSystem sys;
  std::vector<std::vector<BigRational>> points;
  if (target == "V") {
    RepData v = flag_representation_V(input);
    sys = build_flag_system_V(input);
    points = sample_cone_points(rd, v, samples, seed);
  } else {
    auto w = build_flag_system_W(input, seed);
    sys = std::move(w.system);
    points = sample_cone_points(rd, w.data.module, samples, seed + 1);
    std::cout << w.first_order_count << " first-order ops, " << w.binomial_count << " Veronese binomials\n";
  }
  write_json_file(out_path, to_json(sys));
  auto bad = nonvanishing_symbols(sys, points);
  Json failed = Json::array();
  for (auto k : bad) failed.push_back(sys.polynomial_labels[k]);
  Json report{{"format", kFormat}, {"target", target},   {"samples", samples},          {"seed", seed},
              {"polynomial_ops", sys.polynomial_ops.size()}, {"nonvanishing", failed}, {"passed", bad.empty()}};
  write_json_file(report_path, report);
  std::cout << sys.variable_count() << " variables, " << sys.symmetry_ops.size() << " symmetry ops, "
            << sys.polynomial_ops.size() << " polynomial ops\n";
  std::cout << (bad.empty() ? "all symbols vanish" : "NONVANISHING symbols") << " on " << points.size()
            << " cone points\n";
  return bad.empty() ? kVerified : kFalsified;
}

int cmd_verify(const std::string& system_path, const std::string& series_path, const std::string& out_path) {
  TautSystem sys = system_from_json(read_json_file(system_path));
  PeriodSeries p = period_from_json(read_json_file(series_path));
  auto report = verify_system(sys, p);
  if (!out_path.empty()) write_json_file(out_path, to_json(report, sys));
  auto labels = sys.provenance();
  for (const auto& r : report.reports)
    if (!r.passed) std::cout << "fails: " << labels[r.operator_index] << "\n";
  std::cout << (report.passed ? "verified" : "FALSIFIED") << "\n";
  return report.passed ? kVerified : kFalsified;
}

int cmd_period(const std::string& fan_path, const std::string& bundle, const std::string& coefficients, int points,
               double ratio, int grid, double tolerance, std::uint64_t seed, const std::string& out_path) {
  AMatrix a = toric_a_matrix(fan_path, bundle, std::cout);
  std::vector<std::vector<Complex>> tuples;
  if (!coefficients.empty()) {
    tuples.push_back(parse_complex_list(coefficients));
  } else {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < points; ++t) tuples.push_back(sample_dominant(a, ratio, rng));
  }
  Json rows = Json::array();
  bool ok = true;
  for (const auto& c : tuples) {
    double lead = std::abs(c.at(*a.interior_index()));
    long order = order_for_tolerance(a, c, tolerance * lead * 1e-2);
    Complex series = evaluate_series(period_series(a, order), c);
    Complex numeric = numeric_period(a, c, grid);
    double rel = std::abs(series - numeric) / std::abs(numeric);
    bool pass = rel <= tolerance;
    ok = ok && pass;
    rows.push_back({{"order", order},
                    {"series", {series.real(), series.imag()}},
                    {"numeric", {numeric.real(), numeric.imag()}},
                    {"tail_bound", truncation_tail_bound(a, c, order)},
                    {"relative_difference", rel},
                    {"passed", pass}});
    std::printf("K=%-3ld series % .12e %+.12ei  numeric % .12e %+.12ei  rel %.2e %s\n", order, series.real(),
                series.imag(), numeric.real(), numeric.imag(), rel, pass ? "ok" : "MISMATCH");
  }
  if (!out_path.empty())
    write_json_file(out_path, Json{{"format", kFormat}, {"grid", grid}, {"tolerance", tolerance}, {"points", rows}});
  return ok ? kVerified : kFalsified;
}

int cmd_invariant(int form_degree, int degree, const std::string& out_path) {
  RepData v = dual_rep(symmetric_power_rep(fundamental_rep(2, 1), form_degree));
  TautSystem sys = build_invariant_system(v, degree);
  auto sol = polynomial_solutions(sys, degree);
  Json polys = Json::array();
  std::cout << sol.basis.rows() << " invariant(s) of degree " << degree << " on binary forms of degree "
            << form_degree << "\n";
  for (std::size_t r = 0; r < sol.basis.rows(); ++r) {
    auto text = polynomial_text(sol.monomials, sol.basis, r);
    polys.push_back(text);
    std::cout << "  " << text << "\n";
  }
  if (!out_path.empty())
    write_json_file(out_path, Json{{"format", kFormat}, {"system", to_json(sys)}, {"invariants", polys}});
  return kVerified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tautological systems: construction, period series and verification"};
  app.require_subcommand(1);

  std::string fan_path, flag_path, system_path, series_path, out_dir = ".", out_path, report_path = "vanishing.json";
  std::string bundle = "anticanonical", target = "V", coefficients;
  long order = 6;
  int bound = 0, points = 10, grid = 32, form_degree = 2, degree = 2;
  std::size_t samples = 50;
  double ratio = 0.25, tolerance = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  const std::string seed_help = "random seed (default " + std::to_string(kDefaultSeed) + ")";

  auto* toric = app.add_subcommand("toric", "GKZ system, period series and verification for a fan");
  toric->add_option("fan", fan_path, "fan JSON file")->required()->check(CLI::ExistingFile);
  toric->add_option("--bundle", bundle, "anticanonical, or divisor coefficients c1,...,ct")->capture_default_str();
  toric->add_option("--order,-K", order, "expansion order of the period series")->capture_default_str()->check(CLI::NonNegativeNumber);
  toric->add_option("--bound", bound, "append every binomial box operator of degree <= bound")->capture_default_str()->check(CLI::NonNegativeNumber);
  toric->add_option("--out-dir", out_dir, "directory for system.json, series.json, report.json")->capture_default_str();

  auto* flag = app.add_subcommand("flag", "tautological system of a type A flag variety");
  flag->add_option("flag", flag_path, "flag JSON file")->required()->check(CLI::ExistingFile);
  flag->add_option("--target", target, "V (Casimir quadrics) or W (Segre-Veronese)")->capture_default_str()->check(CLI::IsMember({"V", "W"}));
  flag->add_option("--samples", samples, "cone points for the vanishing check")->capture_default_str()->check(CLI::PositiveNumber);
  flag->add_option("--seed", seed, seed_help);
  flag->add_option("--out", out_path, "system JSON output")->default_str("system.json");
  flag->add_option("--report", report_path, "vanishing report output")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check a system against a period series");
  verify->add_option("system", system_path, "system JSON file")->required()->check(CLI::ExistingFile);
  verify->add_option("series", series_path, "series JSON file")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", out_path, "report JSON output");

  auto* period = app.add_subcommand("period", "compare the period series with torus quadrature");
  period->add_option("fan", fan_path, "fan JSON file")->required()->check(CLI::ExistingFile);
  period->add_option("--bundle", bundle, "anticanonical, or divisor coefficients c1,...,ct")->capture_default_str();
  period->add_option("--coefficients", coefficients, "one coefficient per A-matrix column, re or re:im, comma separated");
  period->add_option("--points", points, "random points when no coefficients are given")->capture_default_str()->check(CLI::PositiveNumber);
  period->add_option("--ratio", ratio, "dominance ratio of the random points")->capture_default_str()->check(CLI::Range(0.01, 0.9));
  period->add_option("--grid", grid, "quadrature points per torus direction")->capture_default_str()->check(CLI::Range(8, 4096));
  period->add_option("--tolerance", tolerance, "relative agreement required")->capture_default_str();
  period->add_option("--seed", seed, seed_help);
  period->add_option("--out", out_path, "comparison JSON output");

  auto* invariant = app.add_subcommand("invariant", "SL2 invariants of binary forms as solutions of a tautological system");
  invariant->add_option("--form-degree", form_degree, "degree of the binary forms")->capture_default_str()->check(CLI::PositiveNumber);
  invariant->add_option("--degree", degree, "degree of the invariants")->capture_default_str()->check(CLI::PositiveNumber);
  invariant->add_option("--out", out_path, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kVerified : kInvalid;
  }

  try {
    if (*toric) return cmd_toric(fan_path, bundle, order, bound, out_dir);
    if (*flag) return cmd_flag(flag_path, target, samples, seed, out_path.empty() ? "system.json" : out_path, report_path);
    if (*verify) return cmd_verify(system_path, series_path, out_path);
    if (*period) return cmd_period(fan_path, bundle, coefficients, points, ratio, grid, tolerance, seed, out_path);
    if (*invariant) return cmd_invariant(form_degree, degree, out_path);
  } catch (const InputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency check failed: " << e.what() << "\n";
    return kFalsified;
  }
  return kInvalid;
}
