#include "tautgen/io.hpp"

#include <fstream>

namespace tautgen {

namespace {

void check_format(const Json& j, const char* kind) {
  if (!j.is_object()) throw InputError(std::string(kind) + ": expected a JSON object");
  if (!j.contains("format") || j["format"] != kFormat)
    throw InputError(std::string(kind) + ": missing or unsupported format tag (want " + kFormat + ")");
}

template <class T>
T field(const Json& j, const char* key, const char* kind) {
  if (!j.contains(key)) throw InputError(std::string(kind) + ": missing field \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(kind) + ": bad field \"" + key + "\": " + e.what());
  }
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_from(const Json& j, std::size_t n) {
  RationalMatrix m(n, n);
  if (!j.is_array() || j.size() != n) throw InputError("system: symmetry matrix has the wrong shape");
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw InputError("system: symmetry matrix has the wrong shape");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_rational(j[r][c].get<std::string>());
  }
  return m;
}

Json optional_long(const std::optional<long>& x) { return x ? Json(*x) : Json(nullptr); }

std::optional<long> optional_long_from(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<long>();
}

}  // namespace

Json to_json(const FanData& fan) {
  Json j{{"format", kFormat}, {"dimension", fan.dimension}, {"rays", fan.rays}};
  if (fan.maximal_cones) j["maximal_cones"] = *fan.maximal_cones;
  return j;
}

FanData fan_from_json(const Json& j) {
  check_format(j, "fan");
  FanData f;
  f.dimension = field<int>(j, "dimension", "fan");
  f.rays = field<std::vector<IntVector>>(j, "rays", "fan");
  if (j.contains("maximal_cones")) f.maximal_cones = field<std::vector<std::vector<int>>>(j, "maximal_cones", "fan");
  for (const auto& r : f.rays)
    if (static_cast<int>(r.size()) != f.dimension) throw InputError("fan: ray length differs from dimension");
  return f;
}

Json to_json(const FlagInput& flag) {
  Json j{{"format", kFormat}, {"n", flag.n}, {"parabolic_complement", flag.parabolic_complement}};
  if (flag.bundle) j["bundle"] = *flag.bundle;
  return j;
}

FlagInput flag_from_json(const Json& j) {
  check_format(j, "flag");
  FlagInput f;
  f.n = field<int>(j, "n", "flag");
  if (f.n < 2) throw InputError("flag: n must be at least 2");
  if (j.contains("parabolic_complement"))
    f.parabolic_complement = field<std::vector<int>>(j, "parabolic_complement", "flag");
  else if (j.contains("parabolic_subset"))
    f.parabolic_complement = parabolic_complement(root_data_A(f.n), field<std::vector<int>>(j, "parabolic_subset", "flag"));
  else
    throw InputError("flag: need parabolic_complement or parabolic_subset");
  if (j.contains("bundle") && !j["bundle"].is_null()) f.bundle = field<std::vector<long>>(j, "bundle", "flag");
  return f;
}

Json to_json(const TautSystem& system) {
  Json beta = Json::array(), sym = Json::array(), poly = Json::array(), mats = Json::array();
  for (std::size_t k = 0; k < system.symmetry_ops.size(); ++k) {
    beta.push_back(to_string(system.beta[k]));
    sym.push_back(system.symmetry_ops[k].to_string());
    mats.push_back(matrix_json(system.symmetry_matrices[k]));
  }
  for (const auto& op : system.polynomial_ops) poly.push_back(op.to_string());
  std::vector<bool> scaling(system.scaling.begin(), system.scaling.end());
  return {{"format", kFormat},
          {"name", system.name},
          {"variables", system.variables},
          {"beta", beta},
          {"symmetry_ops", sym},
          {"polynomial_ops", poly},
          {"provenance", system.provenance()},
          {"symmetry_matrices", mats},
          {"scaling", scaling}};
}

TautSystem system_from_json(const Json& j) {
  check_format(j, "system");
  TautSystem s;
  s.name = field<std::string>(j, "name", "system");
  s.variables = field<std::vector<std::string>>(j, "variables", "system");
  const std::size_t n = s.variables.size();
  auto beta = field<std::vector<std::string>>(j, "beta", "system");
  auto sym = field<std::vector<std::string>>(j, "symmetry_ops", "system");
  auto poly = field<std::vector<std::string>>(j, "polynomial_ops", "system");
  auto labels = field<std::vector<std::string>>(j, "provenance", "system");
  auto mats = field<Json>(j, "symmetry_matrices", "system");
  auto scaling = field<std::vector<bool>>(j, "scaling", "system");
  if (beta.size() != sym.size() || mats.size() != sym.size() || scaling.size() != sym.size() ||
      labels.size() != sym.size() + poly.size())
    throw InputError("system: symmetry fields have inconsistent lengths");
  for (std::size_t k = 0; k < sym.size(); ++k) {
    s.add_symmetry(labels[k], matrix_from(mats[k], n), parse_rational(beta[k]), scaling[k]);
    if (DiffOp::parse(sym[k], n) != s.symmetry_ops.back())
      throw InputError("system: symmetry op " + std::to_string(k) + " disagrees with its matrix and beta");
  }
  for (std::size_t k = 0; k < poly.size(); ++k) s.add_polynomial(labels[sym.size() + k], DiffOp::parse(poly[k], n));
  return s;
}

Json to_json(const FormalSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.coefficients())
    terms.push_back({{"exponent", e}, {"numerator", to_string(BigInt(c.get_num()))}, {"denominator", to_string(BigInt(c.get_den()))}});
  return {{"format", kFormat},
          {"variable_count", s.variable_count()},
          {"grading_weights", s.grading_weights()},
          {"truncation_order", optional_long(s.truncation_order())},
          {"terms", terms}};
}

FormalSeries formal_series_from_json(const Json& j) {
  check_format(j, "series");
  const auto n = field<std::size_t>(j, "variable_count", "series");
  auto weights = field<std::vector<int>>(j, "grading_weights", "series");
  if (weights.size() != n) throw InputError("series: grading_weights length differs from variable_count");
  FormalSeries s(n, weights, optional_long_from(j, "truncation_order"));
  try {
    for (const auto& t : field<Json>(j, "terms", "series")) {
      auto e = t.at("exponent").get<Exponent>();
      if (e.size() != n) throw InputError("series: exponent length differs from variable_count");
      BigRational c = parse_rational(t.at("numerator").get<std::string>() + "/" + t.at("denominator").get<std::string>());
      if (!s.in_range(e)) throw InputError("series: term outside the truncation range");
      s.add(e, c);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("series: ") + e.what());
  }
  return s;
}

Json to_json(const PeriodSeries& p) {
  Json j = to_json(p.series);
  j["interior_index"] = p.i0;
  j["order"] = p.order;
  return j;
}

PeriodSeries period_from_json(const Json& j) {
  PeriodSeries p;
  p.series = formal_series_from_json(j);
  p.i0 = field<std::size_t>(j, "interior_index", "series");
  p.order = field<long>(j, "order", "series");
  if (p.i0 >= p.series.variable_count()) throw InputError("series: interior_index out of range");
  return p;
}

Json to_json(const VerificationReport& r, const TautSystem& system) {
  auto labels = system.provenance();
  Json ops = Json::array();
  for (const auto& a : r.reports) {
    Json residual = to_json(a.residual);
    ops.push_back({{"index", a.operator_index},
                   {"label", a.operator_index < labels.size() ? labels[a.operator_index] : ""},
                   {"passed", a.passed},
                   {"certified_order", optional_long(a.certified_order)},
                   {"residual", residual}});
  }
  return {{"format", kFormat}, {"passed", r.passed}, {"certified_order", optional_long(r.certified_order)}, {"operators", ops}};
}

VerificationReport report_from_json(const Json& j) {
  check_format(j, "report");
  VerificationReport r;
  r.passed = field<bool>(j, "passed", "report");
  r.certified_order = optional_long_from(j, "certified_order");
  for (const auto& o : field<Json>(j, "operators", "report")) {
    AnnihilationReport a;
    a.operator_index = field<std::size_t>(o, "index", "report");
    a.passed = field<bool>(o, "passed", "report");
    a.certified_order = optional_long_from(o, "certified_order");
    a.residual = formal_series_from_json(field<Json>(o, "residual", "report"));
    r.reports.push_back(std::move(a));
  }
  return r;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace tautgen
