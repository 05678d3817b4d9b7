#include "tautgen/period_engine.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <utility>

namespace tautgen {

namespace {

using Term = std::pair<Exponent, BigRational>;

std::size_t require_interior(const AMatrix& a, long order) {
  a.validate();
  if (order < 0) throw InputError("expansion order must be nonnegative");
  auto i0 = a.interior_index();
  if (!i0) throw InputError("maximal unipotent expansion point absent");
  return *i0;
}

std::vector<int> period_weights(std::size_t n, std::size_t i0) {
  std::vector<int> w(n, 1);
  w[i0] = 0;
  return w;
}

// Compositions of k over the non-interior columns with zero torus weight.
std::vector<Term> step_terms(const std::vector<IntVector>& mus, std::size_t i0, long k) {
  const std::size_t n = mus.size();
  const std::size_t dim = mus[0].size();
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i)
    if (i != i0) cols.push_back(i);
  // reach[c][j]: max |mu_j| over cols[c..]
  std::vector<std::vector<long>> reach(cols.size() + 1, std::vector<long>(dim, 0));
  for (std::size_t c = cols.size(); c-- > 0;)
    for (std::size_t j = 0; j < dim; ++j) reach[c][j] = std::max(reach[c + 1][j], std::labs(mus[cols[c]][j]));

  std::vector<Term> out;
  std::vector<long> parts(cols.size(), 0);
  std::vector<long> weight(dim, 0);
  auto rec = [&](auto&& self, std::size_t c, long left) -> void {
    for (std::size_t j = 0; j < dim; ++j)
      if (std::labs(weight[j]) > left * reach[c][j]) return;
    if (c + 1 == cols.size() || cols.empty()) {
      if (!cols.empty()) {
        parts[c] = left;
        for (std::size_t j = 0; j < dim; ++j) weight[j] += left * mus[cols[c]][j];
      }
      bool zero = true;
      for (long w : weight) zero = zero && w == 0;
      if (zero && (left == 0 || !cols.empty())) {
        Exponent e(n, 0);
        for (std::size_t t = 0; t < cols.size(); ++t) e[cols[t]] = static_cast<int>(parts[t]);
        e[i0] = static_cast<int>(-k - 1);
        BigRational coeff(multinomial(parts));
        if (k % 2) coeff = -coeff;
        out.emplace_back(std::move(e), std::move(coeff));
      }
      if (!cols.empty()) {
        for (std::size_t j = 0; j < dim; ++j) weight[j] -= left * mus[cols[c]][j];
        parts[c] = 0;
      }
      return;
    }
    for (long x = 0; x <= left; ++x) {
      parts[c] = x;
      for (std::size_t j = 0; j < dim; ++j) weight[j] += x * mus[cols[c]][j];
      self(self, c + 1, left - x);
      for (std::size_t j = 0; j < dim; ++j) weight[j] -= x * mus[cols[c]][j];
    }
    parts[c] = 0;
  };
  rec(rec, 0, k);
  return out;
}

std::vector<IntVector> all_mus(const AMatrix& a) {
  std::vector<IntVector> mus;
  for (std::size_t i = 0; i < a.column_count(); ++i) mus.push_back(a.mu(i));
  return mus;
}

void check_coefficients(const AMatrix& a, const std::vector<Complex>& coeffs) {
  if (coeffs.size() != a.column_count()) throw InputError("one coefficient per A-matrix column is required");
}

}  // namespace

PeriodSeries period_series(const AMatrix& a, long order) {
  const std::size_t i0 = require_interior(a, order);
  const std::size_t n = a.column_count();
  auto mus = all_mus(a);
  std::vector<std::vector<Term>> by_step(static_cast<std::size_t>(order) + 1);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k <= order; ++k) by_step[static_cast<std::size_t>(k)] = step_terms(mus, i0, k);

  PeriodSeries p{FormalSeries(n, period_weights(n, i0), order), i0, order};
  for (const auto& terms : by_step)
    for (const auto& [e, c] : terms) p.series.add(e, c);
  return p;
}

void check_period_invariants(const AMatrix& a, const PeriodSeries& p) {
  for (const auto& [e, c] : p.series.coefficients()) {
    for (std::size_t r = 0; r < a.row_count(); ++r) {
      BigInt s = 0;
      for (std::size_t i = 0; i < e.size(); ++i) s += a.matrix(r, i) * e[i];
      if (s != (r == 0 ? -1 : 0)) throw ConsistencyError("period term off the homogeneity lattice");
    }
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != p.i0 && e[i] < 0) throw ConsistencyError("negative exponent away from the interior column");
    long k = -e[p.i0] - 1;
    BigRational normalized = k % 2 ? BigRational(-c) : c;
    if (normalized <= 0 || normalized.get_den() != 1) throw ConsistencyError("period coefficient not a positive integer");
  }
}

VerificationReport verify_system(const TautSystem& system, const PeriodSeries& p) {
  if (system.variable_count() != p.series.variable_count())
    throw InputError("system has " + std::to_string(system.variable_count()) + " variables, series has " +
                     std::to_string(p.series.variable_count()));
  auto ops = system.operators();
  VerificationReport out;
  out.reports.resize(ops.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < ops.size(); ++k) out.reports[k] = annihilates(ops[k], p.series, k);
  for (const auto& r : out.reports) {
    out.passed = out.passed && r.passed;
    if (r.certified_order && (!out.certified_order || *r.certified_order < *out.certified_order))
      out.certified_order = r.certified_order;
  }
  return out;
}

double dominance_ratio(const AMatrix& a, const std::vector<Complex>& coeffs) {
  check_coefficients(a, coeffs);
  auto i0 = a.interior_index();
  if (!i0) throw InputError("maximal unipotent expansion point absent");
  double rest = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (i != *i0) rest += std::abs(coeffs[i]);
  double lead = std::abs(coeffs[*i0]);
  if (!(lead > rest)) throw InputError("outside expansion polydisc");
  return rest / lead;
}

Complex numeric_period(const AMatrix& a, const std::vector<Complex>& coeffs, int grid_size) {
  a.validate();
  dominance_ratio(a, coeffs);
  if (grid_size < 8) throw InputError("grid size must be at least 8");
  const std::size_t dim = a.row_count() - 1;
  const long g = grid_size;
  double points = std::pow(static_cast<double>(g), static_cast<double>(dim));
  if (points > double(1 << 26)) throw InputError("quadrature grid too large");
  const long total = static_cast<long>(points);

  std::vector<Complex> roots(static_cast<std::size_t>(g));
  for (long j = 0; j < g; ++j) roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2 * std::numbers::pi * double(j) / double(g));
  auto mus = all_mus(a);
  std::vector<Complex> values(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (long t = 0; t < total; ++t) {
    std::vector<long> m(dim);
    long rest = t;
    for (std::size_t k = dim; k-- > 0;) {
      m[k] = rest % g;
      rest /= g;
    }
    Complex f = 0;
    for (std::size_t i = 0; i < mus.size(); ++i) {
      long phase = 0;
      for (std::size_t k = 0; k < dim; ++k) phase += mus[i][k] * m[k];
      phase %= g;
      if (phase < 0) phase += g;
      f += coeffs[i] * roots[static_cast<std::size_t>(phase)];
    }
    values[static_cast<std::size_t>(t)] = 1.0 / f;
  }
  Complex sum = 0;
  for (const auto& v : values) sum += v;
  return sum / double(total);
}

Complex evaluate_series(const PeriodSeries& p, const std::vector<Complex>& coeffs) {
  if (coeffs.size() != p.series.variable_count()) throw InputError("one coefficient per variable is required");
  Complex sum = 0;
  for (const auto& [e, c] : p.series.coefficients()) {
    Complex term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= std::pow(coeffs[i], e[i]);
    sum += term;
  }
  return sum;
}

double truncation_tail_bound(const AMatrix& a, const std::vector<Complex>& coeffs, long order) {
  double q = dominance_ratio(a, coeffs);
  return std::pow(q, double(order + 1)) / ((1 - q) * std::abs(coeffs[*a.interior_index()]));
}

std::vector<Complex> sample_dominant(const AMatrix& a, double ratio, std::mt19937_64& rng) {
  if (!(ratio > 0 && ratio < 1)) throw InputError("dominance ratio must lie in (0, 1)");
  auto i0 = a.interior_index();
  if (!i0) throw InputError("maximal unipotent expansion point absent");
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex> c(a.column_count());
  double rest = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = {u(rng), u(rng)};
    if (i != *i0) rest += std::abs(c[i]);
  }
  c[*i0] = std::polar(rest / ratio, std::numbers::pi * u(rng));
  return c;
}

long order_for_tolerance(const AMatrix& a, const std::vector<Complex>& coeffs, double tolerance) {
  long k = 0;
  while (truncation_tail_bound(a, coeffs, k) > tolerance) ++k;
  return k;
}

}  // namespace tautgen
