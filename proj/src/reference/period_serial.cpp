#include <cmath>
#include <map>
#include <numbers>

#include "tautgen/period_engine.hpp"

namespace tautgen::reference {

// Powers g^k of g = sum_{i != i0} a_i y^{mu_i}, one multiplication at a time; the
// y-exponent is a function of the a-exponent, so only the latter is stored.
PeriodSeries period_series(const AMatrix& a, long order) {
  a.validate();
  if (order < 0) throw InputError("expansion order must be nonnegative");
  auto interior = a.interior_index();
  if (!interior) throw InputError("maximal unipotent expansion point absent");
  const std::size_t i0 = *interior;
  const std::size_t n = a.column_count();
  std::vector<int> weights(n, 1);
  weights[i0] = 0;
  PeriodSeries p{FormalSeries(n, weights, order), i0, order};

  std::map<Exponent, BigInt> power{{Exponent(n, 0), BigInt(1)}};
  for (long k = 0; k <= order; ++k) {
    for (const auto& [e, c] : power) {
      bool balanced = true;
      for (std::size_t r = 1; r < a.row_count() && balanced; ++r) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += e[i] * a.matrix(r, i).get_si();
        balanced = s == 0;
      }
      if (!balanced) continue;
      Exponent full = e;
      full[i0] = static_cast<int>(-k - 1);
      p.series.add(full, BigRational(k % 2 ? BigInt(-c) : c));
    }
    if (k == order) break;
    std::map<Exponent, BigInt> next;
    for (const auto& [e, c] : power)
      for (std::size_t i = 0; i < n; ++i) {
        if (i == i0) continue;
        Exponent f = e;
        ++f[i];
        next[f] += c;
      }
    power = std::move(next);
  }
  return p;
}

Complex numeric_period(const AMatrix& a, const std::vector<Complex>& coeffs, int grid_size) {
  a.validate();
  dominance_ratio(a, coeffs);
  if (grid_size < 8) throw InputError("grid size must be at least 8");
  const std::size_t dim = a.row_count() - 1;
  std::vector<long> m(dim, 0);
  Complex sum = 0;
  long count = 0;
  while (true) {
    Complex f = 0;
    for (std::size_t i = 0; i < a.column_count(); ++i) {
      double angle = 0;
      for (std::size_t k = 0; k < dim; ++k)
        angle += 2 * std::numbers::pi * double(a.matrix(k + 1, i).get_si() * m[k]) / grid_size;
      f += coeffs[i] * std::polar(1.0, angle);
    }
    sum += 1.0 / f;
    ++count;
    std::size_t k = 0;
    while (k < dim && ++m[k] == grid_size) m[k++] = 0;
    if (k == dim) break;
  }
  return sum / double(count);
}

}  // namespace tautgen::reference
