#pragma once

// Independent reference computations shared by the unit tests and the acceptance run.

#include <algorithm>
#include <map>
#include <random>
#include <utility>

#include "tautgen/flag_geom.hpp"
#include "tautgen/weyl_ops.hpp"

namespace tautgen::oracle {

// Matrix units E_ab of gl_n acting on wedge^k C^n, built directly with wedge signs.
inline std::vector<std::vector<RationalMatrix>> gl_action_on_wedge(int n, int k, std::vector<std::vector<int>>& basis) {
  basis.clear();
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i);
    basis.push_back(s);
  }
  std::sort(basis.begin(), basis.end());
  const std::size_t m = basis.size();
  std::vector<std::vector<RationalMatrix>> out(static_cast<std::size_t>(n),
                                               std::vector<RationalMatrix>(static_cast<std::size_t>(n), RationalMatrix(m, m)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::size_t c = 0; c < m; ++c) {
        // E_ab replaces e_b by e_a in position, then sorts with a sign.
        auto s = basis[c];
        auto it = std::find(s.begin(), s.end(), b);
        if (it == s.end()) continue;
        *it = a;
        std::vector<int> t = s;
        int inversions = 0;
        for (std::size_t i = 0; i < t.size(); ++i)
          for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (t[i] == t[j]) inversions = -1000;
            if (t[i] > t[j]) ++inversions;
          }
        if (inversions < 0) continue;
        std::sort(t.begin(), t.end());
        std::size_t r = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), t) - basis.begin());
        out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](r, c) += inversions % 2 ? -1 : 1;
      }
  return out;
}

inline RationalMatrix kron(const RationalMatrix& x, const RationalMatrix& y) {
  RationalMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t a = 0; a < x.rows(); ++a)
    for (std::size_t b = 0; b < x.cols(); ++b)
      if (x(a, b) != 0)
        for (std::size_t c = 0; c < y.rows(); ++c)
          for (std::size_t d = 0; d < y.cols(); ++d) out(a * y.rows() + c, b * y.cols() + d) = x(a, b) * y(c, d);
  return out;
}

// Quadrics of the cone over G(k,n) via the Casimir of sl_n on V* (x) V* built from gl_n
// matrix units, with the scalar read off the highest-weight tensor.
inline RationalMatrix kronecker_casimir_quadrics(int n, int k) {
  std::vector<std::vector<int>> basis;
  auto e = gl_action_on_wedge(n, k, basis);
  const std::size_t m = basis.size();
  auto id = RationalMatrix::identity(m);
  std::vector<std::vector<RationalMatrix>> t(static_cast<std::size_t>(n), std::vector<RationalMatrix>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RationalMatrix dual = BigRational(-1) * e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].transpose();
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = kron(dual, id) + kron(id, dual);
    }
  RationalMatrix c(m * m, m * m), trace(m * m, m * m);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      c = c + t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * t[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    trace = trace + t[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
  }
  c = c - make_rational(1, n) * (trace * trace);
  // Highest weight of V* = wedge^k dual: the dual of the last basis vector.
  std::size_t low = m - 1;
  std::size_t hw = low * m + low;
  BigRational scalar = c(hw, hw);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);
  RationalMatrix rows(0, pairs.size());
  for (auto [i, j] : pairs) {
    std::vector<BigRational> sym(m * m);
    sym[i * m + j] += 1;
    sym[j * m + i] += 1;
    auto img = mat_vec(c, sym);
    for (std::size_t x = 0; x < img.size(); ++x) img[x] -= scalar * sym[x];
    std::vector<BigRational> poly(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto [a, b] = pairs[p];
      poly[p] = a == b ? img[a * m + a] : img[a * m + b] + img[b * m + a];
    }
    rows.append_row(poly);
  }
  return rref(rows);
}

// Same quadric space as casimir_quadrics output, with columns in (i <= j) pair order.
inline RationalMatrix in_pair_order(const QuadricSpace& q) {
  const std::size_t m = q.variable_count;
  std::vector<Exponent> order;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Exponent x(m, 0);
      ++x[i];
      ++x[j];
      order.push_back(x);
    }
  RationalMatrix out(q.coefficients.rows(), order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    std::size_t src = static_cast<std::size_t>(std::find(q.monomials.begin(), q.monomials.end(), order[c]) - q.monomials.begin());
    for (std::size_t r = 0; r < out.rows(); ++r) out(r, c) = q.coefficients(r, src);
  }
  return rref(out);
}

inline std::vector<std::vector<int>> all_subsets(int r) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < r; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

// Constant term in y of (sum_i a_i y^{mu_i})^k, by repeated Laurent multiplication.
// Keys: (a-exponent, y-exponent).
inline std::map<Exponent, BigInt> constant_term_of_power(const std::vector<std::vector<long>>& mus, int k) {
  const std::size_t n = mus.size();
  const std::size_t dim = mus.empty() ? 0 : mus[0].size();
  std::map<std::pair<Exponent, std::vector<long>>, BigInt> power{{{Exponent(n, 0), std::vector<long>(dim, 0)}, BigInt(1)}};
  for (int step = 0; step < k; ++step) {
    std::map<std::pair<Exponent, std::vector<long>>, BigInt> next;
    for (const auto& [key, c] : power)
      for (std::size_t i = 0; i < n; ++i) {
        auto e = key.first;
        auto y = key.second;
        ++e[i];
        for (std::size_t j = 0; j < dim; ++j) y[j] += mus[i][j];
        next[{e, y}] += c;
      }
    power = std::move(next);
  }
  std::map<Exponent, BigInt> out;
  for (const auto& [key, c] : power)
    if (std::all_of(key.second.begin(), key.second.end(), [](long v) { return v == 0; })) out[key.first] = c;
  return out;
}

// dim V(lambda) for SL_n from the product over i < j of (l_i - l_j + j - i) / (j - i), with
// l the partition l_i = sum_{k >= i} lambda_k.
inline BigRational weyl_product(const std::vector<long>& lambda) {
  const std::size_t n = lambda.size() + 1;
  std::vector<long> l(n, 0);
  for (std::size_t i = n - 1; i-- > 0;) l[i] = l[i + 1] + lambda[i];
  BigRational d = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d *= make_rational(l[i] - l[j] + long(j - i), long(j - i));
  return d;
}

// Coefficients of the sum of roots e_i - e_j (i < j) outside the Levi of S, paired with
// each simple coroot.
inline std::vector<long> unipotent_radical_weight(int n, const std::vector<int>& s) {
  std::vector<long> out(static_cast<std::size_t>(n - 1), 0);
  auto in_s = [&](int k) { return std::find(s.begin(), s.end(), k) != s.end(); };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool levi = true;
      for (int k = i; k < j; ++k) levi = levi && in_s(k);
      if (levi) continue;
      for (int b = 1; b < n; ++b) out[static_cast<std::size_t>(b - 1)] += (i == b) - (i == b + 1) - (j == b) + (j == b + 1);
    }
  return out;
}

// Four random terms of degree <= max_degree with small rational coefficients.
inline FormalSeries random_polynomial(std::mt19937_64& rng, std::size_t n, int max_degree) {
  auto p = FormalSeries::polynomial(n);
  for (int t = 0; t < 4; ++t) {
    Exponent e(n, 0);
    int d = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
    for (int k = 0; k < d; ++k) ++e[rng() % n];
    p.add(e, make_rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
  }
  return p;
}

}  // namespace tautgen::oracle
