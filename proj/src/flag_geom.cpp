#include "tautgen/flag_geom.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tautgen {

namespace {

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> piv;
  RationalMatrix red = rref(aug, &piv);
  if (piv.size() != n || piv.back() != n - 1) throw ConsistencyError("singular matrix");
  RationalMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = red(r, n + c);
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return out;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// All exponents of total degree d on m variables, lex ascending.
std::vector<Exponent> degree_exponents(std::size_t m, int d) {
  std::vector<Exponent> out;
  Exponent e(m, 0);
  std::vector<Exponent> stack;
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == m) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  if (m == 0) return out;
  rec(rec, 0, d);
  return out;
}

RationalMatrix stack_rows(const std::vector<RationalMatrix>& ms, std::size_t cols) {
  RationalMatrix out(0, cols);
  for (const auto& m : ms)
    for (std::size_t r = 0; r < m.rows(); ++r) out.append_row(m.row(r));
  return out;
}

// Fills highest_weight_vector and highest_weight from the common kernel of the e's.
void locate_highest_weight(RepData& v) {
  RationalMatrix k = rational_kernel(stack_rows(v.e, v.dimension));
  if (k.rows() != 1) throw ConsistencyError("representation is not irreducible (highest-weight space not a line)");
  v.highest_weight_vector = k.row(0);
  std::size_t nz = 0;
  while (v.highest_weight_vector[nz] == 0) ++nz;
  v.highest_weight.clear();
  for (const auto& h : v.h) {
    BigRational eig = mat_vec(h, v.highest_weight_vector)[nz] / v.highest_weight_vector[nz];
    if (eig.get_den() != 1) throw ConsistencyError("non-integral highest weight");
    v.highest_weight.push_back(eig.get_num().get_si());
  }
}

std::string exponent_label(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

// x . b_v = sum_{j,k} X_kj v'_k b_v' (v' = v - d_j + d_k) when scaled, v_j X_kj otherwise.
RationalMatrix sym_action(const RationalMatrix& x, const std::vector<Exponent>& exps,
                          const std::map<Exponent, std::size_t>& index, std::size_t offset, bool scaled) {
  const std::size_t m = x.rows();
  RationalMatrix out(exps.size(), exps.size());
  for (std::size_t col = 0; col < exps.size(); ++col) {
    const Exponent& v = exps[col];
    for (std::size_t j = 0; j < m; ++j) {
      if (v[offset + j] == 0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (x(k, j) == 0) continue;
        Exponent w = v;
        --w[offset + j];
        ++w[offset + k];
        BigRational c = x(k, j) * (scaled ? w[offset + k] : v[offset + j]);
        out(index.at(w), col) += c;
      }
    }
  }
  return out;
}

std::vector<BigRational> exp_nilpotent(const RationalMatrix& f, const BigRational& t, std::vector<BigRational> v) {
  std::vector<BigRational> out = v;
  BigRational coeff = 1;
  for (std::size_t k = 1;; ++k) {
    v = mat_vec(f, v);
    bool zero = std::all_of(v.begin(), v.end(), [](const BigRational& q) { return q == 0; });
    if (zero) break;
    if (k > f.rows()) throw ConsistencyError("lowering operator is not nilpotent");
    coeff *= t;
    coeff /= static_cast<long>(k);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += coeff * v[i];
  }
  return out;
}

using SparsePoly = std::map<std::pair<std::size_t, std::size_t>, BigRational>;

void add_to(SparsePoly& p, std::size_t i, std::size_t j, const BigRational& c) {
  if (c == 0) return;
  auto key = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
  auto it = p.find(key);
  if (it == p.end()) {
    p.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

// Derivation action of x on quadratic forms: x.zeta_i = sum_k x(k,i) zeta_k.
SparsePoly derive(const RationalMatrix& x, const SparsePoly& p) {
  SparsePoly out;
  for (const auto& [key, c] : p) {
    auto [i, j] = key;
    for (std::size_t k = 0; k < x.rows(); ++k) {
      if (x(k, i) != 0) add_to(out, k, j, c * x(k, i));
      if (x(k, j) != 0) add_to(out, i, k, c * x(k, j));
    }
  }
  return out;
}

}  // namespace

BigRational RootDataA::pairing(const Weight& a, const Weight& b) const {
  BigRational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * cartan_inverse(i, j) * b[j];
  return s;
}

Weight RootDataA::root(int i, int j) const {
  Weight w(static_cast<std::size_t>(rank()), 0);
  for (int k = i; k < j; ++k)
    for (int l = 0; l < rank(); ++l) w[static_cast<std::size_t>(l)] += cartan(static_cast<std::size_t>(k), static_cast<std::size_t>(l)).get_si();
  return w;
}

RootDataA root_data_A(int n) {
  if (n < 2) throw InputError("type A root data needs n >= 2");
  RootDataA rd;
  rd.n = n;
  const std::size_t r = static_cast<std::size_t>(n - 1);
  rd.cartan = IntegerMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    rd.cartan(i, i) = 2;
    if (i + 1 < r) rd.cartan(i, i + 1) = rd.cartan(i + 1, i) = -1;
  }
  rd.cartan_inverse = inverse(to_rational(rd.cartan));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rd.positive_roots.emplace_back(i, j);
  return rd;
}

std::vector<int> parabolic_complement(const RootDataA& rd, const std::vector<int>& s) {
  std::set<int> in_s;
  for (int a : s) {
    if (a < 1 || a > rd.rank()) throw InputError("simple root index out of range");
    if (!in_s.insert(a).second) throw InputError("repeated simple root index");
  }
  std::vector<int> out;
  for (int a = 1; a <= rd.rank(); ++a)
    if (!in_s.count(a)) out.push_back(a);
  return out;
}

Weight anticanonical_weight(const RootDataA& rd, const std::vector<int>& s) {
  auto complement = parabolic_complement(rd, s);
  std::set<int> in_s(s.begin(), s.end());
  Weight lambda(static_cast<std::size_t>(rd.rank()), 2);
  for (auto [i, j] : rd.positive_roots) {
    bool spanned = true;
    for (int k = i; k < j; ++k) spanned = spanned && in_s.count(k + 1);
    if (!spanned) continue;
    Weight a = rd.root(i, j);
    for (std::size_t l = 0; l < lambda.size(); ++l) lambda[l] -= a[l];
  }
  for (int a : s)
    if (lambda[static_cast<std::size_t>(a - 1)] != 0) throw ConsistencyError("anticanonical weight not orthogonal to S");
  for (int b : complement)
    if (lambda[static_cast<std::size_t>(b - 1)] < 2) throw ConsistencyError("anticanonical coefficient below 2");
  return lambda;
}

BigInt weyl_dimension(const RootDataA& rd, const Weight& lambda) {
  if (lambda.size() != static_cast<std::size_t>(rd.rank())) throw InputError("weight has wrong length");
  for (long c : lambda)
    if (c < 0) throw InputError("weight is not dominant");
  BigRational d = 1;
  for (auto [i, j] : rd.positive_roots) {
    long num = 0;
    for (int k = i; k < j; ++k) num += lambda[static_cast<std::size_t>(k)] + 1;
    d *= make_rational(num, j - i);
  }
  if (d.get_den() != 1) throw ConsistencyError("Weyl dimension is not an integer");
  return d.get_num();
}

RepData fundamental_rep(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw InputError("fundamental representation index out of range");
  auto basis = subsets(n, k);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  RepData v;
  v.dimension = basis.size();
  for (const auto& s : basis) {
    std::string label;
    for (int x : s) label += std::to_string(x + 1);
    v.labels.push_back(label);
  }
  for (int i = 0; i + 1 < n; ++i) {
    RationalMatrix e(v.dimension, v.dimension), f(v.dimension, v.dimension), h(v.dimension, v.dimension);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& s = basis[c];
      bool has_i = std::count(s.begin(), s.end(), i), has_next = std::count(s.begin(), s.end(), i + 1);
      h(c, c) = static_cast<long>(has_i) - static_cast<long>(has_next);
      // i and i+1 are adjacent, so the swap keeps the subset sorted and no sign appears.
      if (has_next && !has_i) {
        auto t = s;
        *std::find(t.begin(), t.end(), i + 1) = i;
        e(index.at(t), c) = 1;
      }
      if (has_i && !has_next) {
        auto t = s;
        *std::find(t.begin(), t.end(), i) = i + 1;
        f(index.at(t), c) = 1;
      }
    }
    v.e.push_back(std::move(e));
    v.f.push_back(std::move(f));
    v.h.push_back(std::move(h));
  }
  v.highest_weight = Weight(static_cast<std::size_t>(n - 1), 0);
  v.highest_weight[static_cast<std::size_t>(k - 1)] = 1;
  v.highest_weight_vector.assign(v.dimension, BigRational(0));
  v.highest_weight_vector[0] = 1;
  return v;
}

RepData dual_rep(const RepData& v) {
  RepData d;
  d.dimension = v.dimension;
  for (const auto& l : v.labels) d.labels.push_back(l + "*");
  auto neg_t = [](const RationalMatrix& m) { return BigRational(-1) * m.transpose(); };
  for (const auto& m : v.e) d.e.push_back(neg_t(m));
  for (const auto& m : v.f) d.f.push_back(neg_t(m));
  for (const auto& m : v.h) d.h.push_back(neg_t(m));
  locate_highest_weight(d);
  return d;
}

RepData symmetric_power_rep(const RepData& v, int d) {
  if (d < 1) throw InputError("symmetric power degree must be positive");
  auto exps = degree_exponents(v.dimension, d);
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < exps.size(); ++i) index[exps[i]] = i;
  RepData s;
  s.dimension = exps.size();
  for (const auto& e : exps) s.labels.push_back(exponent_label(e));
  for (const auto& m : v.e) s.e.push_back(sym_action(m, exps, index, 0, false));
  for (const auto& m : v.f) s.f.push_back(sym_action(m, exps, index, 0, false));
  for (const auto& m : v.h) s.h.push_back(sym_action(m, exps, index, 0, false));
  locate_highest_weight(s);
  return s;
}

RootVectors root_vectors(const RootDataA& rd, const RepData& v) {
  std::map<std::pair<int, int>, RationalMatrix> up, down;
  for (int len = 1; len < rd.n; ++len)
    for (int i = 0; i + len < rd.n; ++i) {
      int j = i + len;
      if (len == 1) {
        up[{i, j}] = v.e[static_cast<std::size_t>(i)];
        down[{i, j}] = v.f[static_cast<std::size_t>(i)];
      } else {
        up[{i, j}] = commutator(v.e[static_cast<std::size_t>(i)], up.at({i + 1, j}));
        down[{i, j}] = commutator(down.at({i + 1, j}), v.f[static_cast<std::size_t>(i)]);
      }
    }
  RootVectors out;
  for (const auto& key : rd.positive_roots) {
    out.raising.push_back(up.at(key));
    out.lowering.push_back(down.at(key));
  }
  return out;
}

std::vector<LabeledMatrix> symmetry_matrices(const RepData& v) {
  std::vector<LabeledMatrix> out;
  for (std::size_t i = 0; i < v.e.size(); ++i) out.push_back({"e" + std::to_string(i + 1), v.e[i]});
  for (std::size_t i = 0; i < v.f.size(); ++i) out.push_back({"f" + std::to_string(i + 1), v.f[i]});
  for (std::size_t i = 0; i < v.h.size(); ++i) out.push_back({"h" + std::to_string(i + 1), v.h[i]});
  out.push_back({"scale", RationalMatrix::identity(v.dimension)});
  return out;
}

bool check_representation(const RootDataA& rd, const RepData& v) {
  const std::size_t r = static_cast<std::size_t>(rd.rank());
  if (v.e.size() != r || v.f.size() != r || v.h.size() != r) return false;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      BigRational c = rd.cartan(i, j);
      if (!(commutator(v.h[i], v.e[j]) == c * v.e[j])) return false;
      if (!(commutator(v.h[i], v.f[j]) == BigRational(-c) * v.f[j])) return false;
      RationalMatrix ef = commutator(v.e[i], v.f[j]);
      if (i == j ? !(ef == v.h[i]) : !ef.is_zero()) return false;
    }
  return true;
}

BigRational evaluate_quadric(const QuadricSpace& q, std::size_t row, const std::vector<BigRational>& point) {
  BigRational s = 0;
  for (std::size_t c = 0; c < q.monomials.size(); ++c) {
    if (q.coefficients(row, c) == 0) continue;
    BigRational term = q.coefficients(row, c);
    for (std::size_t i = 0; i < point.size(); ++i)
      for (int p = 0; p < q.monomials[c][i]; ++p) term *= point[i];
    s += term;
  }
  return s;
}

QuadricSpace casimir_quadrics(const RootDataA& rd, const RepData& v, const BigRational& form_scale) {
  if (form_scale == 0) throw InputError("form scale must be nonzero");
  RepData dual = dual_rep(v);
  RootVectors rv = root_vectors(rd, dual);
  struct Piece {
    const RationalMatrix* x;
    const RationalMatrix* y;
    BigRational c;
  };
  // Dual basis of the invariant form: E_ij <-> E_ji, h_i <-> sum_j (A^-1)_ij h_j.
  std::vector<Piece> pieces;
  for (std::size_t a = 0; a < rv.raising.size(); ++a) {
    pieces.push_back({&rv.raising[a], &rv.lowering[a], 1 / form_scale});
    pieces.push_back({&rv.lowering[a], &rv.raising[a], 1 / form_scale});
  }
  for (std::size_t i = 0; i < dual.h.size(); ++i)
    for (std::size_t j = 0; j < dual.h.size(); ++j)
      if (rd.cartan_inverse(i, j) != 0) pieces.push_back({&dual.h[i], &dual.h[j], rd.cartan_inverse(i, j) / form_scale});

  const std::size_t m = v.dimension;
  Weight two_rho(v.highest_weight.size(), 2);
  Weight lam_2rho = v.highest_weight;
  for (std::size_t i = 0; i < lam_2rho.size(); ++i) lam_2rho[i] += 2;
  BigRational on_v = rd.pairing(v.highest_weight, lam_2rho) / form_scale;
  RationalMatrix c_mat(m, m);
  for (const auto& p : pieces) c_mat = c_mat + p.c * (*p.x * *p.y);
  if (!(c_mat == on_v * RationalMatrix::identity(m)))
    throw ConsistencyError("Casimir does not act by the expected scalar on the dual representation");

  Weight twice(v.highest_weight.size()), twice_plus(v.highest_weight.size());
  for (std::size_t i = 0; i < twice.size(); ++i) {
    twice[i] = 2 * v.highest_weight[i];
    twice_plus[i] = twice[i] + 2;
  }
  BigRational scalar = rd.pairing(twice_plus, twice) / form_scale;

  QuadricSpace q;
  q.variable_count = m;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> col;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pairs.emplace_back(i, j);
  auto to_exp = [m](std::pair<std::size_t, std::size_t> p) {
    Exponent e(m, 0);
    ++e[p.first];
    ++e[p.second];
    return e;
  };
  std::sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) { return GradedLexLess{}(to_exp(x), to_exp(y)); });
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    col[pairs[c]] = c;
    q.monomials.push_back(to_exp(pairs[c]));
  }
  RationalMatrix images(0, pairs.size());
  for (const auto& pr : pairs) {
    SparsePoly u;
    u[pr] = 1;
    SparsePoly total;
    for (const auto& p : pieces)
      for (const auto& [key, c] : derive(*p.x, derive(*p.y, u))) add_to(total, key.first, key.second, p.c * c);
    add_to(total, pr.first, pr.second, -scalar);
    std::vector<BigRational> row(pairs.size());
    for (const auto& [key, c] : total) row[col.at(key)] = c;
    images.append_row(row);
  }
  q.generator_count = images.rows();
  q.coefficients = rref(images);
  if (q.coefficients.rows() == 0) q.coefficients = RationalMatrix(0, pairs.size());
  return q;
}

SegreVeronese tensor_module(const RootDataA& rd, const std::vector<int>& complement, const std::vector<long>& degrees) {
  if (complement.size() != degrees.size()) throw InputError("one bundle coefficient per complement root is required");
  if (complement.empty()) throw InputError("parabolic complement is empty");
  SegreVeronese sv;
  sv.root_data = rd;
  sv.complement = complement;
  sv.degrees = degrees;
  sv.lambda = Weight(static_cast<std::size_t>(rd.rank()), 0);
  for (std::size_t i = 0; i < complement.size(); ++i) {
    if (complement[i] < 1 || complement[i] > rd.rank()) throw InputError("simple root index out of range");
    if (degrees[i] < 1) throw InputError("bundle coefficients must be positive");
    sv.factors.push_back(fundamental_rep(rd.n, complement[i]));
    sv.index.factor_dims.push_back(sv.factors.back().dimension);
    sv.index.degrees.push_back(degrees[i]);
    sv.lambda[static_cast<std::size_t>(complement[i] - 1)] += degrees[i];
  }
  std::vector<Exponent> exps{Exponent{}};
  for (std::size_t i = 0; i < sv.factors.size(); ++i) {
    std::vector<Exponent> next;
    for (const auto& prefix : exps)
      for (const auto& e : degree_exponents(sv.factors[i].dimension, static_cast<int>(degrees[i]))) {
        Exponent x = prefix;
        x.insert(x.end(), e.begin(), e.end());
        next.push_back(std::move(x));
      }
    exps = std::move(next);
  }
  std::sort(exps.begin(), exps.end(), GradedLexLess{});
  sv.index.exponents = exps;

  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < exps.size(); ++i) index[exps[i]] = i;
  RepData& w = sv.module;
  w.dimension = exps.size();
  for (const auto& e : exps) {
    std::string label;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < sv.factors.size(); ++i) {
      label += exponent_label(Exponent(e.begin() + static_cast<long>(offset),
                                       e.begin() + static_cast<long>(offset + sv.factors[i].dimension)));
      offset += sv.factors[i].dimension;
    }
    w.labels.push_back(label);
  }
  auto lift = [&](auto member, std::size_t g) {
    RationalMatrix total(w.dimension, w.dimension);
    std::size_t offset = 0;
    for (const auto& fac : sv.factors) {
      total = total + sym_action((fac.*member)[g], exps, index, offset, true);
      offset += fac.dimension;
    }
    return total;
  };
  for (std::size_t g = 0; g < static_cast<std::size_t>(rd.rank()); ++g) {
    w.e.push_back(lift(&RepData::e, g));
    w.f.push_back(lift(&RepData::f, g));
    w.h.push_back(lift(&RepData::h, g));
  }
  Exponent hw;
  for (std::size_t i = 0; i < sv.factors.size(); ++i) {
    Exponent part(sv.factors[i].dimension, 0);
    part[0] = static_cast<int>(degrees[i]);
    hw.insert(hw.end(), part.begin(), part.end());
  }
  w.highest_weight = sv.lambda;
  w.highest_weight_vector.assign(w.dimension, BigRational(0));
  w.highest_weight_vector[index.at(hw)] = 1;
  return sv;
}

SegreVeronese segre_veronese(const RootDataA& rd, const std::vector<int>& complement, const std::vector<long>& degrees) {
  for (long d : degrees)
    if (d < 2) throw InputError("Veronese binomial description needs every bundle coefficient n_beta >= 2");
  return tensor_module(rd, complement, degrees);
}

std::vector<BigRational> segre_point(const SegreVeronese& sv, const std::vector<std::vector<BigRational>>& z) {
  if (z.size() != sv.factors.size()) throw InputError("one vector per tensor factor is required");
  std::vector<BigRational> out;
  for (const auto& e : sv.index.exponents) {
    BigRational p = 1;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i].size() != sv.factors[i].dimension) throw InputError("factor vector has wrong length");
      for (std::size_t k = 0; k < z[i].size(); ++k)
        for (int x = 0; x < e[offset + k]; ++x) p *= z[i][k];
      offset += z[i].size();
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Binomial> veronese_binomials(const TensorIndexSet& index) {
  const auto& exps = index.exponents;
  std::map<Exponent, std::vector<std::pair<std::size_t, std::size_t>>> by_sum;
  for (std::size_t a = 0; a < exps.size(); ++a)
    for (std::size_t b = a; b < exps.size(); ++b) {
      Exponent s = exps[a];
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += exps[b][i];
      by_sum[s].emplace_back(a, b);
    }
  std::vector<Binomial> out;
  for (const auto& [sum, pairs] : by_sum)
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t q = p + 1; q < pairs.size(); ++q)
        out.push_back({pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second});
  std::sort(out.begin(), out.end(), [](const Binomial& x, const Binomial& y) {
    return std::tie(x.u, x.v, x.w, x.t) < std::tie(y.u, y.v, y.w, y.t);
  });
  return out;
}

std::vector<std::vector<BigRational>> sample_cone_points(const RootDataA& rd, const RepData& v, std::size_t count,
                                                         std::uint64_t seed) {
  if (count < 1) throw InputError("sample count must be positive");
  RootVectors rv = root_vectors(rd, v);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den_dist(1, 7), scale_dist(1, 7);
  std::vector<std::vector<BigRational>> out;
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<BigRational> p = v.highest_weight_vector;
    for (const auto& f : rv.lowering) {
      long den = den_dist(rng);
      std::uniform_int_distribution<long> num_dist(-3 * den, 3 * den);
      p = exp_nilpotent(f, make_rational(num_dist(rng), den), std::move(p));
    }
    long c = scale_dist(rng);
    if (rng() & 1) c = -c;
    for (auto& x : p) x *= c;
    out.push_back(std::move(p));
  }
  return out;
}

Submodule highest_weight_submodule(const RootDataA& rd, const RepData& w) {
  (void)rd;
  std::vector<std::vector<BigRational>> echelon;  // reduced against each other
  std::vector<std::size_t> lead;
  std::vector<std::vector<BigRational>> queue;
  auto reduce = [&](std::vector<BigRational> x) {
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      if (x[lead[r]] == 0) continue;
      BigRational k = x[lead[r]];
      for (std::size_t c = 0; c < x.size(); ++c)
        if (echelon[r][c] != 0) x[c] -= k * echelon[r][c];
    }
    return x;
  };
  auto insert = [&](std::vector<BigRational> x) {
    x = reduce(std::move(x));
    std::size_t p = 0;
    while (p < x.size() && x[p] == 0) ++p;
    if (p == x.size()) return false;
    BigRational inv = 1 / x[p];
    for (auto& c : x) c *= inv;
    for (auto& row : echelon)
      if (row[p] != 0) {
        BigRational k = row[p];
        for (std::size_t c = 0; c < x.size(); ++c)
          if (x[c] != 0) row[c] -= k * x[c];
      }
    echelon.push_back(x);
    lead.push_back(p);
    return true;
  };
  insert(w.highest_weight_vector);
  queue.push_back(w.highest_weight_vector);
  while (!queue.empty()) {
    auto x = std::move(queue.back());
    queue.pop_back();
    for (const auto& f : w.f) {
      auto y = mat_vec(f, x);
      if (insert(y)) queue.push_back(std::move(y));
    }
  }
  Submodule sub;
  RationalMatrix b(0, w.dimension);
  for (const auto& row : echelon) b.append_row(row);
  sub.basis = rref(b, &sub.pivots);
  const std::size_t d = sub.basis.rows();
  auto restrict = [&](const RationalMatrix& x) {
    RationalMatrix out(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      auto img = mat_vec(x, sub.basis.row(r));
      for (std::size_t rr = 0; rr < d; ++rr) out(rr, r) = img[sub.pivots[rr]];
    }
    return out;
  };
  RepData& v = sub.rep;
  v.dimension = d;
  for (auto p : sub.pivots) v.labels.push_back(w.labels[p]);
  for (const auto& m : w.e) v.e.push_back(restrict(m));
  for (const auto& m : w.f) v.f.push_back(restrict(m));
  for (const auto& m : w.h) v.h.push_back(restrict(m));
  v.highest_weight = w.highest_weight;
  for (auto p : sub.pivots) v.highest_weight_vector.push_back(w.highest_weight_vector[p]);
  return sub;
}

RationalMatrix v_perp(const SegreVeronese& sv, std::size_t sample_budget, std::uint64_t seed) {
  const std::size_t dim_w = sv.module.dimension;
  if (sample_budget < dim_w) throw InputError("sample budget must be at least dim W_L");
  BigInt dim_v = weyl_dimension(sv.root_data, sv.lambda);
  const std::size_t expected = dim_w - dim_v.get_ui();
  std::size_t budget = sample_budget;
  for (int round = 0; round < 4; ++round, budget *= 2) {
    auto points = sample_cone_points(sv.root_data, sv.module, budget, seed + static_cast<std::uint64_t>(round));
    RationalMatrix eval(0, dim_w);
    for (const auto& p : points) eval.append_row(p);
    RationalMatrix k = rational_kernel(eval);
    if (k.rows() == expected) return k.rows() ? k : RationalMatrix(0, dim_w);
  }
  throw ConsistencyError("insufficient samples or representation-theory inconsistency");
}

}  // namespace tautgen
