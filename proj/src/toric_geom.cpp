#include "tautgen/toric_geom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace tautgen {

namespace {

bool graded_lex_less(const IntVector& x, const IntVector& y) {
  long sx = std::accumulate(x.begin(), x.end(), 0L), sy = std::accumulate(y.begin(), y.end(), 0L);
  if (sx != sy) return sx < sy;
  return x < y;
}

IntegerMatrix ray_matrix(const FanData& fan) {
  IntegerMatrix p(fan.ray_count(), static_cast<std::size_t>(fan.dimension));
  for (std::size_t j = 0; j < fan.ray_count(); ++j)
    for (int k = 0; k < fan.dimension; ++k) p(j, static_cast<std::size_t>(k)) = fan.rays[j][static_cast<std::size_t>(k)];
  return p;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

long dot(const IntVector& x, const IntVector& y) {
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

void FanData::validate() const {
  if (dimension <= 0) throw InputError("fan dimension must be positive");
  if (rays.empty()) throw InputError("fan has no rays");
  std::set<IntVector> seen;
  for (const auto& ray : rays) {
    if (ray.size() != static_cast<std::size_t>(dimension)) throw InputError("ray length does not match fan dimension");
    long g = 0;
    for (long v : ray) g = std::gcd(g, std::labs(v));
    if (g != 1) {
      std::ostringstream os;
      os << "ray (";
      for (std::size_t i = 0; i < ray.size(); ++i) os << (i ? "," : "") << ray[i];
      os << ") is not primitive";
      throw InputError(os.str());
    }
    if (!seen.insert(ray).second) throw InputError("rays must be pairwise distinct");
  }
  if (rank(to_rational(ray_matrix(*this))) != static_cast<std::size_t>(dimension))
    throw InputError("standing assumption violated: the rays lie in a hyperplane (they do not span Q^n)");
  if (maximal_cones)
    for (const auto& cone : *maximal_cones)
      for (int j : cone)
        if (j < 0 || static_cast<std::size_t>(j) >= rays.size()) throw InputError("maximal cone refers to a missing ray");
}

FanData projective_space_fan(int d) {
  FanData fan;
  fan.dimension = d;
  for (int i = 0; i < d; ++i) {
    IntVector e(static_cast<std::size_t>(d), 0);
    e[static_cast<std::size_t>(i)] = 1;
    fan.rays.push_back(e);
  }
  fan.rays.push_back(IntVector(static_cast<std::size_t>(d), -1));
  return fan;
}

ClassGroup class_group(const FanData& fan) {
  fan.validate();
  IntegerMatrix p = ray_matrix(fan);
  ClassGroup g;
  g.ray_count = fan.ray_count();
  g.relations = integer_kernel(p.transpose()).basis_rows;
  SmithResult snf = smith_normal_form(p);
  g.torsion_rows = IntegerMatrix(0, fan.ray_count());
  for (std::size_t i = 0; i < std::min(snf.S.rows(), snf.S.cols()); ++i)
    if (snf.S(i, i) > 1) {
      g.torsion.push_back(snf.S(i, i));
      g.torsion_rows.append_row(snf.U.row(i));
    }
  if (g.relations.rows() != fan.ray_count() - static_cast<std::size_t>(fan.dimension))
    throw ConsistencyError("class group free rank differs from t - n");
  return g;
}

DivisorClass class_of(const ClassGroup& group, const IntVector& representative) {
  if (representative.size() != group.ray_count) throw InputError("divisor representative has wrong length");
  DivisorClass c;
  c.representative = representative;
  for (std::size_t r = 0; r < group.relations.rows(); ++r) {
    BigInt s = 0;
    for (std::size_t j = 0; j < group.ray_count; ++j) s += group.relations(r, j) * representative[j];
    c.free.push_back(s);
  }
  for (std::size_t r = 0; r < group.torsion.size(); ++r) {
    BigInt s = 0;
    for (std::size_t j = 0; j < group.ray_count; ++j) s += group.torsion_rows(r, j) * representative[j];
    BigInt m;
    mpz_fdiv_r(m.get_mpz_t(), s.get_mpz_t(), group.torsion[r].get_mpz_t());
    c.torsion.push_back(m);
  }
  return c;
}

DivisorClass canonical_class(const FanData& fan) {
  return class_of(class_group(fan), IntVector(fan.ray_count(), -1));
}

std::vector<DivisorClass> boundary_divisor_classes(const FanData& fan) {
  ClassGroup g = class_group(fan);
  std::vector<DivisorClass> out;
  for (std::size_t j = 0; j < fan.ray_count(); ++j) {
    IntVector e(fan.ray_count(), 0);
    e[j] = 1;
    out.push_back(class_of(g, e));
  }
  return out;
}

MonomialBasis sections(const FanData& fan, const IntVector& c) {
  fan.validate();
  if (c.size() != fan.ray_count()) throw InputError("divisor representative has wrong length");
  const std::size_t n = static_cast<std::size_t>(fan.dimension);
  const std::size_t t = fan.ray_count();

  // Vertices of {mu : <mu, nu_j> >= -c_j}: feasible solutions of n tight inequalities.
  std::vector<std::vector<BigRational>> vertices;
  for_each_subset(t, n, [&](const std::vector<std::size_t>& rows) {
    RationalMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) aug(i, k) = fan.rays[rows[i]][k];
      aug(i, n) = -c[rows[i]];
    }
    std::vector<std::size_t> piv;
    RationalMatrix red = rref(aug, &piv);
    if (piv.size() != n || piv.back() != n - 1) return;  // singular or inconsistent
    std::vector<BigRational> mu(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = red(i, n);
    for (std::size_t j = 0; j < t; ++j) {
      BigRational s = c[j];
      for (std::size_t k = 0; k < n; ++k) s += mu[k] * fan.rays[j][k];
      if (s < 0) return;
    }
    vertices.push_back(std::move(mu));
  });

  MonomialBasis basis;
  basis.representative = c;
  if (vertices.empty()) return basis;

  // Nonempty and pointed: bounded iff no extreme ray of the recession cone.
  bool unbounded = false;
  for_each_subset(t, n - 1, [&](const std::vector<std::size_t>& rows) {
    if (unbounded) return;
    RationalMatrix m(0, n);
    for (auto r : rows) {
      std::vector<BigRational> row(fan.rays[r].begin(), fan.rays[r].end());
      m.append_row(row);
    }
    if (n - 1 == 0) m = RationalMatrix(1, n);
    RationalMatrix ker = rational_kernel(m);
    if (ker.rows() != 1) return;
    bool all_nonneg = true, all_nonpos = true;
    for (std::size_t j = 0; j < t; ++j) {
      BigRational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += ker(0, k) * fan.rays[j][k];
      if (s < 0) all_nonneg = false;
      if (s > 0) all_nonpos = false;
    }
    if (all_nonneg || all_nonpos) unbounded = true;
  });
  if (unbounded) throw InputError("section polytope unbounded");

  IntVector lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    BigRational mn = vertices[0][k], mx = vertices[0][k];
    for (const auto& v : vertices) {
      if (v[k] < mn) mn = v[k];
      if (v[k] > mx) mx = v[k];
    }
    BigInt fl, ce;
    mpz_fdiv_q(fl.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(ce.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    lo[k] = fl.get_si();
    hi[k] = ce.get_si();
  }

  std::vector<IntVector> points;
  IntVector mu = lo;
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < t && ok; ++j) ok = dot(mu, fan.rays[j]) + c[j] >= 0;
    if (ok) points.push_back(mu);
    std::size_t k = 0;
    while (k < n && mu[k] == hi[k]) mu[k] = lo[k], ++k;
    if (k == n) break;
    ++mu[k];
  }
  std::sort(points.begin(), points.end(), graded_lex_less);
  for (const auto& p : points) {
    IntVector a(t);
    for (std::size_t j = 0; j < t; ++j) a[j] = dot(p, fan.rays[j]) + c[j];
    basis.monomials.push_back(std::move(a));
    basis.laurent_exponents.push_back(p);
  }
  return basis;
}

MonomialBasis anticanonical_sections(const FanData& fan) { return sections(fan, IntVector(fan.ray_count(), 1)); }

IntVector AMatrix::mu(std::size_t i) const {
  IntVector out;
  for (std::size_t r = 1; r < matrix.rows(); ++r) out.push_back(matrix(r, i).get_si());
  return out;
}

std::optional<std::size_t> AMatrix::interior_index() const {
  for (std::size_t i = 0; i < matrix.cols(); ++i) {
    bool zero = true;
    for (std::size_t r = 1; r < matrix.rows(); ++r)
      if (matrix(r, i) != 0) zero = false;
    if (zero) return i;
  }
  return std::nullopt;
}

void AMatrix::validate() const {
  if (matrix.rows() == 0 || matrix.cols() == 0) throw InputError("empty A-matrix");
  for (std::size_t i = 0; i < matrix.cols(); ++i)
    if (matrix(0, i) != 1) throw InputError("A-matrix first row must be all ones");
  std::set<IntVector> seen;
  for (std::size_t i = 0; i < matrix.cols(); ++i)
    if (!seen.insert(mu(i)).second) throw InputError("A-matrix has repeated columns");
}

AMatrix a_matrix_from_columns(const std::vector<IntVector>& mus) {
  if (mus.empty()) throw InputError("A-matrix needs at least one column");
  const std::size_t n = mus[0].size();
  AMatrix a;
  a.matrix = IntegerMatrix(n + 1, mus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    if (mus[i].size() != n) throw InputError("A-matrix columns have different lengths");
    a.matrix(0, i) = 1;
    for (std::size_t k = 0; k < n; ++k) a.matrix(k + 1, i) = mus[i][k];
  }
  return a;
}

AMatrix a_matrix(const MonomialBasis& basis) {
  auto mus = basis.laurent_exponents;
  std::sort(mus.begin(), mus.end(), graded_lex_less);
  return a_matrix_from_columns(mus);
}

std::optional<BigInt> cy_power_check(const FanData& fan, const DivisorClass& bundle) {
  ClassGroup g = class_group(fan);
  DivisorClass k = class_of(g, IntVector(fan.ray_count(), -1));
  DivisorClass l = class_of(g, bundle.representative);

  auto torsion_ok = [&](const BigInt& power) {
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
      BigInt diff = k.torsion[i] - power * l.torsion[i];
      if (diff % g.torsion[i] != 0) return false;
    }
    return true;
  };

  std::size_t pivot = l.free.size();
  for (std::size_t i = 0; i < l.free.size(); ++i)
    if (l.free[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == l.free.size()) {
    for (const auto& v : k.free)
      if (v != 0) return std::nullopt;
    BigInt modulus = 1;
    for (const auto& d : g.torsion) modulus = lcm(modulus, d);
    if (torsion_ok(1)) return BigInt(1);
    for (BigInt p = 0; p < modulus; ++p)
      if (torsion_ok(p)) return p;
    return std::nullopt;
  }
  if (k.free[pivot] % l.free[pivot] != 0) return std::nullopt;
  BigInt power = k.free[pivot] / l.free[pivot];
  for (std::size_t i = 0; i < l.free.size(); ++i)
    if (k.free[i] != power * l.free[i]) return std::nullopt;
  if (!torsion_ok(power)) return std::nullopt;
  return power;
}

}  // namespace tautgen
