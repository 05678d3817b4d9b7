#include "tautgen/taut_builder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tautgen {

namespace {

std::vector<Exponent> monomials_of_degree(std::size_t n, int d) {
  std::vector<Exponent> out;
  if (n == 0) return out;
  Exponent e(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      e[pos] = left;
      out.push_back(e);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<std::string> indexed(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> piv;
  RationalMatrix red = rref(aug, &piv);
  if (n && (piv.size() != n || piv.back() != n - 1)) throw InputError("matrix is not invertible");
  RationalMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = red(r, n + c);
  return out;
}

FormalSeries symbol_of(const DiffOp& op) {
  if (!op.has_constant_coefficients()) throw InputError("polynomial operator has non-constant coefficients");
  auto p = FormalSeries::polynomial(op.variable_count());
  for (const auto& [key, c] : op.terms()) p.add(key.d, c);
  return p;
}

DiffOp op_from_symbol(const FormalSeries& p) {
  std::map<Exponent, BigRational, GradedLexLess> sym(p.coefficients().begin(), p.coefficients().end());
  return constant_coefficient_op(p.variable_count(), sym);
}

DiffOp first_order(const std::vector<BigRational>& coeffs) {
  DiffOp op(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) {
      Exponent d(coeffs.size(), 0);
      d[i] = 1;
      op.add_term(coeffs[i], Exponent(coeffs.size(), 0), d);
    }
  return op;
}

std::vector<BigRational> flatten(const RationalMatrix& m) { return m.data(); }

void add_rep_symmetries(TautSystem& sys, const RepData& v, const BigRational& euler_shift) {
  for (const auto& [label, x] : symmetry_matrices(v)) {
    bool scaling = label == "scale";
    sys.add_symmetry(scaling ? "euler" : label, x, scaling ? euler_shift : BigRational(0), scaling);
  }
}

}  // namespace

std::vector<DiffOp> TautSystem::operators() const {
  auto out = symmetry_ops;
  out.insert(out.end(), polynomial_ops.begin(), polynomial_ops.end());
  return out;
}

std::vector<std::string> TautSystem::provenance() const {
  auto out = symmetry_labels;
  out.insert(out.end(), polynomial_labels.begin(), polynomial_labels.end());
  return out;
}

void TautSystem::add_symmetry(const std::string& label, const RationalMatrix& x, const BigRational& b, bool is_scaling) {
  symmetry_ops.push_back(linear_vector_field(x, b));
  symmetry_matrices.push_back(x);
  beta.push_back(b);
  scaling.push_back(is_scaling);
  symmetry_labels.push_back(label);
}

void TautSystem::add_polynomial(const std::string& label, const DiffOp& op) {
  polynomial_ops.push_back(op);
  polynomial_labels.push_back(label);
}

DiffOp box_operator(const std::vector<BigInt>& l) {
  const std::size_t n = l.size();
  Exponent plus(n, 0), minus(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (l[i] > 0) plus[i] = static_cast<int>(l[i].get_si());
    if (l[i] < 0) minus[i] = static_cast<int>(-l[i].get_si());
  }
  DiffOp op(n);
  op.add_term(1, Exponent(n, 0), plus);
  op.add_term(-1, Exponent(n, 0), minus);
  return op;
}

TautSystem build_toric_gkz(const AMatrix& a) {
  a.validate();
  TautSystem sys;
  sys.name = "gkz";
  sys.variables = indexed("a", a.column_count());
  const std::size_t n = a.column_count();
  for (std::size_t k = 0; k < a.row_count(); ++k) {
    RationalMatrix x(n, n);
    for (std::size_t i = 0; i < n; ++i) x(i, i) = a.matrix(k, i);
    if (k == 0)
      sys.add_symmetry("euler beta=1", x, 1, true);
    else
      sys.add_symmetry("torus " + std::to_string(k) + " beta=0", x, 0, false);
  }
  auto ker = integer_kernel(a.matrix);
  for (std::size_t r = 0; r < ker.rank(); ++r) {
    auto l = ker.basis_rows.row(r);
    std::string label = "box l=(";
    for (std::size_t i = 0; i < l.size(); ++i) label += (i ? "," : "") + to_string(l[i]);
    sys.add_polynomial(label + ")", box_operator(l));
  }
  return sys;
}

std::vector<DiffOp> binomial_generators_bounded(const AMatrix& a, int degree_bound) {
  a.validate();
  const std::size_t n = a.column_count();
  std::vector<DiffOp> out;
  for (int d = 1; d <= degree_bound; ++d) {
    std::map<std::vector<BigInt>, std::vector<Exponent>> fibres;
    for (const auto& u : monomials_of_degree(n, d)) {
      std::vector<BigInt> image(a.row_count());
      for (std::size_t k = 0; k < a.row_count(); ++k)
        for (std::size_t i = 0; i < n; ++i) image[k] += a.matrix(k, i) * u[i];
      fibres[image].push_back(u);
    }
    std::vector<std::pair<Exponent, Exponent>> pairs;
    for (const auto& [image, us] : fibres)
      for (std::size_t p = 0; p < us.size(); ++p)
        for (std::size_t q = 0; q < us.size(); ++q) {
          if (p == q) continue;
          bool disjoint = true;
          for (std::size_t i = 0; i < n && disjoint; ++i) disjoint = !(us[p][i] && us[q][i]);
          if (!disjoint) continue;
          // l = u - w with first nonzero entry positive
          std::size_t first = 0;
          while (us[p][first] == us[q][first]) ++first;
          if (us[p][first] > us[q][first]) pairs.emplace_back(us[p], us[q]);
        }
    std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      if (!(x.first == y.first)) return GradedLexLess{}(y.first, x.first);
      return GradedLexLess{}(y.second, x.second);
    });
    for (const auto& [u, w] : pairs) {
      DiffOp op(n);
      op.add_term(1, Exponent(n, 0), u);
      op.add_term(-1, Exponent(n, 0), w);
      out.push_back(op);
    }
  }
  return out;
}

std::vector<long> FlagInput::degrees(const RootDataA& rd) const {
  auto complement = parabolic_complement_check(rd);
  if (bundle) {
    if (bundle->size() != complement.size()) throw InputError("bundle needs one coefficient per complement root");
    return *bundle;
  }
  std::set<int> comp(complement.begin(), complement.end());
  std::vector<int> s;
  for (int a = 1; a <= rd.rank(); ++a)
    if (!comp.count(a)) s.push_back(a);
  Weight lambda = anticanonical_weight(rd, s);
  std::vector<long> out;
  for (int b : complement) out.push_back(lambda[static_cast<std::size_t>(b - 1)]);
  return out;
}

std::vector<int> FlagInput::parabolic_complement_check(const RootDataA& rd) const {
  if (parabolic_complement.empty()) throw InputError("parabolic complement must be nonempty");
  std::vector<int> c = parabolic_complement;
  std::sort(c.begin(), c.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InputError("repeated complement root");
  for (int b : c)
    if (b < 1 || b > rd.rank()) throw InputError("complement root index out of range");
  if (c != parabolic_complement) throw InputError("parabolic complement must be listed in increasing order");
  return c;
}

RepData flag_representation_V(const FlagInput& input, std::size_t max_dim) {
  auto rd = root_data_A(input.n);
  auto degrees = input.degrees(rd);
  auto sv = tensor_module(rd, input.parabolic_complement, degrees);
  BigInt dim_v = weyl_dimension(rd, sv.lambda);
  if (dim_v > max_dim)
    throw InputError("dim V = " + to_string(dim_v) + " exceeds the limit " + std::to_string(max_dim) +
                     " for the quadric construction");
  if (sv.factors.size() == 1 && degrees[0] == 1) return sv.factors[0];
  return sv.module.dimension == dim_v ? sv.module : highest_weight_submodule(rd, sv.module).rep;
}

TautSystem build_flag_system_V(const FlagInput& input, std::size_t max_dim) {
  auto rd = root_data_A(input.n);
  RepData v = flag_representation_V(input, max_dim);
  TautSystem sys;
  sys.name = "flag-V";
  sys.variables = v.labels;
  add_rep_symmetries(sys, v, 1);
  auto q = casimir_quadrics(rd, v);
  for (std::size_t r = 0; r < q.coefficients.rows(); ++r) {
    std::map<Exponent, BigRational, GradedLexLess> sym;
    for (std::size_t c = 0; c < q.monomials.size(); ++c)
      if (q.coefficients(r, c) != 0) sym[q.monomials[c]] = q.coefficients(r, c);
    sys.add_polynomial("casimir quadric " + std::to_string(r + 1), constant_coefficient_op(v.dimension, sym));
  }
  return sys;
}

FlagSystemW build_flag_system_W(const FlagInput& input, std::uint64_t seed) {
  auto rd = root_data_A(input.n);
  FlagSystemW out;
  out.data = segre_veronese(rd, input.parabolic_complement, input.degrees(rd));
  const RepData& w = out.data.module;
  TautSystem& sys = out.system;
  sys.name = "flag-W";
  sys.variables = w.labels;
  add_rep_symmetries(sys, w, 1);
  RationalMatrix perp = v_perp(out.data, w.dimension + 8, seed);
  for (std::size_t r = 0; r < perp.rows(); ++r) sys.add_polynomial("vperp " + std::to_string(r + 1), first_order(perp.row(r)));
  out.first_order_count = perp.rows();
  const std::size_t n = w.dimension;
  for (const auto& b : veronese_binomials(out.data.index)) {
    Exponent uv(n, 0), wt(n, 0);
    ++uv[b.u];
    ++uv[b.v];
    ++wt[b.w];
    ++wt[b.t];
    DiffOp op(n);
    op.add_term(1, Exponent(n, 0), uv);
    op.add_term(-1, Exponent(n, 0), wt);
    sys.add_polynomial("veronese " + w.labels[b.u] + "+" + w.labels[b.v] + "=" + w.labels[b.w] + "+" + w.labels[b.t], op);
  }
  out.binomial_count = sys.polynomial_ops.size() - perp.rows();
  return out;
}

FormalSeries substitute_linear(const FormalSeries& p, const RationalMatrix& m) {
  if (p.truncation_order()) throw InputError("substitution needs an exact polynomial");
  if (m.rows() != p.variable_count()) throw InputError("substitution matrix has wrong row count");
  const std::size_t out_n = m.cols();
  std::vector<FormalSeries> forms;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto f = FormalSeries::polynomial(out_n);
    for (std::size_t k = 0; k < out_n; ++k) {
      Exponent e(out_n, 0);
      e[k] = 1;
      f.add(e, m(i, k));
    }
    forms.push_back(f);
  }
  std::map<std::pair<std::size_t, int>, FormalSeries> powers;
  auto power = [&](std::size_t i, int k) -> const FormalSeries& {
    auto key = std::make_pair(i, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    FormalSeries r = FormalSeries::polynomial(out_n);
    r.add(Exponent(out_n, 0), 1);
    for (int j = 0; j < k; ++j) r = series_product(r, forms[i]);
    return powers.emplace(key, std::move(r)).first->second;
  };
  auto out = FormalSeries::polynomial(out_n);
  for (const auto& [e, c] : p.coefficients()) {
    FormalSeries term = FormalSeries::polynomial(out_n);
    term.add(Exponent(out_n, 0), c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw InputError("substitution needs nonnegative exponents");
      if (e[i] > 0) term = series_product(term, power(i, e[i]));
    }
    out += term;
  }
  return out;
}

FormalSeries pullback(const FormalSeries& f, const RationalMatrix& j) { return substitute_linear(f, j.transpose()); }

TautSystem transport_system(const TautSystem& on_v, const Injection& inj) {
  const std::size_t dv = on_v.variable_count();
  const RationalMatrix& j = inj.j;
  if (j.cols() != dv) throw InputError("injection column count must equal dim V");
  if (rank(j) != dv) throw InputError("injection is not injective");
  const std::size_t dw = j.rows();
  if (inj.w_matrices.size() != on_v.symmetry_matrices.size())
    throw InputError("one W matrix per symmetry operator is required");
  TautSystem sys;
  sys.name = on_v.name + "-transported";
  sys.variables = inj.w_variables.empty() ? indexed("b", dw) : inj.w_variables;
  if (sys.variables.size() != dw) throw InputError("W variable labels have wrong length");
  for (std::size_t k = 0; k < inj.w_matrices.size(); ++k) {
    const auto& xw = inj.w_matrices[k];
    if (xw.rows() != dw || xw.cols() != dw) throw InputError("W matrix has wrong shape");
    if (!(j * on_v.symmetry_matrices[k] == xw * j)) throw InputError("injection is not equivariant for " + on_v.symmetry_labels[k]);
    sys.add_symmetry(on_v.symmetry_labels[k], xw, on_v.beta[k], on_v.scaling[k]);
  }
  RationalMatrix jt = j.transpose();
  RationalMatrix left = inverse(jt * j) * jt;  // left * j = identity
  for (std::size_t k = 0; k < on_v.polynomial_ops.size(); ++k)
    sys.add_polynomial(on_v.polynomial_labels[k], op_from_symbol(substitute_linear(symbol_of(on_v.polynomial_ops[k]), left)));
  RationalMatrix perp = rational_kernel(jt);
  for (std::size_t r = 0; r < perp.rows(); ++r) sys.add_polynomial("vperp " + std::to_string(r + 1), first_order(perp.row(r)));
  return sys;
}

TautSystem build_invariant_system(const RepData& v, int degree) {
  if (degree < 1) throw InputError("invariant degree must be at least 1");
  TautSystem sys;
  sys.name = "invariant";
  sys.variables = indexed("a", v.dimension);
  add_rep_symmetries(sys, v, -degree);
  sys.symmetry_labels.back() = "euler beta=-" + std::to_string(degree);
  return sys;
}

std::vector<std::size_t> nonvanishing_symbols(const TautSystem& system,
                                             const std::vector<std::vector<BigRational>>& points) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < system.polynomial_ops.size(); ++k)
    for (const auto& p : points)
      if (evaluate_symbol(system.polynomial_ops[k], p) != 0) {
        out.push_back(k);
        break;
      }
  return out;
}

PolynomialSolutions polynomial_solutions(const TautSystem& system, int degree) {
  if (degree < 0) throw InputError("degree must be nonnegative");
  const std::size_t n = system.variable_count();
  PolynomialSolutions out;
  out.monomials = monomials_of_degree(n, degree);
  std::map<std::pair<std::size_t, Exponent>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, BigRational>>> columns(out.monomials.size());
  auto ops = system.operators();
  for (std::size_t c = 0; c < out.monomials.size(); ++c) {
    auto m = FormalSeries::polynomial(n);
    m.add(out.monomials[c], 1);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      FormalSeries image = op_apply(ops[k], m);
      for (const auto& [e, v] : image.coefficients()) {
        auto key = std::make_pair(k, e);
        auto it = row_of.find(key);
        if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
        columns[c].emplace_back(it->second, v);
      }
    }
  }
  RationalMatrix a(row_of.size(), out.monomials.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c]) a(r, c) = v;
  out.basis = row_of.empty() ? RationalMatrix::identity(out.monomials.size()) : rational_kernel(a);
  return out;
}

EnhancedSystem build_enhanced(const TautSystem& system, const std::vector<RationalMatrix>& rho) {
  const std::size_t s = system.symmetry_ops.size();
  if (rho.size() != s) throw InputError("one rho matrix per symmetry operator is required");
  const std::size_t m = rho.empty() ? 0 : rho[0].rows();
  for (const auto& r : rho)
    if (r.rows() != m || r.cols() != m) throw InputError("rho matrices must be square of equal size");
  for (std::size_t k = 0; k < s; ++k)
    if (system.scaling[k] && !rho[k].is_zero())
      throw InputError("rho must vanish on the scaling direction " + system.symmetry_labels[k]);

  const std::size_t dim = system.variable_count();
  RationalMatrix flat(0, dim * dim);
  for (const auto& x : system.symmetry_matrices) flat.append_row(flatten(x));
  // Linear relations among the x's must hold for rho too.
  RationalMatrix relations = rational_kernel(flat.transpose());
  for (std::size_t r = 0; r < relations.rows(); ++r) {
    RationalMatrix sum(m, m);
    for (std::size_t k = 0; k < s; ++k) sum = sum + relations(r, k) * rho[k];
    if (!sum.is_zero()) throw InputError("rho does not respect a linear relation among the symmetry matrices");
  }
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b) {
      RationalMatrix c = commutator(system.symmetry_matrices[a], system.symmetry_matrices[b]);
      std::vector<BigRational> coeffs;
      if (!solve_row_combination(flat, flatten(c), coeffs))
        throw InputError("symmetry matrices do not close under brackets");
      RationalMatrix expected(m, m);
      for (std::size_t k = 0; k < s; ++k) expected = expected + coeffs[k] * rho[k];
      if (!(commutator(rho[a], rho[b]) == expected))
        throw InputError("rho is not a Lie algebra homomorphism on (" + system.symmetry_labels[a] + ", " +
                         system.symmetry_labels[b] + ")");
    }
  return {system, rho};
}

EnhancedReport verify_enhanced(const EnhancedSystem& es, const std::vector<FormalSeries>& periods) {
  const std::size_t m = es.rank();
  if (periods.size() != m) throw InputError("one series per basis element of rho is required");
  for (const auto& p : periods)
    if (p.variable_count() != es.base.variable_count()) throw InputError("series variable-count mismatch");
  EnhancedReport report;
  auto note_order = [&](std::optional<long> o) {
    if (o && (!report.certified_order || *o < *report.certified_order)) report.certified_order = o;
  };
  for (std::size_t k = 0; k < es.base.symmetry_ops.size(); ++k)
    for (std::size_t l = 0; l < m; ++l) {
      FormalSeries residual = op_apply(es.base.symmetry_ops[k], periods[l]);
      for (std::size_t j = 0; j < m; ++j)
        if (es.rho[k](l, j) != 0) residual -= periods[j].scaled(es.rho[k](l, j));
      note_order(residual.truncation_order());
      if (!residual.empty())
        report.failures.push_back(es.base.symmetry_labels[k] + " on component " + std::to_string(l));
    }
  for (std::size_t k = 0; k < es.base.polynomial_ops.size(); ++k)
    for (std::size_t l = 0; l < m; ++l) {
      auto r = annihilates(es.base.polynomial_ops[k], periods[l], k);
      note_order(r.certified_order);
      if (!r.passed) report.failures.push_back(es.base.polynomial_labels[k] + " on component " + std::to_string(l));
    }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace tautgen
