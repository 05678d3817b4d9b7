#pragma once

// Type A (SL_n) root data, explicit representations, Casimir quadrics and the
// Segre-Veronese module W_L for homogeneous spaces G/P_S.

#include <cstdint>
#include <string>
#include <vector>

#include "tautgen/exact_core.hpp"
#include "tautgen/weyl_ops.hpp"

namespace tautgen {

/// Weight in the fundamental-weight basis.
using Weight = std::vector<long>;

struct RootDataA {
  int n = 0;  // G = SL_n
  IntegerMatrix cartan;
  RationalMatrix cartan_inverse;  // Gram matrix of the fundamental weights
  /// Positive roots eps_i - eps_j as (i, j), 0-based, i < j.
  std::vector<std::pair<int, int>> positive_roots;

  int rank() const { return n - 1; }
  /// <a, b> normalized so that <alpha, alpha> = 2.
  BigRational pairing(const Weight& a, const Weight& b) const;
  /// Fundamental coordinates of eps_i - eps_j.
  Weight root(int i, int j) const;
};

RootDataA root_data_A(int n);

/// 1-based simple-root indices not in S, ascending.
std::vector<int> parabolic_complement(const RootDataA& rd, const std::vector<int>& s);

/// 2 rho minus the positive roots spanned by S (S given by 1-based indices).
Weight anticanonical_weight(const RootDataA& rd, const std::vector<int>& s);

BigInt weyl_dimension(const RootDataA& rd, const Weight& lambda);

struct RepData {
  std::size_t dimension = 0;
  std::vector<std::string> labels;
  std::vector<RationalMatrix> e, f, h;  // one per simple root
  Weight highest_weight;
  std::vector<BigRational> highest_weight_vector;
};

/// Exterior power of the defining rep; basis = k-subsets in lex order.
RepData fundamental_rep(int n, int k);
RepData dual_rep(const RepData& v);
/// Sym^d in the monomial basis w^v (exponents in graded-lex order).
RepData symmetric_power_rep(const RepData& v, int d);

/// Raising and lowering operators for every positive root, as nested commutators.
struct RootVectors {
  std::vector<RationalMatrix> raising;   // E_{ij}, i < j, in positive_roots order
  std::vector<RationalMatrix> lowering;  // E_{ji}
};
RootVectors root_vectors(const RootDataA& rd, const RepData& v);

struct LabeledMatrix {
  std::string label;
  RationalMatrix matrix;
};

/// e_1.., f_1.., h_1.., then the scaling element (identity).
std::vector<LabeledMatrix> symmetry_matrices(const RepData& v);

/// Checks [h_i,e_j] = C_ij e_j, [h_i,f_j] = -C_ij f_j, [e_i,f_j] = delta_ij h_i.
bool check_representation(const RootDataA& rd, const RepData& v);

/// Quadratic forms on a space with m coordinates; rows are independent generators.
struct QuadricSpace {
  std::size_t variable_count = 0;
  std::vector<Exponent> monomials;  // degree-2 exponents, graded-lex
  RationalMatrix coefficients;
  std::size_t generator_count = 0;  // before reduction: m(m+1)/2
};

BigRational evaluate_quadric(const QuadricSpace& q, std::size_t row, const std::vector<BigRational>& point);

/// Degree-2 part of the ideal of the highest-weight orbit cone in v, as polynomials in
/// the coordinates of v. form_scale rescales the invariant form.
QuadricSpace casimir_quadrics(const RootDataA& rd, const RepData& v, const BigRational& form_scale = 1);

struct TensorIndexSet {
  std::vector<std::size_t> factor_dims;
  std::vector<long> degrees;
  std::vector<Exponent> exponents;  // concatenated per-factor exponents
};

/// Sym^{n_1} W_1 (x) ... (x) Sym^{n_r} W_r with W_i the fundamental rep for beta_i.
/// Basis b_v = prod multinomial(v_i) w^v, so the coordinate zeta_v of phi(z) is z^v.
struct SegreVeronese {
  RootDataA root_data;
  std::vector<int> complement;  // 1-based beta_i
  std::vector<long> degrees;    // n_beta
  Weight lambda;
  std::vector<RepData> factors;
  TensorIndexSet index;
  RepData module;
};

/// No lower bound on the degrees; segre_veronese enforces n_beta >= 2.
SegreVeronese tensor_module(const RootDataA& rd, const std::vector<int>& complement, const std::vector<long>& degrees);
SegreVeronese segre_veronese(const RootDataA& rd, const std::vector<int>& complement, const std::vector<long>& degrees);

/// phi(z): coordinates z^v for one vector z_i per factor.
std::vector<BigRational> segre_point(const SegreVeronese& sv, const std::vector<std::vector<BigRational>>& z);

/// zeta_u zeta_v - zeta_w zeta_t with u + v = w + t, indices into the exponent list.
struct Binomial {
  std::size_t u, v, w, t;
};
std::vector<Binomial> veronese_binomials(const TensorIndexSet& index);

/// c * prod_alpha exp(t_alpha F_alpha) applied to the highest-weight vector.
std::vector<std::vector<BigRational>> sample_cone_points(const RootDataA& rd, const RepData& v, std::size_t count,
                                                         std::uint64_t seed);

/// Irreducible submodule generated by the highest-weight vector.
struct Submodule {
  RationalMatrix basis;  // rows, RREF
  std::vector<std::size_t> pivots;
  RepData rep;  // action in the coordinates read off at the pivot columns
};
Submodule highest_weight_submodule(const RootDataA& rd, const RepData& w);

/// Linear forms (rows, in the coordinates of sv.module) vanishing on the cone.
RationalMatrix v_perp(const SegreVeronese& sv, std::size_t sample_budget, std::uint64_t seed);

}  // namespace tautgen
