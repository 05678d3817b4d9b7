#pragma once

// Assembly of tautological systems: symmetry operators Z_x + beta(x) and
// constant-coefficient operators from the ideal of the embedded cone.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tautgen/flag_geom.hpp"
#include "tautgen/toric_geom.hpp"
#include "tautgen/weyl_ops.hpp"

namespace tautgen {

struct TautSystem {
  std::string name;
  std::vector<std::string> variables;
  std::vector<DiffOp> symmetry_ops;
  std::vector<RationalMatrix> symmetry_matrices;  // x with symmetry_ops[k] = Z_x + beta[k]
  std::vector<BigRational> beta;
  std::vector<bool> scaling;  // true for the scaling directions of G-hat
  std::vector<std::string> symmetry_labels;
  std::vector<DiffOp> polynomial_ops;
  std::vector<std::string> polynomial_labels;

  std::size_t variable_count() const { return variables.size(); }
  /// Symmetry ops followed by polynomial ops.
  std::vector<DiffOp> operators() const;
  std::vector<std::string> provenance() const;
  void add_symmetry(const std::string& label, const RationalMatrix& x, const BigRational& b, bool is_scaling);
  void add_polynomial(const std::string& label, const DiffOp& op);
};

/// d^{l+} - d^{l-}.
DiffOp box_operator(const std::vector<BigInt>& l);

TautSystem build_toric_gkz(const AMatrix& a);

/// Every d^{l+} - d^{l-} with l in ker A, l != 0 and |l+| = |l-| <= bound, one per +-l.
std::vector<DiffOp> binomial_generators_bounded(const AMatrix& a, int degree_bound);

/// Flag data: bundle coefficients default to the anticanonical weight.
struct FlagInput {
  int n = 0;
  std::vector<int> parabolic_complement;  // 1-based
  std::optional<std::vector<long>> bundle;

  /// Coefficients on the complement roots.
  std::vector<long> degrees(const RootDataA& rd) const;
  std::vector<int> parabolic_complement_check(const RootDataA& rd) const;
};

/// V = V(lambda) inside W_L, or the fundamental representation itself for a single
/// degree-one factor.
RepData flag_representation_V(const FlagInput& input, std::size_t max_dim = 40);

/// System on V = V(lambda) with Casimir quadrics. Refuses dim V > max_dim.
TautSystem build_flag_system_V(const FlagInput& input, std::size_t max_dim = 40);

struct FlagSystemW {
  TautSystem system;
  SegreVeronese data;
  std::size_t first_order_count = 0;
  std::size_t binomial_count = 0;
};

FlagSystemW build_flag_system_W(const FlagInput& input, std::uint64_t seed);

/// Injection j : V -> W (columns = images of the V basis) and the matrices of the
/// same Lie algebra elements on W, one per symmetry op of the V system.
struct Injection {
  RationalMatrix j;
  std::vector<RationalMatrix> w_matrices;
  std::vector<std::string> w_variables;
};

TautSystem transport_system(const TautSystem& on_v, const Injection& inj);

/// p(x) -> p(M y): a polynomial in n variables (exact FormalSeries, nonnegative
/// exponents) rewritten in the m = M.cols() variables y.
FormalSeries substitute_linear(const FormalSeries& p, const RationalMatrix& m);

/// f o pi with pi = j^T : W* -> V*.
FormalSeries pullback(const FormalSeries& f, const RationalMatrix& j);

/// Indices of polynomial ops whose symbol is nonzero at some point.
std::vector<std::size_t> nonvanishing_symbols(const TautSystem& system,
                                             const std::vector<std::vector<BigRational>>& points);

TautSystem build_invariant_system(const RepData& v, int degree);

/// Kernel of all operators on polynomials of the given degree: rows are coefficient
/// vectors over `monomials`.
struct PolynomialSolutions {
  std::vector<Exponent> monomials;
  RationalMatrix basis;
};
PolynomialSolutions polynomial_solutions(const TautSystem& system, int degree);

struct EnhancedSystem {
  TautSystem base;
  std::vector<RationalMatrix> rho;  // one m x m matrix per symmetry op
  std::size_t rank() const { return rho.empty() ? 0 : rho[0].rows(); }
};

EnhancedSystem build_enhanced(const TautSystem& system, const std::vector<RationalMatrix>& rho);

struct EnhancedReport {
  bool passed = true;
  std::optional<long> certified_order;
  std::vector<std::string> failures;
};

/// Checks (Z_x + beta(x)) Pi_l = sum_k rho(x)_{lk} Pi_k and p(d) Pi_l = 0 within the
/// certified range.
EnhancedReport verify_enhanced(const EnhancedSystem& system, const std::vector<FormalSeries>& periods);

}  // namespace tautgen
