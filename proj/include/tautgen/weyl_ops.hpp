#pragma once

// Differential operators in the Weyl algebra on a_0..a_p, kept in normal order
// (every a to the left of every d = partial derivative), and the formal series
// they act on.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tautgen/exact_core.hpp"

namespace tautgen {

using Exponent = std::vector<int>;

long total_degree(const Exponent& e);

/// Total degree first, then lexicographic; ascending.
struct GradedLexLess {
  bool operator()(const Exponent& x, const Exponent& y) const;
};

struct OpKey {
  Exponent a;  // powers of a_i
  Exponent d;  // powers of d_i
};

/// Graded-lex on the concatenation (a, d).
struct OpKeyLess {
  bool operator()(const OpKey& x, const OpKey& y) const;
};

class DiffOp {
 public:
  using TermMap = std::map<OpKey, BigRational, OpKeyLess>;

  DiffOp() = default;
  explicit DiffOp(std::size_t variable_count) : n_(variable_count) {}

  static DiffOp constant(std::size_t n, const BigRational& c);
  static DiffOp coordinate(std::size_t n, std::size_t i);  // a_i
  static DiffOp partial(std::size_t n, std::size_t i);     // d_i
  static DiffOp monomial(std::size_t n, const BigRational& c, Exponent a, Exponent d);

  /// Adds c * a^u d^v (already normal ordered); drops the term if it cancels.
  void add_term(const BigRational& c, const Exponent& u, const Exponent& v);

  std::size_t variable_count() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest total power of d over all terms.
  int order() const;
  /// True when every term is free of a (constant coefficients).
  bool has_constant_coefficients() const;

  /// Weighted drop in grading: max over terms of <w, v - u>.
  long grading_drop(const std::vector<int>& weights) const;

  DiffOp& operator+=(const DiffOp& other);
  DiffOp& operator-=(const DiffOp& other);
  friend DiffOp operator+(DiffOp x, const DiffOp& y) { return x += y; }
  friend DiffOp operator-(DiffOp x, const DiffOp& y) { return x -= y; }
  friend DiffOp operator*(const BigRational& c, const DiffOp& x);
  friend bool operator==(const DiffOp& x, const DiffOp& y) { return x.n_ == y.n_ && x.terms_ == y.terms_; }

  /// Canonical text, e.g. "1 * d1*d2 + -1 * d0^2".
  std::string to_string() const;
  static DiffOp parse(const std::string& text, std::size_t variable_count);

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

bool operator==(const OpKey& x, const OpKey& y);

/// Normal-ordered product d1 o d2.
DiffOp op_compose(const DiffOp& d1, const DiffOp& d2);

/// Z_X + shift = sum_{i,j} X(j,i) a_j d_i + shift.
DiffOp linear_vector_field(const RationalMatrix& x, const BigRational& shift);

/// Constant-coefficient operator with symbol sum_k coeff[k] zeta^{exps[k]}.
DiffOp constant_coefficient_op(std::size_t n, const std::map<Exponent, BigRational, GradedLexLess>& symbol);

/// Symbol of a constant-coefficient operator evaluated at a point.
BigRational evaluate_symbol(const DiffOp& op, const std::vector<BigRational>& point);

/// Finite map from exponents (negative entries allowed) to rationals, complete up to
/// a bound on the weighted degree <grading_weights, e>.
class FormalSeries {
 public:
  using CoeffMap = std::map<Exponent, BigRational, GradedLexLess>;

  FormalSeries() = default;
  /// No truncation_order means the series is an exact (finite) Laurent polynomial.
  FormalSeries(std::size_t variable_count, std::vector<int> grading_weights,
               std::optional<long> truncation_order);
  static FormalSeries polynomial(std::size_t variable_count);

  std::size_t variable_count() const { return n_; }
  const std::vector<int>& grading_weights() const { return weights_; }
  std::optional<long> truncation_order() const { return order_; }
  const CoeffMap& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  long grading(const Exponent& e) const;
  bool in_range(const Exponent& e) const;

  /// Adds c to the coefficient at e; ignored outside the certified range.
  void add(const Exponent& e, const BigRational& c);
  BigRational coefficient(const Exponent& e) const;

  FormalSeries& operator+=(const FormalSeries& other);
  FormalSeries& operator-=(const FormalSeries& other);
  FormalSeries scaled(const BigRational& c) const;
  /// Lowers the truncation bound (never raises it) and drops out-of-range terms.
  FormalSeries truncated(std::optional<long> order) const;

  friend bool operator==(const FormalSeries& x, const FormalSeries& y) {
    return x.n_ == y.n_ && x.weights_ == y.weights_ && x.order_ == y.order_ && x.coeffs_ == y.coeffs_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<int> weights_;
  std::optional<long> order_;
  CoeffMap coeffs_;
};

FormalSeries series_product(const FormalSeries& x, const FormalSeries& y);

struct AnnihilationReport {
  std::size_t operator_index = 0;
  FormalSeries residual;
  /// Absent when both operator and series are exact (no truncation).
  std::optional<long> certified_order;
  bool passed = false;
};

FormalSeries op_apply(const DiffOp& d, const FormalSeries& s);
AnnihilationReport annihilates(const DiffOp& d, const FormalSeries& s, std::size_t index = 0);

}  // namespace tautgen
