#pragma once

// Exact integer and rational linear algebra on top of GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace tautgen {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Raised for malformed input anywhere in the library. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal cross-check fails (should never happen on valid input).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical num/den (mpq_class's two-argument constructor does not reduce).
BigRational make_rational(long num, long den);

/// Parse "p" or "p/q" into a canonical rational.
BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& q);
std::string to_string(const BigInt& z);

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw InputError("ragged matrix initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  std::vector<T> col(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void append_row(const std::vector<T>& values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw InputError("row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix out = a;
    for (auto& v : out.data_) v *= s;
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<BigRational>;

RationalMatrix to_rational(const IntegerMatrix& m);
std::vector<BigRational> mat_vec(const RationalMatrix& m, const std::vector<BigRational>& v);
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// A sublattice of Z^ambient_rank given by a canonical (row HNF) basis.
struct LatticeBasis {
  std::size_t ambient_rank = 0;
  IntegerMatrix basis_rows;

  std::size_t rank() const { return basis_rows.rows(); }
};

struct HermiteResult {
  IntegerMatrix H;
  IntegerMatrix U;  // unimodular, U * M == H
};

struct SmithResult {
  IntegerMatrix S;
  IntegerMatrix U;  // U * M * V == S
  IntegerMatrix V;
};

/// Row Hermite normal form: pivots positive, entries above each pivot in [0, pivot),
/// zero rows last.
HermiteResult hermite_normal_form(const IntegerMatrix& m);

/// Smith normal form with d_1 | d_2 | ... and nonnegative diagonal.
SmithResult smith_normal_form(const IntegerMatrix& m);

/// Z-basis of {l : M l = 0}, in row HNF (so the first nonzero entry of each row is positive).
LatticeBasis integer_kernel(const IntegerMatrix& m);

/// Rows spanning the Q-kernel {x : M x = 0}, in reduced row echelon form.
RationalMatrix rational_kernel(const RationalMatrix& m);

/// Reduced row echelon form; the returned matrix contains only the nonzero rows.
RationalMatrix rref(const RationalMatrix& m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RationalMatrix& m);
BigRational determinant(const RationalMatrix& m);
BigInt determinant(const IntegerMatrix& m);

/// Solve x * M = target for a row vector x when a solution exists.
bool solve_row_combination(const RationalMatrix& m, const std::vector<BigRational>& target,
                           std::vector<BigRational>& x);

/// (sum parts)! / prod(parts!).
BigInt multinomial(const std::vector<long>& parts);
BigInt binomial(long n, long k);

}  // namespace tautgen
