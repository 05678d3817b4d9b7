#include "tautgen/exact_core.hpp"

#include <algorithm>
#include <utility>

namespace tautgen {

BigRational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw InputError("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw InputError("malformed rational '" + text + "'");
  BigInt n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  BigRational q(n, d);
  q.canonicalize();
  return q;
}

BigRational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigRational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

std::vector<BigRational> mat_vec(const RationalMatrix& m, const std::vector<BigRational>& v) {
  if (m.cols() != v.size()) throw InputError("matrix-vector dimension mismatch");
  std::vector<BigRational> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0 && v[c] != 0) out[r] += m(r, c) * v[c];
  return out;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b, applied to one matrix.
void combine_rows(IntegerMatrix& m, std::size_t a, std::size_t b, const BigInt& s, const BigInt& t,
                  const BigInt& u, const BigInt& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    BigInt x = m(a, c), y = m(b, c);
    m(a, c) = s * x + t * y;
    m(b, c) = u * x + v * y;
  }
}

void combine_cols(IntegerMatrix& m, std::size_t a, std::size_t b, const BigInt& s, const BigInt& t,
                  const BigInt& u, const BigInt& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt x = m(r, a), y = m(r, b);
    m(r, a) = s * x + t * y;
    m(r, b) = u * x + v * y;
  }
}

void add_row_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}

void add_col_multiple(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

// Extended gcd with g >= 0 and the unimodular 2x2 [[s,t],[-b/g,a/g]].
void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

HermiteResult hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t first = a.rows();
    for (std::size_t r = pivot_row; r < a.rows(); ++r)
      if (a(r, c) != 0) {
        first = r;
        break;
      }
    if (first == a.rows()) continue;
    a.swap_rows(pivot_row, first);
    u.swap_rows(pivot_row, first);
    for (std::size_t r = pivot_row + 1; r < a.rows(); ++r) {
      if (a(r, c) == 0) continue;
      BigInt g, s, t;
      xgcd(a(pivot_row, c), a(r, c), g, s, t);
      BigInt p = a(pivot_row, c) / g, q = a(r, c) / g;
      combine_rows(a, pivot_row, r, s, t, -q, p);
      combine_rows(u, pivot_row, r, s, t, -q, p);
    }
    if (a(pivot_row, c) < 0) {
      negate_row(a, pivot_row);
      negate_row(u, pivot_row);
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      BigInt k = floor_div(a(r, c), a(pivot_row, c));
      add_row_multiple(a, r, pivot_row, -k);
      add_row_multiple(u, r, pivot_row, -k);
    }
    ++pivot_row;
  }
  return {std::move(a), std::move(u)};
}

SmithResult smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  IntegerMatrix u = IntegerMatrix::identity(m.rows());
  IntegerMatrix v = IntegerMatrix::identity(m.cols());
  const std::size_t diag = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < diag; ++t) {
    // Choose the smallest nonzero entry of the trailing block as pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    BigInt best;
    for (std::size_t r = t; r < a.rows(); ++r)
      for (std::size_t c = t; c < a.cols(); ++c)
        if (a(r, c) != 0 && (!found || abs(a(r, c)) < best)) {
          best = abs(a(r, c));
          pr = r;
          pc = c;
          found = true;
        }
    if (!found) break;
    a.swap_rows(t, pr);
    u.swap_rows(t, pr);
    a.swap_cols(t, pc);
    v.swap_cols(t, pc);

    for (;;) {
      bool changed = false;
      for (std::size_t r = t + 1; r < a.rows(); ++r) {
        if (a(r, t) == 0) continue;
        if (a(r, t) % a(t, t) == 0) {
          BigInt q = a(r, t) / a(t, t);
          add_row_multiple(a, r, t, -q);
          add_row_multiple(u, r, t, -q);
          changed = true;
          continue;
        }
        BigInt g, s, x;
        xgcd(a(t, t), a(r, t), g, s, x);
        BigInt p = a(t, t) / g, q = a(r, t) / g;
        combine_rows(a, t, r, s, x, -q, p);
        combine_rows(u, t, r, s, x, -q, p);
        changed = true;
      }
      for (std::size_t c = t + 1; c < a.cols(); ++c) {
        if (a(t, c) == 0) continue;
        if (a(t, c) % a(t, t) == 0) {
          BigInt q = a(t, c) / a(t, t);
          add_col_multiple(a, c, t, -q);
          add_col_multiple(v, c, t, -q);
          changed = true;
          continue;
        }
        BigInt g, s, x;
        xgcd(a(t, t), a(t, c), g, s, x);
        BigInt p = a(t, t) / g, q = a(t, c) / g;
        combine_cols(a, t, c, s, x, -q, p);
        combine_cols(v, t, c, s, x, -q, p);
        changed = true;
      }
      if (changed) continue;
      // Row and column cleared; enforce divisibility of the trailing block.
      bool fixed = true;
      for (std::size_t r = t + 1; r < a.rows() && fixed; ++r)
        for (std::size_t c = t + 1; c < a.cols(); ++c)
          if (a(r, c) % a(t, t) != 0) {
            add_row_multiple(a, t, r, 1);
            add_row_multiple(u, t, r, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }
  return {std::move(a), std::move(u), std::move(v)};
}

LatticeBasis integer_kernel(const IntegerMatrix& m) {
  LatticeBasis out;
  out.ambient_rank = m.cols();
  if (m.cols() == 0) return out;
  HermiteResult h = hermite_normal_form(m.transpose());
  IntegerMatrix kernel_rows;
  for (std::size_t r = 0; r < h.H.rows(); ++r) {
    bool zero = true;
    for (std::size_t c = 0; c < h.H.cols(); ++c)
      if (h.H(r, c) != 0) {
        zero = false;
        break;
      }
    if (zero) kernel_rows.append_row(h.U.row(r));
  }
  if (kernel_rows.rows() == 0) {
    out.basis_rows = IntegerMatrix(0, m.cols());
    return out;
  }
  HermiteResult canon = hermite_normal_form(kernel_rows);
  IntegerMatrix basis(0, m.cols());
  for (std::size_t r = 0; r < canon.H.rows(); ++r) {
    bool zero = true;
    for (std::size_t c = 0; c < canon.H.cols(); ++c)
      if (canon.H(r, c) != 0) zero = false;
    if (!zero) basis.append_row(canon.H.row(r));
  }
  out.basis_rows = std::move(basis);
  return out;
}

RationalMatrix rref(const RationalMatrix& m, std::vector<std::size_t>* pivots) {
  RationalMatrix a = m;
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t sel = a.rows();
    for (std::size_t r = row; r < a.rows(); ++r)
      if (a(r, c) != 0) {
        sel = r;
        break;
      }
    if (sel == a.rows()) continue;
    a.swap_rows(row, sel);
    BigRational inv = 1 / a(row, c);
    for (std::size_t k = c; k < a.cols(); ++k) a(row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c) == 0) continue;
      BigRational f = a(r, c);
      for (std::size_t k = c; k < a.cols(); ++k)
        if (a(row, k) != 0) a(r, k) -= f * a(row, k);
    }
    piv.push_back(c);
    ++row;
  }
  RationalMatrix out(0, m.cols());
  for (std::size_t r = 0; r < row; ++r) out.append_row(a.row(r));
  if (pivots) *pivots = std::move(piv);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).rows(); }

RationalMatrix rational_kernel(const RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  RationalMatrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix kernel(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    kernel.append_row(v);
  }
  if (kernel.rows() == 0) return kernel;
  return rref(kernel);
}

BigRational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  RationalMatrix a = m;
  BigRational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t r = c; r < n; ++r)
      if (a(r, c) != 0) {
        sel = r;
        break;
      }
    if (sel == n) return 0;
    if (sel != c) {
      a.swap_rows(c, sel);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      BigRational f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

BigInt determinant(const IntegerMatrix& m) {
  // Bareiss fraction-free elimination.
  if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t sel = n;
      for (std::size_t r = k + 1; r < n; ++r)
        if (a(r, k) != 0) {
          sel = r;
          break;
        }
      if (sel == n) return 0;
      a.swap_rows(k, sel);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool solve_row_combination(const RationalMatrix& m, const std::vector<BigRational>& target,
                           std::vector<BigRational>& x) {
  // Columns of the augmented system are the rows of m.
  if (target.size() != m.cols()) throw InputError("target length mismatch");
  RationalMatrix aug(m.cols(), m.rows() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) aug(c, r) = m(r, c);
  for (std::size_t c = 0; c < m.cols(); ++c) aug(c, m.rows()) = target[c];
  std::vector<std::size_t> pivots;
  RationalMatrix red = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == m.rows()) return false;
  x.assign(m.rows(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = red(i, m.rows());
  return true;
}

BigInt multinomial(const std::vector<long>& parts) {
  BigInt result = 1;
  long total = 0;
  for (long p : parts) {
    if (p < 0) throw InputError("multinomial: negative part");
    total += p;
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(total), static_cast<unsigned long>(p));
    result *= b;
  }
  return result;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

}  // namespace tautgen
