#include <random>

#include "doctest.h"
#include "tautgen/exact_core.hpp"

using namespace tautgen;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

bool is_row_hnf(const IntegerMatrix& h) {
  std::size_t last_pivot_col = 0;
  bool seen_zero_row = false;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h(r, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (r > 0 && c <= last_pivot_col) return false;
    if (h(r, c) <= 0) return false;
    for (std::size_t above = 0; above < r; ++above)
      if (h(above, c) < 0 || h(above, c) >= h(r, c)) return false;
    last_pivot_col = c;
  }
  return true;
}

// Is l an integer combination of the rows of a basis in HNF?
bool in_integer_span(const IntegerMatrix& basis, const std::vector<BigInt>& l) {
  std::vector<BigRational> target(l.begin(), l.end());
  std::vector<BigRational> x;
  if (basis.rows() == 0) {
    for (const auto& v : l)
      if (v != 0) return false;
    return true;
  }
  if (!solve_row_combination(to_rational(basis), target, x)) return false;
  for (const auto& v : x)
    if (v.get_den() != 1) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite normal form of a small matrix") {
  IntegerMatrix m{{2, 4}, {1, 3}};
  auto [h, u] = hermite_normal_form(m);
  // Hand reduction: rows (1,3),(0,-2) -> (1,3),(0,2), then 3 reduced mod 2 above the pivot.
  CHECK(h == IntegerMatrix{{1, 1}, {0, 2}});
  CHECK(u * m == h);
  CHECK(abs(determinant(u)) == 1);
  // [[1,3],[0,2]] generates the same lattice.
  CHECK(in_integer_span(h, {1, 3}));
  CHECK(in_integer_span(h, {2, 4}));
}

TEST_CASE("hermite normal form trivial cases") {
  auto id = IntegerMatrix::identity(3);
  auto r = hermite_normal_form(id);
  CHECK(r.H == id);
  CHECK(r.U == id);
  IntegerMatrix zero(2, 3);
  CHECK(hermite_normal_form(zero).H == zero);
}

TEST_CASE("hermite normal form properties on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    auto m = random_matrix(rng, rows, cols, 9);
    auto [h, u] = hermite_normal_form(m);
    CHECK(u * m == h);
    CHECK(abs(determinant(u)) == 1);
    CHECK(is_row_hnf(h));
  }
}

TEST_CASE("smith normal form") {
  SUBCASE("diag(2,3) -> diag(1,6)") {
    IntegerMatrix m{{2, 0}, {0, 3}};
    auto s = smith_normal_form(m);
    CHECK(s.S == IntegerMatrix{{1, 0}, {0, 6}});
    CHECK(s.U * m * s.V == s.S);
  }
  SUBCASE("identity and zero") {
    CHECK(smith_normal_form(IntegerMatrix::identity(3)).S == IntegerMatrix::identity(3));
    CHECK(smith_normal_form(IntegerMatrix{{0}}).S == IntegerMatrix{{0}});
  }
  SUBCASE("random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      auto m = random_matrix(rng, rows, cols, 12);
      auto s = smith_normal_form(m);
      CHECK(s.U * m * s.V == s.S);
      CHECK(abs(determinant(s.U)) == 1);
      CHECK(abs(determinant(s.V)) == 1);
      std::size_t d = std::min(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (i != j) CHECK(s.S(i, j) == 0);
      for (std::size_t i = 0; i + 1 < d; ++i) {
        CHECK(s.S(i, i) >= 0);
        if (s.S(i, i) == 0) CHECK(s.S(i + 1, i + 1) == 0);
        else CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
      }
    }
  }
}

TEST_CASE("integer kernel examples") {
  auto k = integer_kernel(IntegerMatrix{{1, 1, 1}, {-1, 0, 1}});
  REQUIRE(k.rank() == 1);
  CHECK(k.basis_rows.row(0) == std::vector<BigInt>{1, -2, 1});
  CHECK(integer_kernel(IntegerMatrix::identity(3)).rank() == 0);
  auto z = integer_kernel(IntegerMatrix(1, 3));
  CHECK(z.basis_rows == IntegerMatrix::identity(3));
}

TEST_CASE("integer kernel is a Z-basis (brute force enumeration)") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t cols = 2 + rng() % 3;  // <= 4 columns
    std::size_t rows = 1 + rng() % 2;
    auto m = random_matrix(rng, rows, cols, 3);
    auto k = integer_kernel(m);
    CHECK(is_row_hnf(k.basis_rows));
    for (std::size_t r = 0; r < k.rank(); ++r) {
      auto row = k.basis_rows.row(r);
      for (std::size_t i = 0; i < rows; ++i) {
        BigInt dot = 0;
        for (std::size_t j = 0; j < cols; ++j) dot += m(i, j) * row[j];
        CHECK(dot == 0);
      }
    }
    std::vector<long> l(cols, -5);
    for (;;) {
      bool in_kernel = true;
      for (std::size_t i = 0; i < rows && in_kernel; ++i) {
        BigInt dot = 0;
        for (std::size_t j = 0; j < cols; ++j) dot += m(i, j) * l[j];
        in_kernel = dot == 0;
      }
      if (in_kernel) CHECK(in_integer_span(k.basis_rows, std::vector<BigInt>(l.begin(), l.end())));
      std::size_t p = 0;
      while (p < cols && l[p] == 5) l[p++] = -5;
      if (p == cols) break;
      ++l[p];
    }
  }
}

TEST_CASE("rational kernel") {
  auto k = rational_kernel(RationalMatrix{{1, 1}});
  REQUIRE(k.rows() == 1);
  CHECK(k(0, 0) == -k(0, 1));
  CHECK(rational_kernel(RationalMatrix{{2, 1}, {1, 1}}).rows() == 0);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    RationalMatrix known(3, 5);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 5; ++c) known(r, c) = make_rational(dist(rng), 1 + static_cast<long>(rng() % 3));
    if (rank(known) != 3) continue;
    RationalMatrix complement = rational_kernel(known);  // rows orthogonal to the known kernel
    RationalMatrix mix(3, complement.rows());
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < complement.rows(); ++c) mix(r, c) = dist(rng);
    RationalMatrix m = mix * complement;
    if (rank(m) != 2) continue;
    auto ker = rational_kernel(m);
    CHECK(ker.rows() == 3);
    CHECK((m * ker.transpose()).is_zero());
    RationalMatrix stacked = known;
    for (std::size_t r = 0; r < ker.rows(); ++r) stacked.append_row(ker.row(r));
    CHECK(rank(stacked) == 3);
  }
}

TEST_CASE("multinomial") {
  CHECK(multinomial({2, 1}) == 3);
  CHECK(multinomial({0, 0}) == 1);
  CHECK(multinomial({3, 3}) == 20);
  CHECK_THROWS_AS(multinomial({1, -1}), InputError);
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    BigRational a(num(rng), den(rng)), c(num(rng), den(rng));
    a.canonicalize();
    c.canonicalize();
    BigRational back = (a + c) - c;
    CHECK(back == a);
    CHECK(back.get_den() > 0);
  }
  CHECK(parse_rational("-6/4") == BigRational(-3, 2));
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}
