#include <random>

#include "doctest.h"
#include "tautgen/weyl_ops.hpp"

using namespace tautgen;

namespace {

// y^0 coefficient of (a1 y + a2 / y)^k, expanded term by term: the constant-term oracle
// for the P^1 period with interior coefficient a0.
FormalSeries p1_period_oracle(long order) {
  FormalSeries s(3, {0, 1, 1}, order);
  for (long k = 0; k <= order; ++k) {
    for (long j = 0; j <= k; ++j) {
      // term C(k,j) (a1 y)^j (a2/y)^{k-j}, y-power j - (k - j)
      if (2 * j != k) continue;
      BigRational c(binomial(k, j));
      if (k % 2) c = -c;
      s.add({static_cast<int>(-k - 1), static_cast<int>(j), static_cast<int>(k - j)}, c);
    }
  }
  return s;
}

DiffOp random_op(std::mt19937_64& rng, std::size_t n) {
  DiffOp op(n);
  int terms = 1 + static_cast<int>(rng() % 3);
  for (int t = 0; t < terms; ++t) {
    Exponent u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = static_cast<int>(rng() % 3);
      v[i] = static_cast<int>(rng() % 3);
    }
    op.add_term(make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)), u, v);
  }
  return op;
}

FormalSeries monomial_series(std::size_t n, const Exponent& e) {
  auto s = FormalSeries::polynomial(n);
  s.add(e, 1);
  return s;
}

}  // namespace

TEST_CASE("op_apply basic examples") {
  auto inv_a0 = FormalSeries::polynomial(1);
  inv_a0.add({-1}, 1);
  auto d0 = DiffOp::partial(1, 0);
  auto r = op_apply(d0, inv_a0);
  CHECK(r.size() == 1);
  CHECK(r.coefficient({-2}) == -1);

  auto euler = op_compose(DiffOp::coordinate(1, 0), d0) + DiffOp::constant(1, 1);
  CHECK(op_apply(euler, inv_a0).empty());

  CHECK_THROWS_AS(op_apply(DiffOp::partial(2, 0), inv_a0), InputError);
}

TEST_CASE("box operator kills the P^1 period oracle") {
  auto s = p1_period_oracle(12);
  CHECK(s.coefficient({-3, 1, 1}) == 2);
  CHECK(s.coefficient({-5, 2, 2}) == 6);
  CHECK(s.coefficient({-7, 3, 3}) == 20);
  auto box = DiffOp::parse("1 * d1*d2 + -1 * d0^2", 3);
  auto report = annihilates(box, s);
  CHECK(report.passed);
  REQUIRE(report.certified_order.has_value());
  CHECK(*report.certified_order == 10);

  auto euler = DiffOp::parse("1 * a0*d0 + 1 * a1*d1 + 1 * a2*d2 + 1", 3);
  CHECK(annihilates(euler, s).passed);
  CHECK(*annihilates(euler, s).certified_order == 12);

  auto corrupted = s;
  corrupted.add({-5, 2, 2}, 1);
  CHECK_FALSE(annihilates(box, corrupted).passed);
}

TEST_CASE("op_compose examples") {
  auto a0 = DiffOp::coordinate(1, 0);
  auto d0 = DiffOp::partial(1, 0);
  CHECK(op_compose(d0, a0) == op_compose(a0, d0) + DiffOp::constant(1, 1));
  CHECK(op_compose(a0, d0).to_string() == "1 * a0*d0");
  auto lhs = op_compose(d0, op_compose(a0, a0));
  CHECK(lhs == DiffOp::parse("1 * a0^2*d0 + 2 * a0", 1));
  CHECK_THROWS_AS(op_compose(DiffOp::partial(2, 0), d0), InputError);
}

TEST_CASE("annihilates trivial cases") {
  auto s = p1_period_oracle(6);
  CHECK(annihilates(DiffOp(3), s).passed);
  auto one = FormalSeries::polynomial(1);
  one.add({0}, 1);
  CHECK(annihilates(DiffOp::partial(1, 0), one).passed);
}

TEST_CASE("op_compose is associative") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_op(rng, 3), y = random_op(rng, 3), z = random_op(rng, 3);
    CHECK(op_compose(op_compose(x, y), z) == op_compose(x, op_compose(y, z)));
  }
}

TEST_CASE("canonical commutation on random monomials") {
  std::mt19937_64 rng(4);
  const std::size_t n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    Exponent e(n);
    for (auto& x : e) x = static_cast<int>(rng() % 7) - 3;
    auto f = monomial_series(n, e);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto di = DiffOp::partial(n, i), aj = DiffOp::coordinate(n, j);
        auto lhs = op_apply(op_compose(di, aj) - op_compose(aj, di), f);
        auto rhs = i == j ? f : FormalSeries::polynomial(n);
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("op_apply respects composition within the certified range") {
  std::mt19937_64 rng(8);
  auto s = p1_period_oracle(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_op(rng, 3), y = random_op(rng, 3);
    auto lhs = op_apply(op_compose(x, y), s);
    auto rhs = op_apply(x, op_apply(y, s));
    // Both sides agree where both are certified.
    std::optional<long> common = lhs.truncation_order();
    if (rhs.truncation_order() && (!common || *rhs.truncation_order() < *common)) common = rhs.truncation_order();
    CHECK(lhs.truncated(common).coefficients() == rhs.truncated(common).coefficients());
  }
}

TEST_CASE("printing and parsing are inverse on normal forms") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_op(rng, 4);
    auto text = x.to_string();
    auto y = DiffOp::parse(text, 4);
    CHECK(y == x);
    CHECK(y.to_string() == text);
  }
  CHECK(DiffOp(2).to_string() == "0");
  // Non-normal-ordered input is normalized.
  CHECK(DiffOp::parse("d0*a0", 1) == DiffOp::parse("1 * a0*d0 + 1", 1));
  CHECK(DiffOp::parse("d0 - d1", 2).to_string() == "-1 * d1 + 1 * d0");
  CHECK_THROWS_AS(DiffOp::parse("1 * d5", 2), InputError);
  CHECK_THROWS_AS(DiffOp::parse("1 * q0", 2), InputError);
}

TEST_CASE("linear vector fields follow Z_x = sum x_ji a_j d_i") {
  RationalMatrix e{{0, 1}, {0, 0}};  // e . a_1 = a_0
  auto z = linear_vector_field(e, 0);
  CHECK(z.to_string() == "1 * a0*d1");
  auto f = monomial_series(2, {0, 1});
  auto r = op_apply(z, f);
  CHECK(r.coefficient({1, 0}) == 1);
}
