#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "tautgen/taut_builder.hpp"

using namespace tautgen;
using tautgen::oracle::random_polynomial;

namespace {

FanData p1xp1() {
  FanData f;
  f.dimension = 2;
  f.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  return f;
}

// Constant term of y^nu / f(y) expanded around the interior coefficient, through K steps.
FormalSeries twisted_period(const AMatrix& a, const IntVector& nu, long order) {
  const std::size_t n = a.column_count();
  const std::size_t i0 = *a.interior_index();
  std::vector<int> weights(n, 1);
  weights[i0] = 0;
  FormalSeries s(n, weights, order);
  std::vector<long> k(n, 0);
  auto rec = [&](auto&& self, std::size_t col, long left) -> void {
    if (col == n) {
      long steps = order - left;
      for (std::size_t r = 1; r < a.row_count(); ++r) {
        long sum = 0;
        for (std::size_t i = 0; i < n; ++i) sum += k[i] * a.matrix(r, i).get_si();
        if (sum != -nu[r - 1]) return;
      }
      std::vector<long> parts;
      Exponent e(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (i != i0) {
          parts.push_back(k[i]);
          e[i] = static_cast<int>(k[i]);
        }
      e[i0] = static_cast<int>(-steps - 1);
      BigRational c(multinomial(parts));
      if (steps % 2) c = -c;
      s.add(e, c);
      return;
    }
    if (col == i0) {
      self(self, col + 1, left);
      return;
    }
    for (long x = 0; x <= left; ++x) {
      k[col] = x;
      self(self, col + 1, left - x);
    }
    k[col] = 0;
  };
  rec(rec, 0, order);
  return s;
}

std::set<std::string> as_strings(const std::vector<DiffOp>& ops) {
  std::set<std::string> out;
  for (const auto& op : ops) out.insert(op.to_string());
  return out;
}

}  // namespace

TEST_CASE("GKZ system of P^1") {
  auto a = a_matrix(anticanonical_sections(projective_space_fan(1)));
  auto sys = build_toric_gkz(a);
  REQUIRE(sys.symmetry_ops.size() == 2);
  REQUIRE(sys.polynomial_ops.size() == 1);
  CHECK(sys.symmetry_ops[0] == DiffOp::parse("a0*d0 + a1*d1 + a2*d2 + 1", 3));
  CHECK(sys.symmetry_ops[1] == DiffOp::parse("-1 * a0*d0 + a2*d2", 3));
  CHECK(sys.polynomial_ops[0] == DiffOp::parse("d0*d2 - d1^2", 3));
  CHECK(sys.beta == std::vector<BigRational>{1, 0});
  CHECK(sys.operators().size() == 3);
  CHECK(sys.provenance().size() == 3);
}

TEST_CASE("GKZ trivial and P^2 shapes") {
  auto single = build_toric_gkz(a_matrix_from_columns({{0, 0}}));
  CHECK(single.symmetry_ops.size() == 3);
  CHECK(single.symmetry_ops[0] == DiffOp::parse("a0*d0 + 1", 1));
  CHECK(single.polynomial_ops.empty());
  auto p2 = build_toric_gkz(a_matrix(anticanonical_sections(projective_space_fan(2))));
  CHECK(p2.variable_count() == 10);
  CHECK(p2.symmetry_ops.size() == 3);
  CHECK(p2.polynomial_ops.size() == 7);
  for (const auto& op : p2.polynomial_ops) CHECK(op.has_constant_coefficients());
  for (const auto& op : p2.symmetry_ops) CHECK(op.order() == 1);
}

TEST_CASE("bounded binomial generators") {
  auto a1 = a_matrix(anticanonical_sections(projective_space_fan(1)));
  auto b = binomial_generators_bounded(a1, 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == DiffOp::parse("d0*d2 - d1^2", 3));
  CHECK(binomial_generators_bounded(a1, 0).empty());

  // Oracle: all l in ker A with entries in [-2, 2], first nonzero entry positive, |l+| <= 2.
  auto a = a_matrix(anticanonical_sections(p1xp1()));
  const std::size_t n = a.column_count();
  std::set<std::string> expected;
  std::vector<long> l(n, -2);
  for (;;) {
    bool zero = std::all_of(l.begin(), l.end(), [](long x) { return x == 0; });
    bool in_kernel = !zero;
    for (std::size_t r = 0; r < a.row_count() && in_kernel; ++r) {
      BigInt s = 0;
      for (std::size_t i = 0; i < n; ++i) s += a.matrix(r, i) * l[i];
      in_kernel = s == 0;
    }
    if (in_kernel) {
      std::size_t first = 0;
      while (l[first] == 0) ++first;
      long plus = 0;
      for (long x : l) plus += x > 0 ? x : 0;
      if (l[first] > 0 && plus <= 2) expected.insert(box_operator(std::vector<BigInt>(l.begin(), l.end())).to_string());
    }
    std::size_t p = 0;
    while (p < n && l[p] == 2) l[p++] = -2;
    if (p == n) break;
    ++l[p];
  }
  auto got = as_strings(binomial_generators_bounded(a, 2));
  CHECK(got == expected);
  auto sys = build_toric_gkz(a);
  CHECK(sys.polynomial_ops.size() == 6);
  for (const auto& op : sys.polynomial_ops)
    if (op.order() <= 2) CHECK(got.count(op.to_string()) == 1);
}

TEST_CASE("flag system on V") {
  FlagInput g24{4, {2}, std::vector<long>{1}};
  auto sys = build_flag_system_V(g24);
  CHECK(sys.variables == std::vector<std::string>{"12", "13", "14", "23", "24", "34"});
  REQUIRE(sys.polynomial_ops.size() == 1);
  CHECK(sys.polynomial_ops[0] == DiffOp::parse("d2*d3 - d1*d4 + d0*d5", 6));
  CHECK(sys.symmetry_ops.back() == DiffOp::parse("a0*d0 + a1*d1 + a2*d2 + a3*d3 + a4*d4 + a5*d5 + 1", 6));

  FlagInput p1{2, {1}, std::vector<long>{1}};
  auto line = build_flag_system_V(p1);
  CHECK(line.polynomial_ops.empty());
  CHECK(line.symmetry_ops.back() == DiffOp::parse("a0*d0 + a1*d1 + 1", 2));

  CHECK_THROWS_AS(build_flag_system_V(FlagInput{4, {2}, std::nullopt}), InputError);
  CHECK_THROWS_AS(build_flag_system_V(FlagInput{4, {2, 1}, std::nullopt}), InputError);

  // P^2 with O(2): Veronese surface, quadrics from the Casimir.
  auto ver = build_flag_system_V(FlagInput{3, {1}, std::vector<long>{2}});
  CHECK(ver.variable_count() == 6);
  CHECK(ver.polynomial_ops.size() == 6);
}

TEST_CASE("flag system on W_L") {
  auto a1 = build_flag_system_W(FlagInput{2, {1}, std::nullopt}, 7);
  CHECK(a1.system.variable_count() == 3);
  CHECK(a1.first_order_count == 0);
  REQUIRE(a1.binomial_count == 1);
  CHECK(a1.system.polynomial_ops[0] == DiffOp::parse("d0*d2 - d1^2", 3));

  auto rd = root_data_A(3);
  auto fl = build_flag_system_W(FlagInput{3, {1, 2}, std::nullopt}, 7);
  CHECK(fl.system.variable_count() == 36);
  CHECK(fl.first_order_count == 36 - weyl_dimension(rd, {2, 2}).get_ui());
  CHECK(fl.system.symmetry_ops.size() == 7);
  auto points = sample_cone_points(rd, fl.data.module, 50, 99);
  for (const auto& op : fl.system.polynomial_ops)
    for (const auto& p : points) CHECK(evaluate_symbol(op, p) == 0);
  // zeta_v -> z^v kills every binomial symbol identically
  std::mt19937_64 rng(2);
  std::vector<std::vector<BigRational>> z(2, std::vector<BigRational>(3));
  for (auto& f : z)
    for (auto& x : f) x = make_rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 5));
  auto p = segre_point(fl.data, z);
  for (std::size_t k = fl.first_order_count; k < fl.system.polynomial_ops.size(); ++k)
    CHECK(evaluate_symbol(fl.system.polynomial_ops[k], p) == 0);

  CHECK_THROWS_AS(build_flag_system_W(FlagInput{3, {1, 2}, std::vector<long>{2, 1}}, 7), InputError);
}

TEST_CASE("transport along an injection") {
  auto c2 = fundamental_rep(2, 1);
  TautSystem toy;
  toy.variables = {"a0", "a1"};
  for (const auto& [label, x] : symmetry_matrices(c2)) toy.add_symmetry(label, x, label == "scale" ? 1 : 0, label == "scale");
  toy.add_polynomial("p1", DiffOp::parse("d0*d1", 2));
  toy.add_polynomial("p2", DiffOp::parse("d0^2 + 3 * d1^2", 2));

  RationalMatrix j{{1, 0}, {0, 1}, {2, 0}, {0, 2}};
  Injection inj;
  inj.j = j;
  for (const auto& x : toy.symmetry_matrices) {
    RationalMatrix w(4, 4);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) w(r, c) = w(r + 2, c + 2) = x(r, c);
    inj.w_matrices.push_back(w);
  }
  auto on_w = transport_system(toy, inj);
  CHECK(on_w.variable_count() == 4);
  CHECK(on_w.polynomial_ops.size() == 4);  // 2 transported + 2 from V-perp

  SUBCASE("symmetry compatibility on random polynomials") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_polynomial(rng, 2, 3);
      for (std::size_t k = 0; k < toy.symmetry_ops.size(); ++k) {
        auto lhs = pullback(op_apply(toy.symmetry_ops[k], f), j);
        auto rhs = op_apply(on_w.symmetry_ops[k], pullback(f, j));
        CHECK(lhs == rhs);
      }
    }
  }
  SUBCASE("pulled-back linear solutions solve the transported system") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      auto f = FormalSeries::polynomial(2);
      f.add({1, 0}, make_rational(static_cast<long>(rng() % 7) - 3, 1));
      f.add({0, 1}, make_rational(static_cast<long>(rng() % 7) - 3, 2));
      for (const auto& op : toy.polynomial_ops) REQUIRE(op_apply(op, f).empty());
      auto g = pullback(f, j);
      for (const auto& op : on_w.polynomial_ops) CHECK(op_apply(op, g).empty());
    }
  }
  SUBCASE("polynomial operators transport through the symbol") {
    // (p(d_a) f) o pi = q(d_b) (f o pi)
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_polynomial(rng, 2, 4);
      for (std::size_t k = 0; k < toy.polynomial_ops.size(); ++k)
        CHECK(pullback(op_apply(toy.polynomial_ops[k], f), j) == op_apply(on_w.polynomial_ops[k], pullback(f, j)));
    }
  }
  SUBCASE("identity injection") {
    Injection id{RationalMatrix::identity(2), toy.symmetry_matrices, {}};
    auto same = transport_system(toy, id);
    CHECK(same.symmetry_ops == toy.symmetry_ops);
    CHECK(same.polynomial_ops == toy.polynomial_ops);
  }
  SUBCASE("non-equivariant injection is rejected") {
    Injection bad = inj;
    bad.w_matrices[0](0, 1) = 0;
    CHECK_THROWS_AS(transport_system(toy, bad), InputError);
  }
}

TEST_CASE("invariant theory of binary quadratics") {
  auto v = dual_rep(symmetric_power_rep(fundamental_rep(2, 1), 2));
  auto sys = build_invariant_system(v, 2);
  CHECK(sys.symmetry_ops.size() == 4);
  CHECK(sys.symmetry_ops.back() == DiffOp::parse("a0*d0 + a1*d1 + a2*d2 - 2", 3));
  auto disc = FormalSeries::polynomial(3);
  disc.add({0, 2, 0}, 1);
  disc.add({1, 0, 1}, -4);
  for (const auto& op : sys.operators()) CHECK(op_apply(op, disc).empty());
  auto sq = FormalSeries::polynomial(3);
  sq.add({2, 0, 0}, 1);
  bool some_fail = false;
  for (const auto& op : sys.symmetry_ops) some_fail |= !op_apply(op, sq).empty();
  CHECK(some_fail);

  auto sol = polynomial_solutions(sys, 2);
  CHECK(sol.monomials.size() == 6);
  REQUIRE(sol.basis.rows() == 1);
  BigRational at_a1sq, at_a0a2;
  for (std::size_t c = 0; c < 6; ++c) {
    if (sol.monomials[c] == Exponent{0, 2, 0}) at_a1sq = sol.basis(0, c);
    else if (sol.monomials[c] == Exponent{1, 0, 1}) at_a0a2 = sol.basis(0, c);
    else CHECK(sol.basis(0, c) == 0);
  }
  CHECK(at_a0a2 == -4 * at_a1sq);
  CHECK(polynomial_solutions(build_invariant_system(v, 1), 1).basis.rows() == 0);
  CHECK_THROWS_AS(build_invariant_system(v, 0), InputError);

  // A solution of the V system pulls back to a solution of the transported one.
  Injection inj;
  inj.j = RationalMatrix(6, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    inj.j(i, i) = 1;
    inj.j(i + 3, i) = 3;
  }
  for (const auto& x : sys.symmetry_matrices) {
    RationalMatrix w(6, 6);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) w(r, c) = w(r + 3, c + 3) = x(r, c);
    inj.w_matrices.push_back(w);
  }
  auto on_w = transport_system(sys, inj);
  auto g = pullback(disc, inj.j);
  for (const auto& op : on_w.operators()) CHECK(op_apply(op, g).empty());
}

TEST_CASE("enhanced system for P^2 with L = O(6)") {
  auto fan = projective_space_fan(2);
  auto a = a_matrix(sections(fan, {2, 2, 2}));
  REQUIRE(a.column_count() == 28);
  auto base = build_toric_gkz(a);
  auto tau = anticanonical_sections(fan);  // H^0(L + K) = H^0(O(3))
  const std::size_t m = tau.laurent_exponents.size();
  REQUIRE(m == 10);
  std::vector<RationalMatrix> rho(base.symmetry_ops.size(), RationalMatrix(m, m));
  for (std::size_t k = 1; k < base.symmetry_ops.size(); ++k)
    for (std::size_t l = 0; l < m; ++l) rho[k](l, l) = -tau.laurent_exponents[l][k - 1];
  auto es = build_enhanced(base, rho);
  std::vector<FormalSeries> periods;
  for (const auto& nu : tau.laurent_exponents) periods.push_back(twisted_period(a, nu, 4));
  auto report = verify_enhanced(es, periods);
  CHECK(report.passed);
  for (const auto& f : report.failures) MESSAGE(f);

  auto wrong = rho;
  wrong[1](1, 1) += 1;
  CHECK_FALSE(verify_enhanced(build_enhanced(base, wrong), periods).passed);
  auto on_euler = rho;
  on_euler[0](0, 0) = 1;
  CHECK_THROWS_AS(build_enhanced(base, on_euler), InputError);

  // One-dimensional rho: same as shifting beta by the eigenvalue.
  std::size_t pick = 3;
  std::vector<RationalMatrix> rho1;
  for (std::size_t k = 0; k < rho.size(); ++k) rho1.push_back(RationalMatrix{{0}});
  for (std::size_t k = 1; k < rho.size(); ++k) rho1[k](0, 0) = rho[k](pick, pick);
  CHECK(verify_enhanced(build_enhanced(base, rho1), {periods[pick]}).passed);
  for (std::size_t k = 0; k < base.symmetry_ops.size(); ++k) {
    auto shifted = base.symmetry_ops[k] - DiffOp::constant(28, rho1[k](0, 0));
    CHECK(annihilates(shifted, periods[pick]).passed);
  }
}

TEST_CASE("enhanced system with trivial rho") {
  auto a = a_matrix(anticanonical_sections(projective_space_fan(1)));
  auto base = build_toric_gkz(a);
  std::vector<RationalMatrix> rho(base.symmetry_ops.size(), RationalMatrix(1, 1));
  auto report = verify_enhanced(build_enhanced(base, rho), {twisted_period(a, {0}, 12)});
  CHECK(report.passed);
  REQUIRE(report.certified_order.has_value());
  CHECK(*report.certified_order == 10);
}
