#include "doctest.h"
#include "support.hpp"

using namespace orbitred;
using namespace testing;

namespace {

PolyMatrix random_matrix(std::mt19937_64& rng, const VarSetPtr& v, std::size_t n) {
  PolyMatrix m(n, n);
  std::bernoulli_distribution sparse(0.3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = sparse(rng) ? Polynomial(v) : random_polynomial(rng, v, 2, 2);
  return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("identity and non-square input") {
  auto v = make_varset({"a"});
  PolyMatrix id(5, 5, Polynomial(v));
  for (std::size_t i = 0; i < 5; ++i) id(i, i) = Polynomial(v, Rational(1));
  CHECK(det_fraction_free(id) == Polynomial(v, Rational(1)));
  CHECK_THROWS_AS(det_fraction_free(PolyMatrix(2, 3)), InvalidArgument);
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
  auto v = make_varset({"a", "b", "c"});
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < (n == 5 ? 6 : 20); ++trial) {
      PolyMatrix m = random_matrix(rng, v, n);
      CHECK(det_fraction_free(m) == cofactor_det(m));
    }
}

TEST_CASE("determinant of the quartic transfer matrix with a syzygy") {
  auto v = make_varset({"a1", "a2", "a3"});
  PolyMatrix m = parse_matrix(v, {{"8*a1", "0", "0", "a3", "0"},
                                  {"0", "8*a2", "0", "0", "a3"},
                                  {"0", "0", "4*(a1 + a2)", "3*a3", "3*a3"},
                                  {"4*a3", "0", "2*a3", "6*a1 + 2*a2", "0"},
                                  {"0", "4*a3", "2*a3", "0", "2*a1 + 6*a2"}});
  Polynomial expected = parse_polynomial(
      "256*(12*a1^4*a2 - 3*a2^3*a3^2 + a2*a3^4 + a1^3*(52*a2^2 - 3*a3^2) + a1^2*(52*a2^3 - 17*a2*a3^2)"
      " + a1*(12*a2^4 - 17*a2^2*a3^2 + a3^4))",
      v);
  CHECK(det_fraction_free(m) == expected);
  CHECK(cofactor_det(m) == expected);
}

TEST_CASE("determinant of the six-monomial transfer matrix") {
  auto v = make_varset({"a1", "a2", "a3"});
  PolyMatrix m = parse_matrix(v, {{"8*a1", "0", "0", "0", "a3", "0"},
                                  {"0", "8*a2", "0", "0", "0", "a3"},
                                  {"0", "0", "4*(a1 + a2)", "0", "2*a3", "2*a3"},
                                  {"0", "0", "0", "4*(a1 + a2)", "a3", "a3"},
                                  {"4*a3", "0", "2*a3", "2*a3", "6*a1 + 2*a2", "0"},
                                  {"0", "4*a3", "2*a3", "2*a3", "0", "2*a1 + 6*a2"}});
  Polynomial expected =
      parse_polynomial("2^10*(a1 + a2)^2*(4*a1*a2 - a3^2)*(3*a1^2 + 10*a1*a2 + 3*a2^2 - a3^2)", v);
  CHECK(det_fraction_free(m) == expected);
}

TEST_CASE("diagonal quartic system of two reflections") {
  auto v = make_varset({"a1", "a2", "b1", "b2", "c"});
  PolyMatrix m = parse_matrix(v, {{"8*a1", "0", "0"}, {"0", "8*a2", "0"}, {"0", "0", "4*(a1 + a2)"}});
  std::vector<Polynomial> rhs{parse_polynomial("-b1", v), parse_polynomial("-b2", v), parse_polynomial("-c", v)};
  LinearSolution s = solve_linear(m, rhs);
  REQUIRE(s.consistent);
  CHECK(s.rank == 3);
  CHECK(s.solution[0] == RationalFunction(parse_polynomial("-b1", v), parse_polynomial("8*a1", v)));
  CHECK(s.solution[1] == RationalFunction(parse_polynomial("-b2", v), parse_polynomial("8*a2", v)));
  CHECK(s.solution[2] == RationalFunction(parse_polynomial("-c", v), parse_polynomial("4*a1 + 4*a2", v)));
  std::vector<Polynomial> conds = condition_factors(s.determinant);
  std::vector<Polynomial> expected{parse_polynomial("a1", v), parse_polynomial("a2", v), parse_polynomial("a1 + a2", v)};
  REQUIRE(conds.size() == 3);
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& c : conds) found = found || proportional(c, e);
    CHECK(found);
  }
}

TEST_CASE("zero system") {
  auto v = make_varset({"a"});
  PolyMatrix m(3, 3, Polynomial(v));
  LinearSolution s = solve_linear(m, std::vector<Polynomial>(3, Polynomial(v)));
  CHECK(s.consistent);
  CHECK(s.rank == 0);
  for (const auto& x : s.solution) CHECK(x.is_zero());
  CHECK(s.determinant == Polynomial(v, Rational(1)));
  std::vector<Polynomial> f{Polynomial(v, Rational(1)), Polynomial(v), Polynomial(v)};
  CHECK_FALSE(solve_linear(m, f).consistent);
}

TEST_CASE("solutions satisfy the system") {
  auto v = make_varset({"a", "b"});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    PolyMatrix m(4, 4);
    std::vector<Polynomial> f;
    std::uniform_int_distribution<int> d(-5, 5);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = Polynomial(v, Rational(d(rng)));
      m(i, i) += Polynomial::variable(v, trial % 2);
      f.push_back(random_polynomial(rng, v, 2, 2));
    }
    LinearSolution s = solve_linear(m, f);
    if (!s.consistent) continue;
    for (std::size_t i = 0; i < 4; ++i) {
      RationalFunction lhs;
      for (std::size_t j = 0; j < 4; ++j) lhs += RationalFunction(m(i, j)) * s.solution[j];
      CHECK(lhs == RationalFunction(f[i]));
    }
  }
  // Singular but consistent: the second row is twice the first.
  PolyMatrix sing = parse_matrix(v, {{"a", "1"}, {"2*a", "2"}});
  LinearSolution s = solve_linear(sing, std::vector<Polynomial>{parse_polynomial("b", v), parse_polynomial("2*b", v)});
  CHECK(s.consistent);
  CHECK(s.rank == 1);
  CHECK(generic_rank(sing) == 1);
}

TEST_CASE("condition helpers") {
  auto v = make_varset({"b1", "b2"});
  Polynomial p = parse_polynomial("-24*b1^2*(b1 + 3*b2)", v);
  auto conds = condition_factors(p);
  REQUIRE(conds.size() == 2);
  CHECK(conds[0] == parse_polynomial("b1", v));
  CHECK(conds[1] == parse_polynomial("b1 + 3*b2", v));
  CHECK(normalize_condition(parse_polynomial("-6*b1 - 18*b2", v)) == parse_polynomial("b1 + 3*b2", v));
  CHECK(same_vanishing_locus(parse_polynomial("b1^2*(b1 + 3*b2)", v), parse_polynomial("b1*(b1 + 3*b2)", v)));
  CHECK_FALSE(same_vanishing_locus(parse_polynomial("b1*b2", v), parse_polynomial("b1", v)));
  CHECK(proportional(parse_polynomial("2*b1", v), parse_polynomial("-b1", v)));
  CHECK_FALSE(proportional(parse_polynomial("b1", v), parse_polynomial("b1 + b2", v)));
}

}  // TEST_SUITE
