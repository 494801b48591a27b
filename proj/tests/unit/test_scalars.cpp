#include <map>

#include "doctest.h"
#include "support.hpp"

using namespace orbitred;
using namespace testing;

TEST_SUITE("scalars") {

TEST_CASE("rationals stay in lowest terms") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational a = random_rational(rng, 50, 30), b = random_nonzero(rng, 50, 30);
    for (const Rational& r : {a + b, a - b, a * b, a / b}) {
      CHECK(r.den() > 0);
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
      CHECK((r.is_zero() ? r.den() == 1 : g == 1));
    }
  }
  CHECK(Rational::parse("6/-4") == Rational(-3) / Rational(2));
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational::from_double(0.375) == Rational(3) / Rational(8));
  CHECK_THROWS_AS(Rational(0).inverse(), DomainError);
}

TEST_CASE("difference of squares and identities") {
  auto j = make_varset({"J1", "J2"});
  Polynomial a = parse_polynomial("J1 + J2", j), b = parse_polynomial("J1 - J2", j);
  CHECK(a * b == parse_polynomial("J1^2 - J2^2", j));
  CHECK((a * b).str() == "J1^2 - J2^2");
  CHECK(a + Polynomial(j) == a);
  CHECK((a - a).is_zero());
}

TEST_CASE("ring laws on random sparse polynomials") {
  auto v = make_varset({"x", "y", "z"});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Polynomial p = random_polynomial(rng, v, 8, 4), q = random_polynomial(rng, v, 8, 4),
               r = random_polynomial(rng, v, 8, 3);
    REQUIRE((p + q) + r == p + (q + r));
    REQUIRE(p + q == q + p);
    REQUIRE((p * q) * r == p * (q * r));
    REQUIRE(p * q == q * p);
    REQUIRE(p * (q + r) == p * q + p * r);
    REQUIRE((p - q) + q == p);
  }
}

TEST_CASE("cube of the quadratic invariant against naive expansion") {
  auto v = make_varset({"x", "y", "z"});
  Polynomial s = parse_polynomial("x^2 + y^2 + z^2", v);
  Polynomial cube = s * s * s;
  // Termwise product of three copies, accumulated into a map.
  std::map<std::vector<unsigned>, long> naive;
  for (unsigned a = 0; a < 3; ++a)
    for (unsigned b = 0; b < 3; ++b)
      for (unsigned c = 0; c < 3; ++c) {
        std::vector<unsigned> e(3, 0);
        e[a] += 2;
        e[b] += 2;
        e[c] += 2;
        ++naive[e];
      }
  CHECK(cube.size() == naive.size());
  for (const auto& [e, n] : naive) CHECK(cube.coefficient(Monomial(e)) == Rational(n));
  CHECK(s.pow(3) == cube);
}

TEST_CASE("exact division and derivatives") {
  auto v = make_varset({"x", "y"});
  Polynomial a = parse_polynomial("x^2 - y^2", v), b = parse_polynomial("x + y", v);
  auto q = divide_exact(a, b);
  REQUIRE(q);
  CHECK(*q == parse_polynomial("x - y", v));
  CHECK_FALSE(divide_exact(parse_polynomial("x^2 + y^2", v), b));
  CHECK(a.derivative(0) == parse_polynomial("2*x", v));
  std::vector<Polynomial> images{parse_polynomial("y", v), parse_polynomial("x", v)};
  CHECK(a.substitute(images) == -a);
}

TEST_CASE("rational functions") {
  auto p = make_varset({"a", "b"});
  Polynomial a = Polynomial::variable(p, 0), b = Polynomial::variable(p, 1);
  RationalFunction ab(a, b), ba(b, a);
  CHECK(ab * ba == RationalFunction(1));
  RationalFunction sum = RationalFunction(Polynomial(p, Rational(1)), a) + RationalFunction(Polynomial(p, Rational(1)), b);
  CHECK(sum == RationalFunction(a + b, a * b));
  CHECK(RationalFunction(a * a - b * b, a + b) == RationalFunction(a - b));
  CHECK(RationalFunction(a * a - b * b, a + b).is_polynomial());
  CHECK(RationalFunction(-b, Polynomial(p, Rational(8)) * a).str() == "-1/8*b/a");
  CHECK_THROWS_AS(RationalFunction(a, Polynomial(p)), DomainError);
  CHECK_THROWS_AS(RationalFunction(0).inverse(), DomainError);
  std::vector<std::size_t> crit{0};
  CHECK_THROWS_AS(ab.divided_by({}).inverse().set_zero(crit), DomainError);
  CHECK(RationalFunction(a + b, b).set_zero(crit) == RationalFunction(1));
}

TEST_CASE("random rational expressions reassociate") {
  auto v = make_varset({"a", "b", "c"});
  std::mt19937_64 rng(3);
  auto random_fraction = [&] {
    Polynomial n = random_polynomial(rng, v, 2, 3);
    Polynomial d = random_polynomial(rng, v, 2, 2);
    while (d.is_zero()) d = random_polynomial(rng, v, 2, 2);
    return RationalFunction(n, d);
  };
  for (int i = 0; i < 60; ++i) {
    RationalFunction w = random_fraction(), x = random_fraction(), y = random_fraction(), z = random_fraction();
    CHECK(((w + x) * y) + z == z + (w * y + x * y));
    CHECK((w * x) * (y + z) == w * (x * y) + (w * x) * z);
    if (!x.is_zero()) CHECK((w / x) * x == w);
  }
}

}  // TEST_SUITE
