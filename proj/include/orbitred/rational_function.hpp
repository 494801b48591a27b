#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitred/polynomial.hpp"

namespace orbitred {

/// Quotient of parameter polynomials. The denominator is kept as a product
/// of primitive integer polynomials with positive leading coefficients;
/// numerator multiples of a stored factor are cancelled on every operation.
/// No multivariate gcd is computed, so two equal values may be stored
/// differently; operator== compares by cross-multiplication.
class RationalFunction {
 public:
  struct Factor {
    Polynomial base;
    unsigned power = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  RationalFunction() = default;
  template <std::integral I>
  RationalFunction(I v) : num_(nullptr, Rational(v)) {}
  RationalFunction(const Rational& r) : num_(nullptr, r) {}
  RationalFunction(Polynomial num) : num_(std::move(num)) {}
  RationalFunction(Polynomial num, const Polynomial& den);

  const Polynomial& numerator() const { return num_; }
  const std::vector<Factor>& denominator_factors() const { return den_; }
  Polynomial denominator() const;
  VarSetPtr vars() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  /// Value when constant.
  std::optional<Rational> constant_value() const;

  RationalFunction operator-() const;
  RationalFunction inverse() const;
  /// this / prod(base^power).
  RationalFunction divided_by(const std::vector<Factor>& den) const;

  RationalFunction& operator+=(const RationalFunction& o) { return *this = add(*this, o); }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = add(*this, -o); }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = multiply(*this, o); }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = multiply(*this, o.inverse()); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, -b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) { return multiply(a, b); }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return multiply(a, b.inverse());
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  /// Set the listed parameters to zero. Throws DomainError if the
  /// denominator vanishes identically there.
  RationalFunction set_zero(std::span<const std::size_t> indices) const;
  /// Throws DomainError on a pole.
  Rational evaluate(std::span<const Rational> point) const;

  /// "-1/8*b1/a1", "(b1 + c)/(a1*(a1 + a2))".
  std::string str() const;

 private:
  Polynomial num_;
  std::vector<Factor> den_;

  static RationalFunction add(const RationalFunction& a, const RationalFunction& b);
  static RationalFunction multiply(const RationalFunction& a, const RationalFunction& b);
  void divide_by(const Polynomial& d, unsigned power);
  void cancel();
  friend CoefficientText format_coefficient(const RationalFunction& c);
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
CoefficientText format_coefficient(const RationalFunction& c);

/// Polynomial in orbit-space indeterminates over the parameter fraction
/// field.
using JPolynomial = BasicPolynomial<RationalFunction>;

inline JPolynomial lift(const Polynomial& p) {
  return p.map_coefficients<RationalFunction>([](const Rational& c) { return RationalFunction(c); });
}

}  // namespace orbitred
