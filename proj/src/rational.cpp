#include "orbitred/rational.hpp"

#include <cmath>

#include "orbitred/error.hpp"

namespace orbitred {

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw DomainError("rational with zero denominator");
  return Rational(q);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite value");
  // mpq_set_d is exact for finite doubles.
  return Rational(mpq_class(v));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return Rational(mpq_class(1 / q_));
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::str() const { return q_.get_str(10); }

}  // namespace orbitred
