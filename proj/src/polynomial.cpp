#include "orbitred/polynomial.hpp"

namespace orbitred {

std::pair<Rational, Polynomial> primitive_split(const Polynomial& p) {
  if (p.is_zero()) return {Rational(0), p};
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& t : p.terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.second.den().get_mpz_t());
  for (const auto& t : p.terms()) {
    mpz_class scaled = t.second.num() * (lcm_den / t.second.den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational content(gcd_num, lcm_den);
  if (p.leading().second.sign() < 0) content = -content;
  Polynomial prim = p;
  prim.scale(content.inverse());
  return {content, prim};
}

}  // namespace orbitred
