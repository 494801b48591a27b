#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitred/expression.hpp"
#include "orbitred/linalg.hpp"
#include "orbitred/problem.hpp"

namespace testing {

using namespace orbitred;

inline std::string data_path(const std::string& name) { return std::string(ORBITRED_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ProblemFile load(const std::string& name) { return parse_problem(read_file(data_path(name))); }

/// Orbit-space polynomial with parameter coefficients, written like a problem file.
inline JPolynomial jp(const ProblemFile& p, const std::string& text) {
  return parse_j_polynomial(text, p.orbit_space().j_vars(), p.params.vars());
}

/// Polynomial in the parameters.
inline Polynomial pp(const ProblemFile& p, const std::string& text) { return parse_polynomial(text, p.params.vars()); }

inline Monomial jm(const ProblemFile& p, const std::string& text) {
  return parse_monomial(text, p.orbit_space().j_vars());
}

inline std::vector<Monomial> jms(const ProblemFile& p, const std::vector<std::string>& texts) {
  std::vector<Monomial> out;
  for (const auto& t : texts) out.push_back(jm(p, t));
  return out;
}

/// Polynomial in the orbit-space variables with rational coefficients.
inline Polynomial jq(const ProblemFile& p, const std::string& text) {
  return parse_polynomial(text, p.orbit_space().j_vars());
}

inline Rational random_rational(std::mt19937_64& rng, int range = 9, int den = 4) {
  std::uniform_int_distribution<int> n(-range, range), d(1, den);
  return Rational(n(rng)) / Rational(d(rng));
}

inline Rational random_nonzero(std::mt19937_64& rng, int range = 9, int den = 4) {
  for (;;) {
    Rational r = random_rational(rng, range, den);
    if (!r.is_zero()) return r;
  }
}

/// Random polynomial over the given variables with total degree <= max_degree.
inline Polynomial random_polynomial(std::mt19937_64& rng, const VarSetPtr& vars, unsigned max_degree,
                                    std::size_t terms) {
  std::uniform_int_distribution<unsigned> e(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars->size() - 1);
  std::vector<Polynomial::Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    unsigned deg = e(rng);
    std::vector<unsigned> exps(vars->size(), 0);
    for (unsigned k = 0; k < deg; ++k) ++exps[pick(rng)];
    out.emplace_back(Monomial(exps), random_rational(rng));
  }
  return Polynomial::from_terms(vars, std::move(out));
}

/// Random J-polynomial with parameter coefficients drawn from a few simple
/// shapes, weighted degree in [lo, hi].
inline JPolynomial random_j_polynomial(std::mt19937_64& rng, const OrbitSpace& space, const VarSetPtr& params,
                                       unsigned lo, unsigned hi, std::size_t terms) {
  std::vector<Monomial> pool;
  for (unsigned w = lo; w <= hi; ++w)
    for (auto& m : monomials_of_weighted_degree(space.weights(), w)) pool.push_back(m);
  std::vector<JPolynomial::Term> out;
  if (pool.empty()) return JPolynomial(space.j_vars());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> par(0, params->size() ? params->size() - 1 : 0);
  std::uniform_int_distribution<int> shape(0, 2);
  for (std::size_t t = 0; t < terms; ++t) {
    RationalFunction c(random_nonzero(rng));
    if (params->size()) {
      Polynomial v = Polynomial::variable(params, par(rng));
      int s = shape(rng);
      if (s == 1) c = RationalFunction(v * random_nonzero(rng));
      if (s == 2) c = RationalFunction(v + Polynomial(params, random_nonzero(rng)));
    }
    out.emplace_back(pool[pick(rng)], c);
  }
  return space.normal_form(JPolynomial::from_terms(space.j_vars(), std::move(out)));
}

/// Integer-valued matrix convenience.
inline PolyMatrix constant_matrix(const VarSetPtr& vars, const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<Polynomial>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (int v : row) r.back().push_back(Polynomial(vars, Rational(v)));
  }
  return PolyMatrix(std::move(r));
}

inline PolyMatrix parse_matrix(const VarSetPtr& vars, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Polynomial>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (const auto& s : row) r.back().push_back(parse_polynomial(s, vars));
  }
  return PolyMatrix(std::move(r));
}

/// Cofactor expansion along the first row; independent of the Bareiss code.
inline Polynomial cofactor_det(const PolyMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(1);
  if (n == 1) return m(0, 0);
  Polynomial sum;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cs.push_back(k);
    Polynomial term = m(0, j) * cofactor_det(m.select(rs, cs));
    sum = (j % 2) ? sum - term : sum + term;
  }
  return sum;
}

/// Rank of a rational matrix by plain Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace testing
