#include "orbitred/linalg.hpp"

#include <utility>

namespace orbitred {

namespace {

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_constant()) {
    Polynomial q = a;
    return q.scale(b.constant_term().inverse());
  }
  auto q = divide_exact(a, b);
  if (!q) throw DomainError("fraction-free step is not exact");
  return *q;
}

// True when a should be preferred over b as pivot.
bool better_pivot(const Polynomial& a, const Polynomial& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return grlex_compare(a.leading().first, b.leading().first) > 0;
}

struct Elimination {
  std::vector<std::vector<Polynomial>> a;  // augmented rows
  std::vector<std::size_t> row_of, col_of;  // permuted index -> original
  std::size_t n_cols = 0;
  std::size_t rank = 0;
  int sign = 1;
  std::vector<Polynomial> pivots;
  Polynomial last = Polynomial::constant(1);
};

Elimination eliminate(const PolyMatrix& m, const std::vector<Polynomial>* rhs) {
  Elimination e;
  std::size_t rows = m.rows(), cols = m.cols();
  e.n_cols = cols;
  e.a.assign(rows, {});
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) e.a[i].push_back(m(i, j));
    if (rhs) e.a[i].push_back((*rhs)[i]);
  }
  e.row_of.resize(rows);
  e.col_of.resize(cols);
  for (std::size_t i = 0; i < rows; ++i) e.row_of[i] = i;
  for (std::size_t j = 0; j < cols; ++j) e.col_of[j] = j;
  std::size_t width = cols + (rhs ? 1 : 0);
  Polynomial prev = Polynomial::constant(1);

  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const Polynomial& c = e.a[i][j];
        if (c.is_zero()) continue;
        if (pi == rows || better_pivot(c, e.a[pi][pj])) pi = i, pj = j;
      }
    if (pi == rows) break;
    if (pi != k) {
      std::swap(e.a[pi], e.a[k]);
      std::swap(e.row_of[pi], e.row_of[k]);
      e.sign = -e.sign;
    }
    if (pj != k) {
      for (auto& r : e.a) std::swap(r[pj], r[k]);
      std::swap(e.col_of[pj], e.col_of[k]);
      e.sign = -e.sign;
    }
    Polynomial p = e.a[k][k];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == k) continue;
      Polynomial f = e.a[i][k];
      for (std::size_t j = k + 1; j < width; ++j) {
        Polynomial v = p * e.a[i][j];
        if (!f.is_zero() && !e.a[k][j].is_zero()) v -= f * e.a[k][j];
        e.a[i][j] = exact_quotient(v, prev);
      }
      e.a[i][k] = Polynomial();
      if (i < k) e.a[i][i] = p;
    }
    e.pivots.push_back(p);
    prev = p;
    e.rank = k + 1;
  }
  e.last = prev;
  return e;
}

}  // namespace

Polynomial det_fraction_free(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (m.rows() == 0) return Polynomial::constant(1);
  // Plain Bareiss with row swaps only, pivot = first nonzero in the column.
  std::size_t n = m.rows();
  std::vector<std::vector<Polynomial>> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i].push_back(m(i, j));
  int sign = 1;
  Polynomial prev = Polynomial::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return Polynomial();
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial v = a[k][k] * a[i][j];
        if (!a[i][k].is_zero() && !a[k][j].is_zero()) v -= a[i][k] * a[k][j];
        a[i][j] = exact_quotient(v, prev);
      }
      a[i][k] = Polynomial();
    }
    prev = a[k][k];
  }
  Polynomial d = a[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

LinearSolution solve_linear(const PolyMatrix& m, const std::vector<Polynomial>& f) {
  if (f.size() != m.rows()) throw InvalidArgument("right-hand side length does not match the matrix");
  Elimination e = eliminate(m, &f);
  LinearSolution s;
  s.rank = e.rank;
  s.pivot_minors = e.pivots;
  s.determinant = e.last;
  for (std::size_t k = 0; k < e.rank; ++k) {
    s.pivot_rows.push_back(e.row_of[k]);
    s.pivot_cols.push_back(e.col_of[k]);
  }
  std::size_t cols = m.cols();
  for (std::size_t i = e.rank; i < m.rows(); ++i)
    if (!e.a[i][cols].is_zero()) s.consistent = false;
  if (!s.consistent) return s;
  s.solution.assign(cols, RationalFunction());
  for (std::size_t k = 0; k < e.rank; ++k)
    s.solution[e.col_of[k]] = RationalFunction(e.a[k][cols], e.last);
  return s;
}

LinearSolution solve_linear(const PolyMatrix& m, const std::vector<RationalFunction>& f) {
  if (f.size() != m.rows()) throw InvalidArgument("right-hand side length does not match the matrix");
  std::vector<RationalFunction::Factor> common;
  for (const auto& v : f)
    for (const auto& fac : v.denominator_factors()) {
      auto it = std::find_if(common.begin(), common.end(), [&](const auto& c) { return c.base == fac.base; });
      if (it == common.end())
        common.push_back(fac);
      else
        it->power = std::max(it->power, fac.power);
    }
  Polynomial den = Polynomial::constant(1);
  for (const auto& c : common) den *= c.base.pow(c.power);
  std::vector<Polynomial> rhs;
  for (const auto& v : f) {
    RationalFunction scaled = v * RationalFunction(den);
    if (!scaled.is_polynomial()) throw DomainError("common denominator did not clear a right-hand side");
    rhs.push_back(scaled.numerator());
  }
  LinearSolution s = solve_linear(m, rhs);
  RationalFunction inv = RationalFunction(den).inverse();
  for (auto& x : s.solution) x *= inv;
  return s;
}

std::size_t generic_rank(const PolyMatrix& m) { return eliminate(m, nullptr).rank; }

Polynomial normalize_condition(const Polynomial& p) { return primitive_split(p).second; }

std::vector<Polynomial> condition_factors(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("zero condition");
  Polynomial prim = normalize_condition(p);
  Monomial mono = monomial_content(prim);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < mono.length(); ++i)
    if (mono.exponent(i)) out.push_back(Polynomial::term(prim.vars(), Monomial::variable(i), 1));
  if (!mono.is_one()) {
    std::vector<Polynomial::Term> terms;
    for (const auto& t : prim.terms()) terms.emplace_back(t.first.quotient(mono), t.second);
    prim = Polynomial::from_terms(prim.vars(), std::move(terms));
  }
  if (!prim.is_constant()) out.push_back(prim);
  return out;
}

namespace {

bool divides_some_power(const Polynomial& p, const Polynomial& q, unsigned max_power) {
  Polynomial qp = q;
  for (unsigned k = 1; k <= max_power; ++k) {
    if (divide_exact(qp, p)) return true;
    qp *= q;
  }
  return false;
}

}  // namespace

bool same_vanishing_locus(const Polynomial& p, const Polynomial& q, unsigned max_power) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return divides_some_power(p, q, max_power) && divides_some_power(q, p, max_power);
}

bool proportional(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  return normalize_condition(p) == normalize_condition(q);
}

}  // namespace orbitred
