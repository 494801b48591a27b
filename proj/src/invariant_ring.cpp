#include "orbitred/invariant_ring.hpp"

#include <set>

namespace orbitred {

namespace {

bool homogeneous(const Polynomial& p, unsigned& degree) {
  if (p.is_zero()) return false;
  degree = p.leading().first.degree();
  for (const auto& t : p.terms())
    if (t.first.degree() != degree) return false;
  return true;
}

// Exact solve over Q: a solution of a x = b
// (free unknowns 0) or nullopt when inconsistent. a is row-major.
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                    std::size_t cols) {
  std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace

unsigned weighted_degree(const Monomial& m, const std::vector<unsigned>& weights) {
  if (m.length() > weights.size()) throw InvalidArgument("monomial has an unknown indeterminate");
  unsigned d = 0;
  for (std::size_t i = 0; i < m.length(); ++i) d += weights[i] * m.exponent(i);
  return d;
}

InvariantBasis::InvariantBasis(VarSetPtr x_vars, std::vector<std::string> names, std::vector<Polynomial> invariants,
                               std::vector<SyzygyRule> syzygies, std::vector<Matrix<Rational>> generators)
    : x_vars_(std::move(x_vars)),
      invariants_(std::move(invariants)),
      syzygies_(std::move(syzygies)),
      generators_(std::move(generators)) {
  if (!x_vars_ || x_vars_->size() == 0) throw InvalidArgument("basis needs at least one x indeterminate");
  if (names.size() != invariants_.size()) throw InvalidArgument("invariant names and polynomials differ in number");
  if (invariants_.empty()) throw InvalidArgument("empty invariant basis");
  for (const auto& n : names)
    if (x_vars_->index_of(n)) throw InvalidArgument("invariant name '" + n + "' clashes with an x indeterminate");
  j_vars_ = make_varset(std::move(names));
  for (std::size_t a = 0; a < invariants_.size(); ++a) {
    auto& p = invariants_[a];
    if (!compatible(p.vars(), x_vars_)) throw InvalidArgument("invariant " + j_vars_->name(a) + " is not over x");
    p = p.with_vars(x_vars_);
    unsigned d = 0;
    if (!homogeneous(p, d) || d == 0)
      throw InvalidArgument("invariant " + j_vars_->name(a) + " is not homogeneous of positive degree");
    if (!degrees_.empty() && d < degrees_.back())
      throw InvalidArgument("invariant degrees must be non-decreasing");
    degrees_.push_back(d);
  }
  for (auto& rule : syzygies_) {
    std::string where = "syzygy " + j_vars_->format(rule.lhs);
    if (rule.lhs.length() > size()) throw InvalidArgument(where + ": unknown invariant");
    rule.rhs = rule.rhs.with_vars(j_vars_);
    if (!(expand(rule.lhs) - expand(rule.rhs)).is_zero())
      throw InvalidArgument(where + ": unsound, lhs - rhs does not vanish in x");
    unsigned w = weighted_degree(rule.lhs, degrees_);
    for (const auto& t : rule.rhs.terms()) {
      if (grlex_compare(rule.lhs, t.first) <= 0)
        throw InvalidArgument(where + ": lhs must exceed every rhs monomial in graded-lex order");
      if (weighted_degree(t.first, degrees_) != w) throw InvalidArgument(where + ": not weighted-homogeneous");
    }
  }
  for (const auto& g : generators_)
    if (g.rows() != dimension() || g.cols() != dimension())
      throw InvalidArgument("group generator has wrong dimensions");
}

Polynomial InvariantBasis::expand(const Monomial& m) const {
  return expand(Polynomial::term(j_vars_, m, 1));
}

Polynomial InvariantBasis::expand(const Polynomial& j_poly) const {
  if (!compatible(j_poly.vars(), j_vars_)) throw InvalidArgument("polynomial is not over the invariants");
  if (j_poly.is_constant()) return Polynomial(x_vars_, j_poly.constant_term());
  return j_poly.with_vars(j_vars_).substitute(invariants_);
}

bool InvariantBasis::in_normal_form(const Monomial& m) const {
  for (const auto& r : syzygies_)
    if (r.lhs.divides(m)) return false;
  return true;
}

std::vector<Monomial> InvariantBasis::normal_monomials(unsigned weighted_degree) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_weighted_degree(degrees_, weighted_degree))
    if (in_normal_form(m)) out.push_back(std::move(m));
  return out;
}

std::map<unsigned, Polynomial> homogeneous_parts(const Polynomial& p) {
  std::map<unsigned, std::vector<Polynomial::Term>> buckets;
  for (const auto& t : p.terms()) buckets[t.first.degree()].push_back(t);
  std::map<unsigned, Polynomial> out;
  for (auto& [d, terms] : buckets) out.emplace(d, Polynomial::from_terms(p.vars(), std::move(terms)));
  return out;
}

Polynomial express_in_invariants(const Polynomial& p, const InvariantBasis& basis) {
  if (!compatible(p.vars(), basis.x_vars())) throw InvalidArgument("polynomial is not over x");
  Polynomial result(basis.j_vars());
  for (const auto& [d, part] : homogeneous_parts(p)) {
    if (d == 0) {
      result += Polynomial(basis.j_vars(), part.constant_term());
      continue;
    }
    std::vector<Monomial> cands = basis.normal_monomials(d);
    if (cands.empty()) throw NotExpressible("no invariant monomial of degree " + std::to_string(d));
    std::vector<Polynomial> images;
    std::vector<Monomial> rows;
    std::set<Monomial, GrlexGreater> seen;
    for (const auto& m : cands) {
      images.push_back(basis.expand(m));
      for (const auto& t : images.back().terms()) seen.insert(t.first);
    }
    for (const auto& t : part.terms()) seen.insert(t.first);
    rows.assign(seen.begin(), seen.end());
    std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cands.size()));
    std::vector<Rational> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cands.size(); ++j) a[i][j] = images[j].coefficient(rows[i]);
      b[i] = part.coefficient(rows[i]);
    }
    auto x = solve_rational(std::move(a), std::move(b), cands.size());
    if (!x) throw NotExpressible("degree-" + std::to_string(d) + " part is not a combination of the invariants");
    std::vector<Polynomial::Term> terms;
    for (std::size_t j = 0; j < cands.size(); ++j) terms.emplace_back(cands[j], (*x)[j]);
    result += Polynomial::from_terms(basis.j_vars(), std::move(terms));
  }
  return result;
}

PMatrix p_matrix(const InvariantBasis& basis) {
  std::size_t r = basis.size(), n = basis.dimension();
  std::vector<std::vector<Polynomial>> grads(r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t k = 0; k < n; ++k) grads[a].push_back(basis.invariants()[a].derivative(k));
  PMatrix p(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t h = i; h < r; ++h) {
      Polynomial dot(basis.x_vars());
      for (std::size_t k = 0; k < n; ++k) dot += grads[i][k] * grads[h][k];
      p(i, h) = express_in_invariants(dot, basis);
      p(h, i) = p(i, h);
    }
  return p;
}

InvarianceCheck check_invariance(const InvariantBasis& basis) {
  if (basis.group_generators().empty()) throw InvalidArgument("basis has no group generators");
  std::size_t n = basis.dimension();
  InvarianceCheck out;
  for (std::size_t g = 0; g < basis.group_generators().size(); ++g) {
    const auto& t = basis.group_generators()[g];
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial row(basis.x_vars());
      for (std::size_t j = 0; j < n; ++j)
        if (!t(i, j).is_zero()) row += Polynomial::term(basis.x_vars(), Monomial::variable(j), t(i, j));
      images.push_back(row);
    }
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Polynomial& ja = basis.invariants()[a];
      if (!(ja.substitute(images).with_vars(basis.x_vars()) == ja)) {
        out.ok = false;
        out.counterexample = std::make_pair(g, a);
        return out;
      }
    }
  }
  return out;
}

}  // namespace orbitred
