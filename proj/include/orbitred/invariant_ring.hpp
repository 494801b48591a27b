#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitred/linalg.hpp"

namespace orbitred {

/// Oriented relation lhs -> rhs among the basic invariants.
struct SyzygyRule {
  Monomial lhs;
  Polynomial rhs;
};

using PMatrix = Matrix<Polynomial>;

/// Minimal integrity basis of a linear group action: homogeneous invariant
/// polynomials J_a in the x indeterminates, sorted by degree, together with
/// the oriented syzygies among them.
class InvariantBasis {
 public:
  /// Validates homogeneity, degree order, rule orientation, weighted
  /// homogeneity of the rules and their soundness in x. Throws
  /// InvalidArgument on violation.
  InvariantBasis(VarSetPtr x_vars, std::vector<std::string> names, std::vector<Polynomial> invariants,
                 std::vector<SyzygyRule> syzygies = {}, std::vector<Matrix<Rational>> generators = {});

  const VarSetPtr& x_vars() const { return x_vars_; }
  const VarSetPtr& j_vars() const { return j_vars_; }
  std::size_t dimension() const { return x_vars_->size(); }
  std::size_t size() const { return invariants_.size(); }
  const std::vector<Polynomial>& invariants() const { return invariants_; }
  const std::vector<unsigned>& degrees() const { return degrees_; }
  const std::vector<SyzygyRule>& syzygies() const { return syzygies_; }
  const std::vector<Matrix<Rational>>& group_generators() const { return generators_; }

  Polynomial j_variable(std::size_t a) const { return Polynomial::variable(j_vars_, a); }
  /// Substitute J_a(x) into a polynomial over the J indeterminates.
  Polynomial expand(const Polynomial& j_poly) const;
  Polynomial expand(const Monomial& j_mono) const;

  bool in_normal_form(const Monomial& m) const;
  /// Normal-form J-monomials of the given weighted degree, descending.
  std::vector<Monomial> normal_monomials(unsigned weighted_degree) const;

 private:
  VarSetPtr x_vars_, j_vars_;
  std::vector<Polynomial> invariants_;
  std::vector<unsigned> degrees_;
  std::vector<SyzygyRule> syzygies_;
  std::vector<Matrix<Rational>> generators_;
};

unsigned weighted_degree(const Monomial& m, const std::vector<unsigned>& weights);

/// Rewrite until no monomial is divisible by a rule lhs. Throws DomainError
/// if the rules fail to terminate within the step budget.
template <class C>
BasicPolynomial<C> normal_form(const BasicPolynomial<C>& p, const std::vector<SyzygyRule>& rules,
                               std::size_t max_passes = 10000) {
  if (rules.empty()) return p;
  BasicPolynomial<C> cur = p;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    std::vector<typename BasicPolynomial<C>::Term> out;
    out.reserve(cur.size());
    for (const auto& [m, c] : cur.terms()) {
      const SyzygyRule* hit = nullptr;
      for (const auto& r : rules)
        if (r.lhs.divides(m)) {
          hit = &r;
          break;
        }
      if (!hit) {
        out.emplace_back(m, c);
        continue;
      }
      changed = true;
      Monomial rest = m.quotient(hit->lhs);
      for (const auto& [rm, rc] : hit->rhs.terms()) out.emplace_back(rest * rm, c * C(rc));
    }
    cur = BasicPolynomial<C>::from_terms(cur.vars(), std::move(out));
    if (!changed) return cur;
  }
  throw DomainError("syzygy rewriting does not terminate");
}

/// Write an x-polynomial as a normal-form J-polynomial. Throws
/// NotExpressible when it is not an invariant combination of the basis.
Polynomial express_in_invariants(const Polynomial& p, const InvariantBasis& basis);

/// P_ih = <grad J_i, grad J_h> in normal form over the J indeterminates.
PMatrix p_matrix(const InvariantBasis& basis);

struct InvarianceCheck {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;  // (generator, invariant)
};

/// Throws InvalidArgument when the basis carries no group generators.
InvarianceCheck check_invariance(const InvariantBasis& basis);

/// Homogeneous parts of an x-polynomial keyed by total degree.
std::map<unsigned, Polynomial> homogeneous_parts(const Polynomial& p);

}  // namespace orbitred
