#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitred/orbit_potential.hpp"

namespace orbitred {

enum class Mode { fixed, varying };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct SourceComponent {
  unsigned degree = 0;
  /// In varying mode: with the critical parameters already set to zero.
  JPolynomial poly;
};

/// Fixed mode: lowest nonzero component. Varying mode: lowest component
/// that survives setting the critical parameters to zero, restricted.
/// Throws NoUsableSource if there is none.
SourceComponent source_component(const JPolynomial& f, const OrbitSpace& space, Mode mode,
                                 const ParameterSpec& params);

/// Explicit monomial lists for one degree. A list containing monomials
/// outside normal form switches the product to unreduced form.
struct MonomialOrder {
  std::vector<Monomial> targets;
  std::vector<Monomial> generators;
};

/// First-order change of target coefficients per unit generator coefficient:
/// coefficient of targets[t] in L_{generators[g]}(source) is
/// entries(t, g) / scale.
struct TransferMatrix {
  unsigned source_degree = 0;
  unsigned target_degree = 0;
  unsigned generator_degree = 0;
  std::vector<Monomial> targets;
  std::vector<Monomial> generators;
  PolyMatrix entries;
  Polynomial scale = Polynomial::constant(1);
  bool raw = false;
};

TransferMatrix build_transfer(const SourceComponent& source, unsigned target_degree, const OrbitSpace& space,
                              const std::optional<MonomialOrder>& order = std::nullopt);

struct EliminationPlan {
  std::vector<Monomial> zeroed;
  std::vector<Monomial> kept;
  /// Generator columns used as pivots.
  std::vector<std::size_t> pivot_generators;
  /// Determinant of the pivot block; the plan needs it nonzero.
  Polynomial determinant;
  /// determinant split into indeterminate factors and a primitive cofactor.
  std::vector<Polynomial> conditions;
  /// Filled by complete_plan: one coefficient per generator monomial.
  std::vector<RationalFunction> solution;
};

/// Target subsets of size rank(T) that some generator can zero, in
/// lexicographic order of the kept index sets. Exhaustive up to 12 targets,
/// otherwise at most max_sets plans. In varying mode the entries are first
/// restricted to the critical locus.
std::vector<EliminationPlan> eliminable_sets(const TransferMatrix& t, Mode mode, const ParameterSpec& params,
                                             std::size_t max_sets = 256);

/// Plan zeroing exactly the given targets, or nullopt if T restricted to
/// them does not have full row rank.
std::optional<EliminationPlan> plan_for(const TransferMatrix& t, const std::vector<Monomial>& zeroed, Mode mode,
                                        const ParameterSpec& params);

/// Solve T_S xi = -f_S for the current coefficients f of the potential.
void complete_plan(EliminationPlan& plan, const TransferMatrix& t, const JPolynomial& current, Mode mode,
                   const ParameterSpec& params);

/// sum_g xi_g * g.
JPolynomial plan_generator(const EliminationPlan& plan, const TransferMatrix& t, const OrbitSpace& space);

struct CriterionResult {
  bool eliminable = false;
  std::string reason;
  JPolynomial generator;
  /// Q_i = dH/dJ_i.
  std::vector<JPolynomial> q;
  std::vector<Polynomial> conditions;
  /// L_H F + term: what the first-order change does besides cancelling the term.
  JPolynomial remainder;
};

/// Whether the single term can be cancelled at first order through the
/// source component of F.
CriterionResult criterion_check(const JPolynomial& term, const JPolynomial& f, const OrbitSpace& space, Mode mode,
                                const ParameterSpec& params);

}  // namespace orbitred
