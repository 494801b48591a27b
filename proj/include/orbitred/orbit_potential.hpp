#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbitred/invariant_ring.hpp"

namespace orbitred {

/// Control parameters of a potential; the critical ones vanish at the
/// transition point.
class ParameterSpec {
 public:
  ParameterSpec() : vars_(make_varset({})) {}
  ParameterSpec(std::vector<std::string> names, const std::vector<std::string>& critical);

  const VarSetPtr& vars() const { return vars_; }
  const std::vector<std::size_t>& critical() const { return critical_; }
  bool is_critical(std::size_t i) const;
  std::vector<std::string> critical_names() const;

  /// Substitute 0 for every critical parameter.
  RationalFunction restrict(const RationalFunction& c) const;
  Polynomial restrict(const Polynomial& p) const;
  JPolynomial restrict(const JPolynomial& f) const;

 private:
  VarSetPtr vars_;
  std::vector<std::size_t> critical_;
};

/// The invariant basis together with its P-matrix lifted to parameter
/// coefficients; everything the orbit-space derivation needs.
class OrbitSpace {
 public:
  explicit OrbitSpace(InvariantBasis basis);

  const InvariantBasis& basis() const { return basis_; }
  const PMatrix& p_matrix() const { return p_; }
  const VarSetPtr& j_vars() const { return basis_.j_vars(); }
  const std::vector<unsigned>& weights() const { return basis_.degrees(); }
  std::size_t size() const { return basis_.size(); }

  JPolynomial normal_form(const JPolynomial& f) const { return orbitred::normal_form(f, basis_.syzygies()); }
  const JPolynomial& p_entry(std::size_t i, std::size_t h) const { return lifted_[i * size() + h]; }

 private:
  InvariantBasis basis_;
  PMatrix p_;
  std::vector<JPolynomial> lifted_;
};

/// Components of F keyed by weighted degree.
std::map<unsigned, JPolynomial> components(const JPolynomial& f, const std::vector<unsigned>& weights);
JPolynomial component(const JPolynomial& f, unsigned degree, const std::vector<unsigned>& weights);
JPolynomial truncate(const JPolynomial& f, unsigned max_degree, const std::vector<unsigned>& weights);
/// Weighted degree of a homogeneous nonzero polynomial; throws otherwise.
unsigned homogeneous_degree(const JPolynomial& f, const std::vector<unsigned>& weights);

/// Gradient generator H, homogeneous of weighted degree >= 4. A zero H is
/// allowed and generates the identity.
class Generator {
 public:
  Generator() = default;
  Generator(JPolynomial h, const std::vector<unsigned>& weights);

  const JPolynomial& poly() const { return h_; }
  /// 0 for the zero generator.
  unsigned degree() const { return degree_; }
  bool is_zero() const { return h_.is_zero(); }

 private:
  JPolynomial h_;
  unsigned degree_ = 0;
};

/// U_i = sum_k dF/dJ_k P_ki, in normal form.
std::vector<JPolynomial> u_vector(const JPolynomial& f, const OrbitSpace& space);

/// L_H F = sum_{a,b} dF/dJ_a P_ab dH/dJ_b, in normal form.
JPolynomial derivation_apply(const JPolynomial& f, const JPolynomial& h, const OrbitSpace& space);

/// Same product without syzygy rewriting.
JPolynomial derivation_apply_raw(const JPolynomial& f, const JPolynomial& h, const OrbitSpace& space);

/// exp(L_H) F truncated at weighted degree max_degree.
JPolynomial lie_transform(const JPolynomial& f, const Generator& h, const OrbitSpace& space, unsigned max_degree);

/// 2 * largest invariant degree.
unsigned stability_order(const InvariantBasis& basis);

/// Most general invariant potential with weighted degree in [d_1, N]: one
/// parameter c<degree>_<index> per normal-form monomial.
struct GeneralPotential {
  JPolynomial potential;
  VarSetPtr parameters;
};
GeneralPotential general_potential(const InvariantBasis& basis, unsigned max_degree);

/// c * m over the orbit-space indeterminates.
JPolynomial j_term(const OrbitSpace& space, const Monomial& m, RationalFunction c);

}  // namespace orbitred
