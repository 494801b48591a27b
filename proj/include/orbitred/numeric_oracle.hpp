#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbitred/pipeline.hpp"

namespace orbitred {

/// Quad precision keeps the high-order defects above rounding noise.
using Real = __float128;

Real to_real(const Rational& q);
double to_double(Real r);
std::string format_real(Real r, int digits = 6);

/// A polynomial with numeric coefficients over the orbit-space variables.
struct NumericJPolynomial {
  std::vector<std::pair<Monomial, Real>> terms;
  Real evaluate(std::span<const Real> j) const;
};

/// Parameter values plus the invariant basis, ready for floating-point
/// evaluation. Values are taken as the exact binary doubles given.
class NumericContext {
 public:
  /// Throws DomainError when a non-critical parameter is set to zero or a
  /// condition evaluates within 1e-6 of zero. Unknown names throw
  /// InvalidArgument.
  NumericContext(const InvariantBasis& basis, const ParameterSpec& params, const std::map<std::string, double>& values,
                 const std::vector<Polynomial>& conditions = {});

  const InvariantBasis& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.dimension(); }

  /// Exact value of a coefficient at the assigned parameters. Throws
  /// InvalidArgument if it depends on an unassigned parameter.
  Rational coefficient(const RationalFunction& c) const;
  NumericJPolynomial numeric(const JPolynomial& f) const;

  std::vector<Real> invariants(std::span<const Real> x) const;
  /// gradient[a][i] = dJ_a/dx_i.
  std::vector<std::vector<Real>> invariant_gradients(std::span<const Real> x) const;

 private:
  struct XPoly {
    std::vector<std::pair<Monomial, Real>> terms;
    Real evaluate(std::span<const Real> x) const;
  };
  InvariantBasis basis_;
  VarSetPtr param_vars_;
  std::vector<Rational> values_;
  std::vector<bool> assigned_;
  std::vector<XPoly> j_;
  std::vector<std::vector<XPoly>> dj_;
};

Real eval_potential(const JPolynomial& f, const NumericContext& ctx, std::span<const Real> x);

/// Time-one map of dx/dt = grad H, classical RK4 with the given step.
std::vector<Real> flow_map(const Generator& h, const NumericContext& ctx, std::span<const Real> y,
                           double step = 1e-3);

struct VerifyResult {
  double slope = 0;
  bool pass = false;
  bool exact = false;
  double required_slope = 0;
  std::vector<double> scales;
  /// Largest defect over directions, per scale.
  std::vector<double> defects;
  std::uint64_t seed = 0;
};

std::vector<double> default_scales();

/// Compares original(x) with reduced(eps*u) where x is the composed stage
/// flow applied to eps*u, the last stage innermost.
VerifyResult verify_reduction(const JPolynomial& original, const ReductionReport& report, const NumericContext& ctx,
                              std::size_t samples = 8, std::vector<double> scales = default_scales(),
                              std::uint64_t seed = 42);

}  // namespace orbitred
