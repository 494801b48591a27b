#include "orbitred/numeric_oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "orbitred/error.hpp"

namespace orbitred {

namespace {

Real mpz_to_real(const mpz_class& z) {
  Real r = 0;
  const Real base = ldexpq(1, 64);
  for (std::size_t i = mpz_size(z.get_mpz_t()); i-- > 0;)
    r = r * base + static_cast<Real>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
  return sgn(z) < 0 ? -r : r;
}

bool mentions(const Polynomial& p, const std::vector<bool>& assigned) {
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 0; i < m.length(); ++i)
      if (m.exponent(i) && (i >= assigned.size() || !assigned[i])) return true;
  return false;
}

Real power(Real b, unsigned e) {
  Real r = 1;
  while (e--) r *= b;
  return r;
}

Real monomial_value(const Monomial& m, std::span<const Real> v) {
  Real r = 1;
  for (std::size_t i = 0; i < m.length(); ++i)
    if (m.exponent(i)) r *= power(v[i], m.exponent(i));
  return r;
}

void check_finite(std::span<const Real> v) {
  for (Real r : v)
    if (isinfq(r) || isnanq(r)) throw DomainError("numeric flow overflowed");
}

}  // namespace

Real to_real(const Rational& q) { return mpz_to_real(q.num()) / mpz_to_real(q.den()); }

double to_double(Real r) { return static_cast<double>(r); }

std::string format_real(Real r, int digits) {
  char buf[64];
  quadmath_snprintf(buf, sizeof buf, "%.*Qe", digits, r);
  return buf;
}

Real NumericJPolynomial::evaluate(std::span<const Real> j) const {
  Real s = 0;
  for (const auto& [m, c] : terms) s += c * monomial_value(m, j);
  return s;
}

Real NumericContext::XPoly::evaluate(std::span<const Real> x) const {
  Real s = 0;
  for (const auto& [m, c] : terms) s += c * monomial_value(m, x);
  return s;
}

NumericContext::NumericContext(const InvariantBasis& basis, const ParameterSpec& params,
                               const std::map<std::string, double>& values, const std::vector<Polynomial>& conditions)
    : basis_(basis), param_vars_(params.vars()) {
  values_.assign(param_vars_->size(), Rational(0));
  assigned_.assign(param_vars_->size(), false);
  for (const auto& [name, v] : values) {
    auto idx = param_vars_->index_of(name);
    if (!idx) throw InvalidArgument("unknown parameter '" + name + "'");
    if (!std::isfinite(v)) throw InvalidArgument("parameter '" + name + "' is not finite");
    values_[*idx] = Rational::from_double(v);
    assigned_[*idx] = true;
  }
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (assigned_[i] && !params.is_critical(i) && values_[i].is_zero())
      throw DomainError("non-critical parameter '" + param_vars_->name(i) + "' is zero");
  for (const auto& c : conditions) {
    if (mentions(c, assigned_)) throw InvalidArgument("condition " + c.str() + " uses an unassigned parameter");
    Rational v = c.evaluate<Rational>(values_, [](const Rational& r) { return r; });
    if (std::abs(v.to_double()) <= 1e-6) throw DomainError("parameters lie on the condition locus " + c.str() + " = 0");
  }
  auto to_x = [](const Polynomial& p) {
    XPoly out;
    for (const auto& [m, c] : p.terms()) out.terms.emplace_back(m, to_real(c));
    return out;
  };
  for (const auto& inv : basis_.invariants()) {
    j_.push_back(to_x(inv));
    std::vector<XPoly> grad;
    for (std::size_t i = 0; i < basis_.dimension(); ++i) grad.push_back(to_x(inv.derivative(i)));
    dj_.push_back(std::move(grad));
  }
}

Rational NumericContext::coefficient(const RationalFunction& c) const {
  if (mentions(c.numerator(), assigned_))
    throw InvalidArgument("coefficient " + c.str() + " uses an unassigned parameter");
  for (const auto& f : c.denominator_factors())
    if (mentions(f.base, assigned_)) throw InvalidArgument("coefficient " + c.str() + " uses an unassigned parameter");
  return c.evaluate(values_);
}

NumericJPolynomial NumericContext::numeric(const JPolynomial& f) const {
  NumericJPolynomial out;
  for (const auto& [m, c] : f.terms()) out.terms.emplace_back(m, to_real(coefficient(c)));
  return out;
}

std::vector<Real> NumericContext::invariants(std::span<const Real> x) const {
  if (x.size() != dimension()) throw InvalidArgument("point has the wrong dimension");
  std::vector<Real> out;
  for (const auto& j : j_) out.push_back(j.evaluate(x));
  return out;
}

std::vector<std::vector<Real>> NumericContext::invariant_gradients(std::span<const Real> x) const {
  if (x.size() != dimension()) throw InvalidArgument("point has the wrong dimension");
  std::vector<std::vector<Real>> out;
  for (const auto& g : dj_) {
    std::vector<Real> row;
    for (const auto& d : g) row.push_back(d.evaluate(x));
    out.push_back(std::move(row));
  }
  return out;
}

Real eval_potential(const JPolynomial& f, const NumericContext& ctx, std::span<const Real> x) {
  auto j = ctx.invariants(x);
  return ctx.numeric(f).evaluate(j);
}

namespace {

// dH/dJ_b with numeric coefficients, for the x-gradient of H(J(x)).
struct NumericGradient {
  std::vector<NumericJPolynomial> partials;

  NumericGradient(const JPolynomial& h, const NumericContext& ctx) {
    for (std::size_t b = 0; b < ctx.basis().size(); ++b) partials.push_back(ctx.numeric(h.derivative(b)));
  }

  std::vector<Real> operator()(const NumericContext& ctx, std::span<const Real> x) const {
    auto j = ctx.invariants(x);
    auto dj = ctx.invariant_gradients(x);
    std::vector<Real> g(x.size(), 0);
    for (std::size_t b = 0; b < partials.size(); ++b) {
      if (partials[b].terms.empty()) continue;
      Real w = partials[b].evaluate(j);
      for (std::size_t i = 0; i < x.size(); ++i) g[i] += w * dj[b][i];
    }
    return g;
  }
};

std::vector<Real> integrate(const NumericGradient& grad, const NumericContext& ctx, std::vector<Real> x,
                            double step) {
  if (!(step > 0) || step > 1) throw InvalidArgument("flow step must lie in (0, 1]");
  auto n = static_cast<std::size_t>(std::llround(1.0 / step));
  Real h = Real(1) / static_cast<Real>(n);
  std::size_t d = x.size();
  std::vector<Real> tmp(d);
  for (std::size_t s = 0; s < n; ++s) {
    auto k1 = grad(ctx, x);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + h / 2 * k1[i];
    auto k2 = grad(ctx, tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + h / 2 * k2[i];
    auto k3 = grad(ctx, tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + h * k3[i];
    auto k4 = grad(ctx, tmp);
    for (std::size_t i = 0; i < d; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  check_finite(x);
  return x;
}

}  // namespace

std::vector<Real> flow_map(const Generator& h, const NumericContext& ctx, std::span<const Real> y, double step) {
  if (y.size() != ctx.dimension()) throw InvalidArgument("point has the wrong dimension");
  std::vector<Real> x(y.begin(), y.end());
  if (h.is_zero()) return x;
  return integrate(NumericGradient(h.poly(), ctx), ctx, std::move(x), step);
}

std::vector<double> default_scales() { return {1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3}; }

VerifyResult verify_reduction(const JPolynomial& original, const ReductionReport& report, const NumericContext& ctx,
                              std::size_t samples, std::vector<double> scales, std::uint64_t seed) {
  if (scales.size() < 2) throw InvalidArgument("at least two scales are needed");
  if (samples == 0) throw InvalidArgument("at least one sample is needed");
  VerifyResult res;
  res.seed = seed;
  res.scales = scales;
  res.required_slope = static_cast<double>(report.truncation) + 1 - 0.3;

  auto f = ctx.numeric(original);
  auto g = ctx.numeric(report.reduced);
  std::vector<NumericGradient> flows;
  for (const auto& s : report.stages)
    if (s.applied && !s.generator.is_zero()) flows.emplace_back(s.generator.poly(), ctx);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<Real>> dirs;
  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<Real> u(ctx.dimension());
    Real norm = 0;
    do {
      norm = 0;
      for (auto& c : u) {
        c = normal(rng);
        norm += c * c;
      }
    } while (norm < static_cast<Real>(1e-12));
    norm = sqrtq(norm);
    for (auto& c : u) c /= norm;
    dirs.push_back(std::move(u));
  }

  for (double eps : scales) {
    Real worst = 0;
    for (const auto& u : dirs) {
      std::vector<Real> y(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) y[i] = static_cast<Real>(eps) * u[i];
      std::vector<Real> x = y;
      for (auto it = flows.rbegin(); it != flows.rend(); ++it) x = integrate(*it, ctx, std::move(x), 1e-3);
      Real d = fabsq(f.evaluate(ctx.invariants(x)) - g.evaluate(ctx.invariants(y)));
      worst = std::max(worst, d);
    }
    res.defects.push_back(to_double(worst));
  }

  res.exact = std::all_of(res.defects.begin(), res.defects.end(), [](double d) { return d < 1e-14; });
  // Least-squares slope of log defect against log scale.
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    double lx = std::log10(scales[i]);
    double ly = std::log10(std::max(res.defects[i], 1e-300));
    n += 1;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  res.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0;
  res.pass = res.exact || res.slope >= res.required_slope;
  return res;
}

}  // namespace orbitred
