#include "orbitred/orbit_potential.hpp"

#include <algorithm>

namespace orbitred {

ParameterSpec::ParameterSpec(std::vector<std::string> names, const std::vector<std::string>& critical)
    : vars_(make_varset(std::move(names))) {
  for (const auto& c : critical) {
    auto i = vars_->index_of(c);
    if (!i) throw InvalidArgument("critical parameter '" + c + "' is not a parameter");
    if (!is_critical(*i)) critical_.push_back(*i);
  }
  std::sort(critical_.begin(), critical_.end());
}

bool ParameterSpec::is_critical(std::size_t i) const {
  return std::find(critical_.begin(), critical_.end(), i) != critical_.end();
}

std::vector<std::string> ParameterSpec::critical_names() const {
  std::vector<std::string> out;
  for (auto i : critical_) out.push_back(vars_->name(i));
  return out;
}

RationalFunction ParameterSpec::restrict(const RationalFunction& c) const {
  return critical_.empty() ? c : c.set_zero(critical_);
}

Polynomial ParameterSpec::restrict(const Polynomial& p) const { return critical_.empty() ? p : p.set_zero(critical_); }

JPolynomial ParameterSpec::restrict(const JPolynomial& f) const {
  if (critical_.empty()) return f;
  return f.map_coefficients<RationalFunction>([&](const RationalFunction& c) { return restrict(c); });
}

OrbitSpace::OrbitSpace(InvariantBasis basis) : basis_(std::move(basis)), p_(orbitred::p_matrix(basis_)) {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t h = 0; h < size(); ++h) lifted_.push_back(lift(p_(i, h)));
}

std::map<unsigned, JPolynomial> components(const JPolynomial& f, const std::vector<unsigned>& weights) {
  std::map<unsigned, std::vector<JPolynomial::Term>> buckets;
  for (const auto& t : f.terms()) buckets[weighted_degree(t.first, weights)].push_back(t);
  std::map<unsigned, JPolynomial> out;
  for (auto& [d, terms] : buckets) out.emplace(d, JPolynomial::from_terms(f.vars(), std::move(terms)));
  return out;
}

JPolynomial component(const JPolynomial& f, unsigned degree, const std::vector<unsigned>& weights) {
  std::vector<JPolynomial::Term> terms;
  for (const auto& t : f.terms())
    if (weighted_degree(t.first, weights) == degree) terms.push_back(t);
  return JPolynomial::from_terms(f.vars(), std::move(terms));
}

JPolynomial truncate(const JPolynomial& f, unsigned max_degree, const std::vector<unsigned>& weights) {
  std::vector<JPolynomial::Term> terms;
  for (const auto& t : f.terms())
    if (weighted_degree(t.first, weights) <= max_degree) terms.push_back(t);
  return JPolynomial::from_terms(f.vars(), std::move(terms));
}

unsigned homogeneous_degree(const JPolynomial& f, const std::vector<unsigned>& weights) {
  if (f.is_zero()) throw InvalidArgument("zero polynomial has no degree");
  unsigned d = weighted_degree(f.leading().first, weights);
  for (const auto& t : f.terms())
    if (weighted_degree(t.first, weights) != d) throw InvalidArgument("polynomial is not weighted-homogeneous");
  return d;
}

Generator::Generator(JPolynomial h, const std::vector<unsigned>& weights) : h_(std::move(h)) {
  if (h_.is_zero()) return;
  degree_ = homogeneous_degree(h_, weights);
  if (degree_ < 4) throw InvalidArgument("generator degree must be at least 4 (got " + std::to_string(degree_) + ")");
}

namespace {

std::vector<JPolynomial> gradient(const JPolynomial& f, std::size_t r) {
  std::vector<JPolynomial> g;
  for (std::size_t i = 0; i < r; ++i) g.push_back(f.derivative(i));
  return g;
}

}  // namespace

std::vector<JPolynomial> u_vector(const JPolynomial& f, const OrbitSpace& space) {
  std::size_t r = space.size();
  auto df = gradient(f, r);
  std::vector<JPolynomial> u;
  for (std::size_t i = 0; i < r; ++i) {
    JPolynomial s(space.j_vars());
    for (std::size_t k = 0; k < r; ++k)
      if (!df[k].is_zero() && !space.p_entry(k, i).is_zero()) s += df[k] * space.p_entry(k, i);
    u.push_back(space.normal_form(s));
  }
  return u;
}

JPolynomial derivation_apply_raw(const JPolynomial& f, const JPolynomial& h, const OrbitSpace& space) {
  std::size_t r = space.size();
  auto df = gradient(f, r);
  auto dh = gradient(h, r);
  JPolynomial s(space.j_vars());
  for (std::size_t b = 0; b < r; ++b) {
    if (dh[b].is_zero()) continue;
    JPolynomial v(space.j_vars());
    for (std::size_t a = 0; a < r; ++a)
      if (!df[a].is_zero() && !space.p_entry(a, b).is_zero()) v += df[a] * space.p_entry(a, b);
    if (!v.is_zero()) s += v * dh[b];
  }
  return s;
}

namespace {

using Factors = std::vector<RationalFunction::Factor>;

// Product of two factor lists (powers add on identical bases).
Factors multiply_factors(Factors a, const Factors& b) {
  for (const auto& f : b) {
    auto it = std::find_if(a.begin(), a.end(), [&](const auto& g) { return g.base == f.base; });
    if (it != a.end())
      it->power += f.power;
    else
      a.push_back(f);
  }
  return a;
}

VarSetPtr parameters_of(const JPolynomial& f, const JPolynomial& h) {
  for (const auto* p : {&f, &h})
    for (const auto& [m, c] : p->terms())
      if (auto v = c.vars()) return v;
  return make_varset({});
}

// Orbit-space indeterminates followed by the parameters, so J-monomials
// keep their meaning and parameter coefficients become plain polynomials.
// Derivations then run without rational-function arithmetic.
class CombinedRing {
 public:
  struct Cleared {
    Polynomial num;
    Factors den;
  };

  CombinedRing(const OrbitSpace& space, const VarSetPtr& params) : space_(space), params_(params) {
    std::vector<std::string> names = space.j_vars()->names();
    for (const auto& n : params->names()) names.push_back(n);
    all_ = make_varset(names);
    r_ = space.size();
    weights_ = space.weights();
    weights_.resize(names.size(), 0);
    const auto& pm = space.p_matrix();
    for (std::size_t i = 0; i < pm.rows(); ++i)
      for (std::size_t j = 0; j < pm.cols(); ++j) p_.push_back(pm(i, j).with_vars(all_));
    for (const auto& rule : space.basis().syzygies()) rules_.push_back({rule.lhs, rule.rhs.with_vars(all_)});
  }

  Cleared clear(const JPolynomial& f) const {
    Factors den;
    for (const auto& [m, c] : f.terms())
      for (const auto& fac : c.denominator_factors()) {
        auto it = std::find_if(den.begin(), den.end(), [&](const auto& g) { return g.base == fac.base; });
        if (it == den.end())
          den.push_back(fac);
        else
          it->power = std::max(it->power, fac.power);
      }
    // Each coefficient's factors are among the common bases, so the
    // multiplier is an exact product of powers.
    std::vector<std::vector<Polynomial>> powers(den.size());
    auto power_of = [&](std::size_t i, unsigned e) -> const Polynomial& {
      auto& cache = powers[i];
      while (cache.size() <= e) cache.push_back(cache.empty() ? Polynomial(params_, Rational(1)) : cache.back() * den[i].base);
      return cache[e];
    };
    std::vector<Polynomial::Term> terms;
    for (const auto& [m, c] : f.terms()) {
      Polynomial num = c.numerator();
      for (std::size_t i = 0; i < den.size(); ++i) {
        unsigned have = 0;
        for (const auto& fac : c.denominator_factors())
          if (fac.base == den[i].base) have = fac.power;
        if (have < den[i].power) num *= power_of(i, den[i].power - have);
      }
      for (const auto& [pm, pc] : num.terms()) terms.emplace_back(join(m, pm), pc);
    }
    return {Polynomial::from_terms(all_, std::move(terms)), std::move(den)};
  }

  JPolynomial restore(const Polynomial& p, const Factors& den, const Rational& scale) const {
    std::map<Monomial, std::vector<Polynomial::Term>, GrlexGreater> groups;
    std::vector<unsigned> je(r_), pe(params_->size());
    for (const auto& [m, c] : p.terms()) {
      for (std::size_t i = 0; i < je.size(); ++i) je[i] = m.exponent(i);
      for (std::size_t i = 0; i < pe.size(); ++i) pe[i] = m.exponent(r_ + i);
      groups[Monomial(std::span<const unsigned>(je))].emplace_back(Monomial(std::span<const unsigned>(pe)), c * scale);
    }
    std::vector<JPolynomial::Term> out;
    for (auto& [jm, terms] : groups) {
      // Without parameters the coefficients are plain constants.
      RationalFunction c(Polynomial::from_terms(params_->size() ? params_ : nullptr, std::move(terms)));
      out.emplace_back(jm, c.divided_by(den));
    }
    return JPolynomial::from_terms(space_.j_vars(), std::move(out));
  }

  Polynomial derive(const Polynomial& f, const Polynomial& h) const {
    Polynomial s(all_);
    for (std::size_t b = 0; b < r_; ++b) {
      Polynomial dh = h.derivative(b);
      if (dh.is_zero()) continue;
      Polynomial v(all_);
      for (std::size_t a = 0; a < r_; ++a) {
        const Polynomial& pab = p_[a * r_ + b];
        if (pab.is_zero()) continue;
        Polynomial df = f.derivative(a);
        if (!df.is_zero()) v += df * pab;
      }
      if (!v.is_zero()) s += v * dh;
    }
    return rules_.empty() ? s : normal_form(s, rules_);
  }

  Polynomial truncate(const Polynomial& p, unsigned max_degree) const {
    std::vector<Polynomial::Term> terms;
    for (const auto& t : p.terms())
      if (weighted_degree(t.first, weights_) <= max_degree) terms.push_back(t);
    return Polynomial::from_terms(all_, std::move(terms));
  }

 private:
  const OrbitSpace& space_;
  VarSetPtr params_, all_;
  std::size_t r_ = 0;
  std::vector<unsigned> weights_;
  std::vector<Polynomial> p_;
  std::vector<SyzygyRule> rules_;

  Monomial join(const Monomial& jm, const Monomial& pm) const {
    std::vector<unsigned> e(r_ + pm.length(), 0);
    for (std::size_t i = 0; i < jm.length(); ++i) e[i] = jm.exponent(i);
    for (std::size_t i = 0; i < pm.length(); ++i) e[r_ + i] = pm.exponent(i);
    return Monomial(std::span<const unsigned>(e));
  }
};

}  // namespace

JPolynomial derivation_apply(const JPolynomial& f, const JPolynomial& h, const OrbitSpace& space) {
  if (f.is_zero() || h.is_zero()) return JPolynomial(space.j_vars());
  CombinedRing ring(space, parameters_of(f, h));
  auto cf = ring.clear(f);
  auto ch = ring.clear(h);
  return ring.restore(ring.derive(cf.num, ch.num), multiply_factors(cf.den, ch.den), Rational(1));
}

JPolynomial lie_transform(const JPolynomial& f, const Generator& h, const OrbitSpace& space, unsigned max_degree) {
  const auto& w = space.weights();
  JPolynomial result = truncate(f, max_degree, w);
  if (h.is_zero() || result.is_zero()) return result;
  CombinedRing ring(space, parameters_of(result, h.poly()));
  auto cf = ring.clear(result);
  auto ch = ring.clear(h.poly());
  Polynomial term = cf.num;
  Factors den = cf.den;
  Rational scale(1);
  // L_H raises the weighted degree by exactly deg H - 2.
  unsigned shift = h.degree() - 2;
  if (shift > max_degree) return result;
  for (unsigned k = 1;; ++k) {
    term = ring.truncate(term, max_degree - shift);
    if (term.is_zero()) break;
    term = ring.derive(term, ch.num);
    if (term.is_zero()) break;
    den = multiply_factors(den, ch.den);
    scale = scale / Rational(k);
    result += ring.restore(term, den, scale);
  }
  return result;
}

unsigned stability_order(const InvariantBasis& basis) { return 2 * basis.degrees().back(); }

GeneralPotential general_potential(const InvariantBasis& basis, unsigned max_degree) {
  std::vector<std::pair<unsigned, Monomial>> slots;
  std::vector<std::string> names;
  for (unsigned d = basis.degrees().front(); d <= max_degree; ++d) {
    unsigned index = 1;
    for (auto& m : basis.normal_monomials(d)) {
      names.push_back("c" + std::to_string(d) + "_" + std::to_string(index++));
      slots.emplace_back(d, std::move(m));
    }
  }
  GeneralPotential g;
  g.parameters = make_varset(names);
  std::vector<JPolynomial::Term> terms;
  for (std::size_t i = 0; i < slots.size(); ++i)
    terms.emplace_back(slots[i].second, RationalFunction(Polynomial::variable(g.parameters, i)));
  g.potential = JPolynomial::from_terms(basis.j_vars(), std::move(terms));
  return g;
}

JPolynomial j_term(const OrbitSpace& space, const Monomial& m, RationalFunction c) {
  return JPolynomial::term(space.j_vars(), m, std::move(c));
}

}  // namespace orbitred
