#include "orbitred/elimination.hpp"

#include <algorithm>

namespace orbitred {

std::string to_string(Mode m) { return m == Mode::fixed ? "fixed" : "varying"; }

Mode parse_mode(const std::string& s) {
  if (s == "fixed") return Mode::fixed;
  if (s == "varying") return Mode::varying;
  throw InvalidArgument("unknown mode '" + s + "' (expected fixed or varying)");
}

SourceComponent source_component(const JPolynomial& f, const OrbitSpace& space, Mode mode,
                                 const ParameterSpec& params) {
  for (auto& [d, comp] : components(f, space.weights())) {
    if (d == 0) continue;
    if (mode == Mode::fixed) return {d, comp};
    JPolynomial r = params.restrict(comp);
    if (!r.is_zero()) return {d, r};
  }
  throw NoUsableSource(mode == Mode::fixed ? "potential has no nonconstant component"
                                           : "every component vanishes at the critical locus");
}

namespace {

PolyMatrix effective_entries(const TransferMatrix& t, Mode mode, const ParameterSpec& params) {
  if (mode == Mode::fixed || params.critical().empty()) return t.entries;
  return t.entries.map([&](const Polynomial& p) { return params.restrict(p); });
}

std::size_t index_of(const std::vector<Monomial>& list, const Monomial& m) {
  auto it = std::find(list.begin(), list.end(), m);
  return it == list.end() ? list.size() : static_cast<std::size_t>(it - list.begin());
}

std::optional<EliminationPlan> plan_from_rows(const TransferMatrix& t, const PolyMatrix& e,
                                              const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> cols(t.generators.size());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  PolyMatrix sub = e.select(rows, cols);
  LinearSolution s = solve_linear(sub, std::vector<Polynomial>(rows.size(), Polynomial()));
  if (s.rank != rows.size()) return std::nullopt;
  EliminationPlan plan;
  std::vector<bool> zeroed(t.targets.size(), false);
  for (auto r : rows) zeroed[r] = true;
  for (std::size_t i = 0; i < t.targets.size(); ++i) (zeroed[i] ? plan.zeroed : plan.kept).push_back(t.targets[i]);
  plan.pivot_generators = s.pivot_cols;
  std::sort(plan.pivot_generators.begin(), plan.pivot_generators.end());
  plan.determinant = s.determinant;
  if (!s.determinant.is_constant()) plan.conditions = condition_factors(s.determinant);
  return plan;
}

}  // namespace

TransferMatrix build_transfer(const SourceComponent& source, unsigned target_degree, const OrbitSpace& space,
                              const std::optional<MonomialOrder>& order) {
  const auto& basis = space.basis();
  const auto& w = space.weights();
  if (source.poly.is_zero()) throw InvalidArgument("zero source component");
  if (target_degree + 2 < source.degree + 4)
    throw InvalidArgument("target degree " + std::to_string(target_degree) + " needs a generator of degree < 4");
  TransferMatrix t;
  t.source_degree = source.degree;
  t.target_degree = target_degree;
  t.generator_degree = target_degree + 2 - source.degree;
  if (order) {
    t.targets = order->targets;
    t.generators = order->generators;
    for (const auto& m : t.targets)
      if (weighted_degree(m, w) != target_degree)
        throw InvalidArgument("target monomial " + space.j_vars()->format(m) + " has the wrong degree");
    for (const auto& m : t.generators)
      if (weighted_degree(m, w) != t.generator_degree)
        throw InvalidArgument("generator monomial " + space.j_vars()->format(m) + " has the wrong degree");
    for (const auto* list : {&t.targets, &t.generators})
      for (const auto& m : *list)
        if (!basis.in_normal_form(m)) t.raw = true;
  } else {
    t.targets = basis.normal_monomials(target_degree);
    t.generators = basis.normal_monomials(t.generator_degree);
  }
  Matrix<RationalFunction> coeffs(t.targets.size(), t.generators.size());
  for (std::size_t g = 0; g < t.generators.size(); ++g) {
    JPolynomial gen = j_term(space, t.generators[g], RationalFunction(1));
    JPolynomial delta =
        t.raw ? derivation_apply_raw(source.poly, gen, space) : derivation_apply(source.poly, gen, space);
    for (const auto& [m, c] : delta.terms()) {
      std::size_t i = index_of(t.targets, m);
      if (i == t.targets.size())
        throw InvalidArgument("product monomial " + space.j_vars()->format(m) + " is missing from the target list");
      coeffs(i, g) = c;
    }
  }
  // Clear denominators so the entries are parameter polynomials.
  std::vector<RationalFunction::Factor> common;
  for (std::size_t i = 0; i < coeffs.rows(); ++i)
    for (std::size_t j = 0; j < coeffs.cols(); ++j)
      for (const auto& fac : coeffs(i, j).denominator_factors()) {
        auto it = std::find_if(common.begin(), common.end(), [&](const auto& c) { return c.base == fac.base; });
        if (it == common.end())
          common.push_back(fac);
        else
          it->power = std::max(it->power, fac.power);
      }
  for (const auto& c : common) t.scale *= c.base.pow(c.power);
  RationalFunction s(t.scale);
  t.entries = coeffs.map([&](const RationalFunction& c) {
    RationalFunction v = c * s;
    if (!v.is_polynomial()) throw DomainError("could not clear transfer matrix denominators");
    return v.numerator();
  });
  return t;
}

std::vector<EliminationPlan> eliminable_sets(const TransferMatrix& t, Mode mode, const ParameterSpec& params,
                                             std::size_t max_sets) {
  std::vector<EliminationPlan> plans;
  PolyMatrix e = effective_entries(t, mode, params);
  std::size_t rank = generic_rank(e);
  std::size_t m = t.targets.size();
  if (rank == 0) return plans;
  std::size_t keep = m - rank;
  bool capped = m > 12;
  // Kept index sets in lexicographic order.
  std::vector<std::size_t> kept(keep);
  for (std::size_t i = 0; i < keep; ++i) kept[i] = i;
  while (true) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0, k = 0; i < m; ++i) {
      if (k < keep && kept[k] == i)
        ++k;
      else
        rows.push_back(i);
    }
    if (auto p = plan_from_rows(t, e, rows)) {
      plans.push_back(std::move(*p));
      if (capped && plans.size() >= max_sets) break;
    }
    std::size_t i = keep;
    while (i > 0 && kept[i - 1] == m - keep + i - 1) --i;
    if (i == 0) break;
    ++kept[i - 1];
    for (std::size_t j = i; j < keep; ++j) kept[j] = kept[j - 1] + 1;
  }
  return plans;
}

std::optional<EliminationPlan> plan_for(const TransferMatrix& t, const std::vector<Monomial>& zeroed, Mode mode,
                                        const ParameterSpec& params) {
  std::vector<std::size_t> rows;
  for (const auto& z : zeroed) {
    std::size_t i = index_of(t.targets, z);
    if (i == t.targets.size()) throw InvalidArgument("monomial is not a target of this transfer matrix");
    rows.push_back(i);
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (rows.empty()) return std::nullopt;
  return plan_from_rows(t, effective_entries(t, mode, params), rows);
}

void complete_plan(EliminationPlan& plan, const TransferMatrix& t, const JPolynomial& current, Mode mode,
                   const ParameterSpec& params) {
  PolyMatrix e = effective_entries(t, mode, params);
  std::vector<std::size_t> rows, cols(t.generators.size());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  for (const auto& z : plan.zeroed) rows.push_back(index_of(t.targets, z));
  RationalFunction s(t.scale);
  std::vector<RationalFunction> rhs;
  for (const auto& z : plan.zeroed) rhs.push_back(-(current.coefficient(z) * s));
  LinearSolution sol = solve_linear(e.select(rows, cols), rhs);
  if (!sol.consistent) throw DomainError("elimination system is inconsistent");
  plan.solution = std::move(sol.solution);
}

JPolynomial plan_generator(const EliminationPlan& plan, const TransferMatrix& t, const OrbitSpace& space) {
  std::vector<JPolynomial::Term> terms;
  for (std::size_t g = 0; g < plan.solution.size(); ++g) terms.emplace_back(t.generators[g], plan.solution[g]);
  return space.normal_form(JPolynomial::from_terms(space.j_vars(), std::move(terms)));
}

CriterionResult criterion_check(const JPolynomial& term, const JPolynomial& f, const OrbitSpace& space, Mode mode,
                                const ParameterSpec& params) {
  CriterionResult out;
  out.generator = JPolynomial(space.j_vars());
  out.remainder = JPolynomial(space.j_vars());
  out.q.assign(space.size(), JPolynomial(space.j_vars()));
  if (term.is_zero()) {
    out.eliminable = true;
    out.reason = "zero term";
    return out;
  }
  if (term.size() != 1) throw InvalidArgument("criterion_check expects a single term");
  const auto& [m, c] = term.leading();
  if (!space.basis().in_normal_form(m)) {
    out.reason = "term is not in syzygy normal form";
    return out;
  }
  unsigned wt = weighted_degree(m, space.weights());
  SourceComponent source;
  try {
    source = source_component(f, space, mode, params);
  } catch (const NoUsableSource& e) {
    out.reason = e.what();
    return out;
  }
  if (wt + 2 < source.degree + 4) {
    out.reason = "no admissible generator: degree " + std::to_string(wt) + " is too low for the source of degree " +
                 std::to_string(source.degree);
    return out;
  }
  TransferMatrix t = build_transfer(source, wt, space);
  auto plan = plan_for(t, {m}, mode, params);
  if (!plan) {
    out.reason = "term is not in the image of the transfer map";
    return out;
  }
  complete_plan(*plan, t, term, mode, params);
  out.eliminable = true;
  out.reason = "eliminable through the degree-" + std::to_string(source.degree) + " source";
  out.generator = plan_generator(*plan, t, space);
  for (std::size_t i = 0; i < space.size(); ++i) out.q[i] = out.generator.derivative(i);
  out.conditions = plan->conditions;
  out.remainder = derivation_apply(f, out.generator, space) + term;
  return out;
}

}  // namespace orbitred
