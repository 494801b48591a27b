#include "orbitred/pipeline.hpp"

#include <algorithm>
#include <set>

namespace orbitred {

namespace {

// Kept sets compare by their monomials in descending order; the earlier
// monomials win.
bool kept_before(const EliminationPlan& a, const EliminationPlan& b) {
  auto ka = a.kept, kb = b.kept;
  std::sort(ka.begin(), ka.end(), GrlexGreater{});
  std::sort(kb.begin(), kb.end(), GrlexGreater{});
  for (std::size_t i = 0; i < std::min(ka.size(), kb.size()); ++i) {
    auto o = grlex_compare(ka[i], kb[i]);
    if (o != 0) return o > 0;
  }
  return ka.size() < kb.size();
}

bool all_zero(const JPolynomial& f, const std::vector<Monomial>& ms) {
  return std::all_of(ms.begin(), ms.end(), [&](const Monomial& m) { return f.coefficient(m).is_zero(); });
}

}  // namespace

std::vector<Polynomial> conditions_summary(const ReductionReport& report) {
  std::vector<Polynomial> out;
  for (const auto& s : report.stages) {
    if (!s.applied) continue;
    for (const auto& c : s.plan.conditions) {
      Polynomial n = normalize_condition(c);
      if (std::none_of(out.begin(), out.end(), [&](const Polynomial& o) { return proportional(o, n); }))
        out.push_back(n);
    }
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.size() != b.size()) return a.size() < b.size();
    return compare_structure(a, b) < 0;
  });
  return out;
}

ReductionReport reduce(const JPolynomial& f, const OrbitSpace& space, const ParameterSpec& params,
                       const ReduceOptions& options) {
  const auto& w = space.weights();
  ReductionReport report;
  report.mode = options.mode;
  report.truncation = options.truncation ? options.truncation : stability_order(space.basis());
  unsigned n = report.truncation;
  report.original = space.normal_form(truncate(f, n, w));
  JPolynomial current = report.original;
  std::set<Monomial, GrlexGreater> zeroed;

  SourceComponent first = source_component(current, space, options.mode, params);
  for (unsigned target = first.degree + 1; target <= n; ++target) {
    SourceComponent source = source_component(current, space, options.mode, params);
    if (target + 2 < source.degree + 4) continue;
    unsigned gdeg = target + 2 - source.degree;
    auto order_it = options.orders.find(target);
    std::optional<MonomialOrder> order;
    if (order_it != options.orders.end()) order = order_it->second;
    if (!order && (space.basis().normal_monomials(target).empty() || space.basis().normal_monomials(gdeg).empty()))
      continue;

    Stage stage;
    stage.target_degree = target;
    stage.source_degree = source.degree;
    stage.generator_degree = gdeg;
    stage.transfer = build_transfer(source, target, space, order);

    std::optional<EliminationPlan> chosen;
    if (options.strategy.kind == Strategy::Kind::max_eliminate) {
      auto plans = eliminable_sets(stage.transfer, options.mode, params, options.max_sets);
      if (plans.empty()) {
        stage.note = "nothing eliminable";
      } else {
        chosen = *std::min_element(plans.begin(), plans.end(), kept_before);
      }
    } else {
      std::vector<Monomial> wanted;
      for (const auto& m : stage.transfer.targets)
        if (std::find(options.strategy.keep.begin(), options.strategy.keep.end(), m) ==
            options.strategy.keep.end())
          wanted.push_back(m);
      if (wanted.empty()) {
        stage.note = "every target is kept";
      } else {
        chosen = plan_for(stage.transfer, wanted, options.mode, params);
        if (!chosen) stage.note = "keep set infeasible at this degree";
      }
    }

    if (chosen && all_zero(current, chosen->zeroed)) {
      stage.plan = *chosen;
      stage.note = "already reduced";
      chosen.reset();
    }
    if (chosen) {
      complete_plan(*chosen, stage.transfer, current, options.mode, params);
      stage.plan = std::move(*chosen);
      stage.generator = Generator(plan_generator(stage.plan, stage.transfer, space), w);
      current = lie_transform(current, stage.generator, space, n);
      stage.applied = true;
      for (const auto& z : stage.plan.zeroed) zeroed.insert(z);
    }
    report.stages.push_back(std::move(stage));
  }

  report.reduced = current;
  report.zeroed.assign(zeroed.begin(), zeroed.end());
  // In varying mode a zeroed coefficient may keep multiples of the critical
  // parameters; it counts as removed only if it vanishes on that locus.
  for (const auto& [m, c] : current.terms()) {
    if (zeroed.count(m) && (options.mode == Mode::fixed || params.restrict(c).is_zero())) continue;
    report.surviving.push_back(m);
  }
  report.conditions = conditions_summary(report);
  return report;
}

JPolynomial replay(const ReductionReport& report, const OrbitSpace& space) {
  JPolynomial cur = report.original;
  for (const auto& s : report.stages)
    if (s.applied) cur = lie_transform(cur, s.generator, space, report.truncation);
  return cur;
}

}  // namespace orbitred
