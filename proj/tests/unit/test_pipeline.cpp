#include "doctest.h"
#include "orbitred/pipeline.hpp"
#include "support.hpp"

using namespace orbitred;
using namespace testing;

namespace {

const ProblemFile& sgu() {
  static const ProblemFile p = load("sgu.problem");
  return p;
}

const ReductionReport& sgu_report() {
  static const ReductionReport r = reduce(sgu().potential, sgu().orbit_space(), sgu().params, sgu().reduce_options());
  return r;
}

ProblemFile with_text(const std::string& file, const std::vector<std::pair<std::string, std::string>>& edits) {
  std::string text = read_file(data_path(file));
  for (const auto& [from, to] : edits) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
  }
  return parse_problem(text);
}

bool contains(const std::vector<Monomial>& v, const Monomial& m) { return std::find(v.begin(), v.end(), m) != v.end(); }

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("replay reproduces the reduced potential") {
  for (const std::string name : {"example4.problem", "example5.problem"}) {
    ProblemFile p = load(name);
    ReductionReport r = reduce(p.potential, p.orbit_space(), p.params, p.reduce_options());
    CHECK(replay(r, p.orbit_space()) == r.reduced);
  }
  CHECK(replay(sgu_report(), sgu().orbit_space()) == sgu_report().reduced);
}

TEST_CASE("zeroed monomials vanish") {
  ProblemFile e4 = load("example4.problem");
  ReductionReport r4 = reduce(e4.potential, e4.orbit_space(), e4.params, e4.reduce_options());
  CHECK(r4.zeroed.size() == 3);
  for (const auto& m : r4.zeroed) CHECK(r4.reduced.coefficient(m).is_zero());
  CHECK(r4.reduced == jp(e4, "a1*J1 + a2*J2"));
  // Varying mode: zero at the critical locus.
  const auto& r = sgu_report();
  for (const auto& m : r.zeroed) CHECK(sgu().params.restrict(r.reduced.coefficient(m)).is_zero());
  for (const auto& m : r.surviving) CHECK_FALSE((contains(r.zeroed, m) && r.reduced.coefficient(m).is_zero()));
}

TEST_CASE("three-reflection census in varying mode") {
  const auto& r = sgu_report();
  std::map<unsigned, std::vector<Monomial>> by_degree;
  for (const auto& m : r.surviving) by_degree[weighted_degree(m, sgu().basis().degrees())].push_back(m);
  CHECK(by_degree[2] == jms(sgu(), {"J1"}));
  CHECK(by_degree[4].size() == 2);
  CHECK(by_degree[6].size() == 1);
  REQUIRE(by_degree[8].size() == 1);
  CHECK(contains(jms(sgu(), {"J1^4", "J2^2", "J1^2*J2"}), by_degree[8][0]));
  CHECK(by_degree[10].size() == 1);
  CHECK(by_degree[12].size() == 2);
  auto conds = conditions_summary(r);
  CHECK_FALSE(conds.empty());
  auto a = sgu().params.vars()->index_of("a");
  for (const auto& c : conds)
    for (const auto& [m, coef] : c.terms()) CHECK(m.exponent(*a) == 0);
}

TEST_CASE("stage degrees are stable under later stages") {
  const auto& r = sgu_report();
  const OrbitSpace& s = sgu().orbit_space();
  const auto& w = s.weights();
  JPolynomial cur = truncate(r.original, r.truncation, w);
  std::vector<JPolynomial> after;
  for (const auto& st : r.stages) {
    cur = lie_transform(cur, st.generator, s, r.truncation);
    after.push_back(cur);
  }
  for (std::size_t i = 0; i < r.stages.size(); ++i)
    for (std::size_t k = i + 1; k < r.stages.size(); ++k)
      for (unsigned d = 2; d <= r.stages[i].target_degree; d += 2)
        CHECK(sgu().params.restrict(component(after[k], d, w)) == sgu().params.restrict(component(after[i], d, w)));
}

TEST_CASE("fixed mode eliminates at least as much as varying mode") {
  ReduceOptions opt = sgu().reduce_options();
  opt.mode = Mode::fixed;
  opt.truncation = 8;
  ReduceOptions vopt = sgu().reduce_options();
  vopt.truncation = 8;
  ReductionReport fixed = reduce(sgu().potential, sgu().orbit_space(), sgu().params, opt);
  ReductionReport varying = reduce(sgu().potential, sgu().orbit_space(), sgu().params, vopt);
  CHECK(fixed.zeroed.size() >= varying.zeroed.size());
  CHECK(fixed.surviving == jms(sgu(), {"J1"}));
}

TEST_CASE("two reflections without critical parameters") {
  ProblemFile p = with_text("example4.problem", {{"mode = fixed", "mode = varying"}});
  ReductionReport r = reduce(p.potential, p.orbit_space(), p.params, p.reduce_options());
  CHECK(r.zeroed.size() == 3);
  auto conds = conditions_summary(r);
  REQUIRE(conds.size() == 3);
  CHECK(conds[0] == pp(p, "a1"));
  CHECK(conds[1] == pp(p, "a2"));
  CHECK(conds[2] == pp(p, "a1 + a2"));
}

TEST_CASE("critical quadratic coefficients keep their quartic partners") {
  struct Case {
    std::string critical, generic, expr;
    std::vector<std::string> kept;
  };
  std::vector<Case> cases{
      {"a1", "a2, b1, b2, c", "a1*J1 + a2*J2 + b1*J1^2 + b2*J2^2 + c*J1*J2", {"J1^2"}},
      {"a2", "a1, b1, b2, c", "a1*J1 + a2*J2 + b1*J1^2 + b2*J2^2 + c*J1*J2", {"J2^2"}},
      // s = a1 + a2 vanishes.
      {"s", "a1, b1, b2, c", "a1*J1 + s*J2 - a1*J2 + b1*J1^2 + b2*J2^2 + c*J1*J2", {"J1*J2"}},
  };
  for (const auto& c : cases) {
    ProblemFile p = with_text("example4.problem", {{"generic = a1, a2, b1, b2, c", "critical = " + c.critical + "\ngeneric = " + c.generic},
                                                   {"a1*J1 + a2*J2 + b1*J1^2 + b2*J2^2 + c*J1*J2", c.expr},
                                                   {"mode = fixed", "mode = varying"}});
    ReductionReport r = reduce(p.potential, p.orbit_space(), p.params, p.reduce_options());
    std::vector<Monomial> quartic;
    for (const auto& m : r.surviving)
      if (weighted_degree(m, p.basis().degrees()) == 4) quartic.push_back(m);
    CHECK(quartic == jms(p, c.kept));
  }
  ProblemFile both = with_text("example4.problem", {{"generic = a1, a2, b1, b2, c", "critical = a1, a2\ngeneric = b1, b2, c"},
                                                    {"mode = fixed", "mode = varying"}});
  // Nothing acts on the quartic terms when both quadratic coefficients vanish.
  ReductionReport none = reduce(both.potential, both.orbit_space(), both.params, both.reduce_options());
  CHECK(none.zeroed.empty());
  CHECK(none.reduced == both.potential);
}

TEST_CASE("keep-set strategy") {
  ProblemFile e4 = load("example4.problem");
  ReduceOptions opt = e4.reduce_options();
  opt.strategy.kind = Strategy::Kind::keep_set;
  opt.strategy.keep = jms(e4, {"J1^2"});
  ReductionReport r = reduce(e4.potential, e4.orbit_space(), e4.params, opt);
  CHECK(r.surviving == jms(e4, {"J1^2", "J1", "J2"}));
  // A potential already inside the keep set is a fixed point.
  JPolynomial kept = jp(e4, "a1*J1 + a2*J2 + b1*J1^2");
  ReductionReport fp = reduce(kept, e4.orbit_space(), e4.params, opt);
  CHECK(fp.reduced == kept);
  for (const auto& st : fp.stages) CHECK_FALSE(st.applied);
  // Keeping everything is allowed; keeping nothing is the full elimination.
  opt.strategy.keep = jms(e4, {"J1^2", "J2^2", "J1*J2"});
  CHECK(reduce(e4.potential, e4.orbit_space(), e4.params, opt).reduced == e4.potential);
  // Infeasible keep set: the stage is skipped, not fatal.
  ReduceOptions v = sgu().reduce_options();
  v.truncation = 6;
  v.strategy.kind = Strategy::Kind::keep_set;
  ReductionReport skipped = reduce(sgu().potential, sgu().orbit_space(), sgu().params, v);
  REQUIRE(skipped.stages.size() == 1);
  CHECK_FALSE(skipped.stages[0].applied);
  CHECK(skipped.stages[0].note == "keep set infeasible at this degree");
  CHECK(skipped.reduced == truncate(sgu().potential, 6, sgu().orbit_space().weights()));
}

TEST_CASE("reduction is deterministic") {
  ProblemFile e5 = load("example5.problem");
  ReductionReport a = reduce(e5.potential, e5.orbit_space(), e5.params, e5.reduce_options());
  ReductionReport b = reduce(e5.potential, e5.orbit_space(), e5.params, e5.reduce_options());
  CHECK(a.reduced.str() == b.reduced.str());
  CHECK(a.zeroed == b.zeroed);
  REQUIRE(a.stages.size() == b.stages.size());
  for (std::size_t i = 0; i < a.stages.size(); ++i) CHECK(a.stages[i].generator.poly() == b.stages[i].generator.poly());
  auto conds = conditions_summary(a);
  REQUIRE(conds.size() == 3);
  CHECK(conds[2] == pp(e5, "3*a2^2 - a3^2"));
}

TEST_CASE("empty reductions") {
  ProblemFile m = load("minimal.problem");
  ReduceOptions opt = m.reduce_options();
  opt.mode = Mode::varying;
  ReductionReport r = reduce(m.potential, m.orbit_space(), m.params, opt);
  CHECK(r.stages.empty());
  CHECK(conditions_summary(r).empty());
  CHECK(r.reduced == m.potential);
}

}  // TEST_SUITE
