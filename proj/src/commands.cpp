#include "orbitred/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitred/numeric_oracle.hpp"
#include "orbitred/report.hpp"

namespace orbitred {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data)) throw InvalidArgument("cannot write '" + path + "'");
}

struct Loaded {
  std::string text;
  ProblemFile problem;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.text = read_file(path);
  l.problem = parse_problem(l.text);
  return l;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("ORBITRED_SEED");
  if (!s || !*s) return fallback;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (errno || *end || *s == '-') throw InvalidArgument("ORBITRED_SEED must be a non-negative integer");
  return v;
}

// "W:t1,t2;g1,g2"
std::pair<unsigned, MonomialOrder> parse_order_flag(const std::string& flag, const VarSetPtr& jv) {
  auto colon = flag.find(':');
  auto semi = flag.find(';');
  if (colon == std::string::npos || semi == std::string::npos || semi < colon)
    throw InvalidArgument("--order expects DEGREE:targets;generators");
  unsigned w = 0;
  try {
    w = static_cast<unsigned>(std::stoul(flag.substr(0, colon)));
  } catch (const std::exception&) {
    throw InvalidArgument("--order degree is not a number");
  }
  auto split = [&](const std::string& s) {
    std::vector<Monomial> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_monomial(item, jv));
    return out;
  };
  return {w, MonomialOrder{split(flag.substr(colon + 1, semi - colon - 1)), split(flag.substr(semi + 1))}};
}

struct Flags {
  std::string problem;
  std::string mode, strategy, term, json_path, text_path, report_path, format = "text";
  unsigned truncate = 0;
  std::size_t max_sets = 0, samples = 8;
  std::vector<std::string> keep, orders, params;
  std::optional<std::uint64_t> seed;
  std::optional<double> default_param;
};

void apply_overrides(ProblemFile& p, const Flags& f) {
  const VarSetPtr& jv = p.orbit_space().j_vars();
  if (!f.mode.empty()) p.options.mode = parse_mode(f.mode);
  if (f.truncate) set_truncation(p, f.truncate);
  if (!f.strategy.empty()) {
    if (f.strategy == "max_eliminate")
      p.options.strategy.kind = Strategy::Kind::max_eliminate;
    else if (f.strategy == "keep_set")
      p.options.strategy.kind = Strategy::Kind::keep_set;
    else
      throw InvalidArgument("unknown strategy '" + f.strategy + "'");
  }
  if (!f.keep.empty()) {
    p.options.strategy.keep.clear();
    for (const auto& k : f.keep) {
      Monomial m = parse_monomial(k, jv);
      if (!p.basis().in_normal_form(m)) throw InvalidArgument("kept monomial '" + k + "' is not in normal form");
      p.options.strategy.keep.push_back(m);
    }
    if (f.strategy.empty()) p.options.strategy.kind = Strategy::Kind::keep_set;
  }
  if (p.options.strategy.kind == Strategy::Kind::max_eliminate && !p.options.strategy.keep.empty())
    throw InvalidArgument("keep requires strategy keep_set");
  if (f.max_sets) p.options.max_sets = f.max_sets;
  for (const auto& o : f.orders) {
    auto [w, ord] = parse_order_flag(o, jv);
    p.options.orders[w] = ord;
  }
}

std::uint64_t effective_seed(const ProblemFile& p, const Flags& f) {
  if (f.seed) return *f.seed;
  if (p.options.seed) return *p.options.seed;
  return env_seed(42);
}

int cmd_pmatrix(const Flags& f, std::ostream& out) {
  auto l = load(f.problem);
  const auto& pm = l.problem.orbit_space().p_matrix();
  for (std::size_t i = 0; i < pm.rows(); ++i) {
    for (std::size_t j = 0; j < pm.cols(); ++j) out << (j ? " | " : "") << pm(i, j).str();
    out << "\n";
  }
  return kExitOk;
}

int cmd_stability(const Flags& f, std::ostream& out) {
  auto l = load(f.problem);
  out << stability_order(l.problem.basis()) << "\n";
  return kExitOk;
}

int cmd_general(const Flags& f, std::ostream& out) {
  auto l = load(f.problem);
  unsigned n = f.truncate ? f.truncate : l.problem.truncation();
  auto g = general_potential(l.problem.basis(), n);
  out << "truncation: " << n << "\n";
  out << "parameters: " << g.parameters->size() << "\n";
  out << "potential: " << g.potential.str() << "\n";
  return kExitOk;
}

int cmd_check_term(Flags f, std::ostream& out) {
  auto l = load(f.problem);
  apply_overrides(l.problem, f);
  const ProblemFile& p = l.problem;
  const OrbitSpace& space = p.orbit_space();
  Monomial m = parse_monomial(f.term, space.j_vars());
  JPolynomial pot = space.normal_form(truncate(p.resolved_potential(), p.truncation(), space.weights()));
  RationalFunction c = pot.coefficient(m);
  if (c.is_zero()) c = RationalFunction(1);
  auto r = criterion_check(j_term(space, m, c), pot, space, p.options.mode, p.params);
  out << "term: " << j_term(space, m, c).str() << "\n";
  out << "mode: " << to_string(p.options.mode) << "\n";
  out << "eliminable: " << (r.eliminable ? "yes" : "no") << "\n";
  if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
  if (r.eliminable) {
    out << "generator: " << r.generator.str() << "\n";
    for (std::size_t i = 0; i < r.q.size(); ++i)
      out << "Q" << (i + 1) << ": " << r.q[i].str() << "\n";
    out << "conditions:";
    if (r.conditions.empty()) out << " none";
    for (const auto& cnd : r.conditions) out << " [" << cnd.str() << " != 0]";
    out << "\nremainder: " << r.remainder.str() << "\n";
  }
  return kExitOk;
}

int cmd_reduce(const Flags& f, std::ostream& out) {
  auto l = load(f.problem);
  apply_overrides(l.problem, f);
  const ProblemFile& p = l.problem;
  auto report = reduce(p.resolved_potential(), p.orbit_space(), p.params, p.reduce_options());
  std::uint64_t seed = effective_seed(p, f);
  std::string json = report_json(report, p, l.text, seed);
  std::string text = report_text(report, p);
  if (!f.json_path.empty()) write_file(f.json_path, json);
  if (!f.text_path.empty()) write_file(f.text_path, text);
  if (f.format == "json")
    out << json;
  else if (f.format == "text")
    out << text;
  else if (f.format != "none")
    throw InvalidArgument("unknown format '" + f.format + "'");
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  auto l = load(f.problem);
  ProblemFile& p = l.problem;
  std::string stored_text = read_file(f.report_path);
  StoredReport stored = read_report(stored_text, p);
  if (stored.input_digest != "sha256:" + sha256_hex(l.text))
    throw InvalidArgument("report was produced from a different problem file");
  p.options.mode = stored.options.mode;
  set_truncation(p, stored.options.truncation);
  p.options.strategy = stored.options.strategy;
  p.options.max_sets = stored.options.max_sets;
  p.options.orders = stored.options.orders;
  auto report = reduce(p.resolved_potential(), p.orbit_space(), p.params, p.reduce_options());
  if (!same_report(report_json(report, p, l.text, stored.seed), stored_text))
    throw DomainError("report does not match a fresh reduction of the problem");

  std::map<std::string, double> values;
  for (const auto& kv : f.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--param expects name=value");
    std::string name = kv.substr(0, eq);
    double v = 0;
    try {
      std::size_t used = 0;
      v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InvalidArgument("--param value for '" + name + "' is not a number");
    }
    if (!values.emplace(name, v).second) throw InvalidArgument("--param '" + name + "' given twice");
  }
  if (f.default_param)
    for (const auto& name : p.params.vars()->names()) values.emplace(name, *f.default_param);

  std::uint64_t seed = f.seed ? *f.seed : stored.seed;
  NumericContext ctx(p.basis(), p.params, values, report.conditions);
  auto res = verify_reduction(report.original, report, ctx, f.samples, default_scales(), seed);
  out << "seed: " << res.seed << "\n";
  out << "truncation: " << report.truncation << "\n";
  out << std::setprecision(3) << std::scientific;
  for (std::size_t i = 0; i < res.scales.size(); ++i)
    out << "scale " << res.scales[i] << " defect " << res.defects[i] << "\n";
  out << std::fixed << std::setprecision(2);
  out << "slope: " << res.slope << " (required " << res.required_slope << ")\n";
  out << "result: " << (res.pass ? "pass" : "fail") << (res.exact ? " (exact cancellation)" : "") << "\n";
  return res.pass ? kExitOk : kExitDomain;
}

std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction of symmetric Landau potentials in orbit space", "orbitred"};
  app.set_version_flag("--version", std::string("orbitred ") + kToolVersion);
  app.require_subcommand(1);
  Flags f;

  auto add_problem = [&](CLI::App* sub) { sub->add_option("problem", f.problem, "problem file")->required(); };
  auto add_reduction = [&](CLI::App* sub) {
    sub->add_option("--mode", f.mode, "fixed or varying");
    sub->add_option("--truncate", f.truncate, "truncation order");
    sub->add_option("--strategy", f.strategy, "max_eliminate or keep_set");
    sub->add_option("--keep", f.keep, "monomial to keep (repeatable)");
    sub->add_option("--max-sets", f.max_sets, "cap on enumerated target subsets");
    sub->add_option("--order", f.orders, "explicit orders: DEGREE:targets;generators");
  };

  auto* pm = app.add_subcommand("pmatrix", "print the P-matrix in the invariants");
  add_problem(pm);
  auto* so = app.add_subcommand("stability-order", "print twice the largest invariant degree");
  add_problem(so);
  auto* gp = app.add_subcommand("general-potential", "print the most general potential");
  add_problem(gp);
  gp->add_option("--truncate", f.truncate, "truncation order");
  auto* ct = app.add_subcommand("check-term", "test whether one term can be removed at first order");
  add_problem(ct);
  add_reduction(ct);
  ct->add_option("--term", f.term, "J-monomial")->required();
  auto* rd = app.add_subcommand("reduce", "run the staged reduction");
  add_problem(rd);
  add_reduction(rd);
  rd->add_option("--json", f.json_path, "write the machine-readable report here");
  rd->add_option("--text", f.text_path, "write the text report here");
  rd->add_option("--format", f.format, "stdout format: text, json or none");
  rd->add_option("--seed", f.seed, "seed recorded for verification");
  auto* vf = app.add_subcommand("verify", "check a stored report numerically");
  add_problem(vf);
  vf->add_option("--report", f.report_path, "report written by reduce --json")->required();
  vf->add_option("--param", f.params, "parameter value name=value (repeatable)");
  vf->add_option("--default-param", f.default_param, "value for parameters not given");
  vf->add_option("--seed", f.seed, "direction seed (default: the report's)");
  vf->add_option("--samples", f.samples, "number of random directions");

  std::string section = "orbitred";
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
    auto* sub = app.get_subcommands().front();
    section = sub->get_name();
    if (sub == pm) return cmd_pmatrix(f, out);
    if (sub == so) return cmd_stability(f, out);
    if (sub == gp) return cmd_general(f, out);
    if (sub == ct) return cmd_check_term(f, out);
    if (sub == rd) return cmd_reduce(f, out);
    return cmd_verify(f, out);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << section << ": " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const ProblemError& e) {
    err << e.section() << ": " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << section << ": " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << section << ": " << one_line(e.what()) << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << section << ": " << one_line(e.what()) << "\n";
    return kExitDomain;
  }
}

}  // namespace orbitred
