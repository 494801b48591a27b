#include "orbitred/report.hpp"

#include <openssl/evp.h>

#include "json.hpp"
#include <sstream>

namespace orbitred {

using nlohmann::ordered_json;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

ordered_json monomials(const std::vector<Monomial>& ms, const VarSet& vars) {
  ordered_json a = ordered_json::array();
  for (const auto& m : ms) a.push_back(vars.format(m));
  return a;
}

ordered_json polys(const std::vector<Polynomial>& ps) {
  ordered_json a = ordered_json::array();
  for (const auto& p : ps) a.push_back(p.str());
  return a;
}

std::string strategy_name(Strategy::Kind k) { return k == Strategy::Kind::keep_set ? "keep_set" : "max_eliminate"; }

}  // namespace

std::string report_json(const ReductionReport& report, const ProblemFile& problem, std::string_view input_text,
                        std::uint64_t seed) {
  const OrbitSpace& space = problem.orbit_space();
  const VarSet& jv = *space.j_vars();
  ReduceOptions opts = problem.reduce_options();
  ordered_json j;
  j["format_version"] = kReportFormat;
  j["tool"] = "orbitred";
  j["tool_version"] = kToolVersion;
  j["input_digest"] = "sha256:" + sha256_hex(input_text);
  j["seed"] = seed;
  j["mode"] = to_string(report.mode);
  j["truncation"] = report.truncation;
  j["strategy"] = {{"kind", strategy_name(opts.strategy.kind)}, {"keep", monomials(opts.strategy.keep, jv)}};
  j["max_sets"] = opts.max_sets;
  ordered_json orders = ordered_json::object();
  for (const auto& [w, o] : opts.orders)
    orders[std::to_string(w)] = {{"targets", monomials(o.targets, jv)}, {"generators", monomials(o.generators, jv)}};
  j["orders"] = orders;
  j["parameters"] = problem.params.vars()->names();
  j["critical"] = problem.params.critical_names();
  j["original_potential"] = report.original.str();

  ordered_json stages = ordered_json::array();
  for (const auto& s : report.stages) {
    ordered_json st;
    st["target_degree"] = s.target_degree;
    st["source_degree"] = s.source_degree;
    st["generator_degree"] = s.generator_degree;
    st["applied"] = s.applied;
    st["note"] = s.note;
    st["targets"] = monomials(s.transfer.targets, jv);
    st["generators"] = monomials(s.transfer.generators, jv);
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < s.transfer.entries.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < s.transfer.entries.cols(); ++c) row.push_back(s.transfer.entries(r, c).str());
      rows.push_back(row);
    }
    st["transfer"] = rows;
    st["transfer_scale"] = s.transfer.scale.str();
    st["unreduced_products"] = s.transfer.raw;
    ordered_json plan;
    plan["zeroed"] = monomials(s.plan.zeroed, jv);
    plan["kept"] = monomials(s.plan.kept, jv);
    plan["determinant"] = s.plan.determinant.str();
    plan["conditions"] = polys(s.plan.conditions);
    ordered_json sol = ordered_json::array();
    for (const auto& c : s.plan.solution) sol.push_back(c.str());
    plan["solution"] = sol;
    st["plan"] = plan;
    st["generator"] = s.generator.poly().str();
    stages.push_back(st);
  }
  j["stages"] = stages;
  j["conditions"] = polys(report.conditions);
  j["reduced_potential"] = report.reduced.str();
  j["zeroed"] = monomials(report.zeroed, jv);
  ordered_json census = ordered_json::object();
  std::map<unsigned, std::vector<Monomial>> by_degree;
  for (const auto& m : report.surviving) by_degree[weighted_degree(m, space.weights())].push_back(m);
  for (const auto& [w, ms] : by_degree) census[std::to_string(w)] = monomials(ms, jv);
  j["surviving"] = census;
  return j.dump(2) + "\n";
}

std::string report_text(const ReductionReport& report, const ProblemFile& problem) {
  const OrbitSpace& space = problem.orbit_space();
  const VarSet& jv = *space.j_vars();
  std::ostringstream out;
  auto list = [&](const std::vector<Monomial>& ms) {
    std::string s;
    for (std::size_t i = 0; i < ms.size(); ++i) s += (i ? ", " : "") + jv.format(ms[i]);
    return s.empty() ? std::string("-") : s;
  };
  out << "mode: " << to_string(report.mode) << "\n";
  out << "truncation: " << report.truncation << "\n";
  out << "original: " << report.original.str() << "\n";
  for (const auto& s : report.stages) {
    out << "\nstage target=" << s.target_degree << " source=" << s.source_degree << " generator=" << s.generator_degree
        << (s.applied ? " applied" : " skipped");
    if (!s.note.empty()) out << " (" << s.note << ")";
    out << "\n";
    out << "  targets: " << list(s.transfer.targets) << "\n";
    out << "  generators: " << list(s.transfer.generators) << "\n";
    if (!s.applied) continue;
    out << "  zeroed: " << list(s.plan.zeroed) << "\n";
    out << "  kept: " << list(s.plan.kept) << "\n";
    out << "  conditions:";
    if (s.plan.conditions.empty()) out << " none";
    for (const auto& c : s.plan.conditions) out << " [" << c.str() << " != 0]";
    out << "\n  generator: " << s.generator.poly().str() << "\n";
  }
  out << "\nconditions:";
  if (report.conditions.empty()) out << " none";
  out << "\n";
  for (const auto& c : report.conditions) out << "  " << c.str() << " != 0\n";
  out << "reduced: " << report.reduced.str() << "\n";
  out << "surviving: " << list(report.surviving) << "\n";
  return out.str();
}

StoredReport read_report(std::string_view json_text, const ProblemFile& problem) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format_version").get<unsigned>() != kReportFormat) throw InvalidArgument("unsupported report format_version");
    StoredReport r;
    const VarSetPtr& jv = problem.orbit_space().j_vars();
    auto mono_list = [&](const ordered_json& a) {
      std::vector<Monomial> out;
      for (const auto& s : a) out.push_back(parse_monomial(s.get<std::string>(), jv));
      return out;
    };
    r.input_digest = j.at("input_digest").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.options.mode = parse_mode(j.at("mode").get<std::string>());
    r.options.truncation = j.at("truncation").get<unsigned>();
    std::string kind = j.at("strategy").at("kind").get<std::string>();
    if (kind != "keep_set" && kind != "max_eliminate") throw InvalidArgument("unknown strategy '" + kind + "'");
    r.options.strategy.kind = kind == "keep_set" ? Strategy::Kind::keep_set : Strategy::Kind::max_eliminate;
    r.options.strategy.keep = mono_list(j.at("strategy").at("keep"));
    r.options.max_sets = j.at("max_sets").get<std::size_t>();
    for (const auto& [w, o] : j.at("orders").items())
      r.options.orders[static_cast<unsigned>(std::stoul(w))] = MonomialOrder{mono_list(o.at("targets")),
                                                                             mono_list(o.at("generators"))};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("malformed report: bad order degree");
  }
}

bool same_report(std::string_view a, std::string_view b) {
  try {
    return ordered_json::parse(a) == ordered_json::parse(b);
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

}  // namespace orbitred
