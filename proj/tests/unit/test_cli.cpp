#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "orbitred/commands.hpp"
#include "orbitred/report.hpp"
#include "support.hpp"

using namespace orbitred;
using namespace testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "orbitred");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("orbitred-tests-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

std::string edited(const std::string& file, const std::string& from, const std::string& to) {
  std::string text = read_file(data_path(file));
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

// Section name reported for a broken problem text.
std::string failing_section(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ProblemError& e) {
    return e.section();
  }
  return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("expression parsing") {
  auto v = make_varset({"x", "y"});
  CHECK(parse_polynomial("(x + y)^2 - 2*x*y", v) == parse_polynomial("x^2 + y^2", v));
  CHECK(parse_polynomial("x/2 + -y", v) == parse_polynomial("1/2*x - y", v));
  CHECK_THROWS_AS(parse_polynomial("2x", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x y", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("0.5*x", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x/y", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x/0", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^1001", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z", v), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x + y", v), ParseError);
  try {
    parse_polynomial("x + * y", v, {3, 10});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 14);
  }
  auto j = make_varset({"J1", "J2"});
  auto p = make_varset({"a", "b"});
  JPolynomial f = parse_j_polynomial("a*J1 + (a + b)*J1*J2 - 3", j, p);
  CHECK(f.coefficient(Monomial{1, 1}) == RationalFunction(parse_polynomial("a + b", p)));
  CHECK(f.constant_term() == RationalFunction(-3));
  CHECK(parse_monomial("J1^2*J2", j) == Monomial{2, 1});
  CHECK_THROWS_AS(parse_monomial("2*J1", j), ParseError);
}

TEST_CASE("problem files") {
  ProblemFile m = load("minimal.problem");
  CHECK(stability_order(m.basis()) == 4);
  CHECK(m.params.critical_names() == std::vector<std::string>{"a"});
  ProblemFile sgu = load("sgu.problem");
  CHECK(sgu.space.size() == 3);
  CHECK(sgu.group.size() == 3);
  CHECK(sgu.invariant_names == std::vector<std::string>{"J1", "J2", "J3"});
  CHECK(sgu.params.vars()->size() == 22);
  CHECK(sgu.options.mode == Mode::varying);
  CHECK(sgu.options.seed == std::optional<std::uint64_t>(42));
  CHECK(sgu.potential.size() == 22);
  CHECK(sgu.truncation() == 12);
  for (const std::string name : {"minimal.problem", "example4.problem", "example5.problem", "sgu.problem"}) {
    ProblemFile p = load(name);
    ProblemFile again = parse_problem(print_problem(p));
    CHECK(same_problem(p, again));
    CHECK(print_problem(again) == print_problem(p));
  }
}

TEST_CASE("problem file diagnostics name the section") {
  CHECK(failing_section(edited("example5.problem", "J1*J2 -> J3^2", "J3^2 -> J1*J1")) == "invariants");
  try {
    parse_problem(edited("example5.problem", "J1*J2 -> J3^2", "J3^2 -> J1*J1"));
  } catch (const ProblemError& e) {
    CHECK(std::string(e.what()).find("unsound") != std::string::npos);
  }
  CHECK(failing_section(edited("example4.problem", "J1 = \"x^2\"", "J1 = \"x^2 + y\"")) == "invariants");
  CHECK(failing_section(edited("example4.problem", "c*J1*J2", "d*J1*J2")) == "potential");
  CHECK(failing_section(edited("example4.problem", "mode = fixed", "mode = sideways")) == "options");
  CHECK(failing_section(edited("example4.problem", "mode = fixed", "colour = blue")) == "options");
  CHECK(failing_section(edited("example4.problem", "\"-1 0; 0 1\"", "\"-1 0 0; 0 1\"")) == "group");
  CHECK(failing_section(edited("example4.problem", "generic = a1", "generic = a1, a1")) == "parameters");
  CHECK(failing_section(edited("example4.problem", "vars = x, y", "vars = x, x")) == "space");
  // x is not invariant under the reflections.
  CHECK(failing_section(edited("example4.problem", "J1 = \"x^2\"", "J1 = \"x\"")) == "invariants");
  CHECK_THROWS_AS(parse_problem("format_version = 2\n"), ParseError);
}

TEST_CASE("informational commands") {
  Run pm = run({"pmatrix", data_path("example5.problem")});
  CHECK(pm.code == kExitOk);
  CHECK(pm.out == "4*J1 | 0 | 2*J3\n0 | 4*J2 | 2*J3\n2*J3 | 2*J3 | J1 + J2\n");
  Run so = run({"stability-order", data_path("sgu.problem")});
  CHECK(so.code == kExitOk);
  CHECK(so.out == "12\n");
  Run gp = run({"general-potential", data_path("sgu.problem")});
  CHECK(gp.out.find("parameters: 22\n") != std::string::npos);
  Run gp5 = run({"general-potential", data_path("example5.problem")});
  CHECK(gp5.out.find("parameters: 8\n") != std::string::npos);
  Run ct = run({"check-term", data_path("sgu.problem"), "--term", "J1^2"});
  CHECK(ct.code == kExitOk);
  CHECK(ct.out.find("eliminable: no") != std::string::npos);
  Run ct3 = run({"check-term", data_path("sgu.problem"), "--term", "J1^3"});
  CHECK(ct3.out.find("eliminable: yes") != std::string::npos);
}

TEST_CASE("usage errors") {
  Run none = run({});
  CHECK(none.code == kExitUsage);
  Run bad = run({"frobnicate"});
  CHECK(bad.code == kExitUsage);
  Run missing = run({"pmatrix", data_path("missing.problem")});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.rfind("pmatrix: ", 0) == 0);
  std::string broken = temp_path("broken.problem");
  write(broken, edited("example5.problem", "J1*J2 -> J3^2", "J3^2 -> J1*J1"));
  Run unsound = run({"reduce", broken});
  CHECK(unsound.code == kExitUsage);
  CHECK(unsound.err.rfind("invariants: ", 0) == 0);
  CHECK(std::count(unsound.err.begin(), unsound.err.end(), '\n') == 1);
  Run mode = run({"reduce", data_path("example4.problem"), "--mode", "sometimes"});
  CHECK(mode.code == kExitUsage);
  Run fmt = run({"reduce", data_path("example4.problem"), "--format", "yaml"});
  CHECK(fmt.code == kExitUsage);
  Run term = run({"check-term", data_path("sgu.problem"), "--term", "J4"});
  CHECK(term.code == kExitUsage);
}

TEST_CASE("reports are deterministic and verifiable") {
  std::string a = temp_path("e4a.json"), b = temp_path("e4b.json");
  REQUIRE(run({"reduce", data_path("example4.problem"), "--json", a, "--format", "none"}).code == kExitOk);
  REQUIRE(run({"reduce", data_path("example4.problem"), "--json", b, "--format", "none"}).code == kExitOk);
  CHECK(read_file(a) == read_file(b));
  CHECK(same_report(read_file(a), read_file(b)));
  auto doc = read_file(a);
  CHECK(doc.find("\"input_digest\": \"sha256:" + sha256_hex(read_file(data_path("example4.problem"))) + "\"") !=
        std::string::npos);
  CHECK(doc.find("\"reduced_potential\": \"a1*J1 + a2*J2\"") != std::string::npos);

  Run text = run({"reduce", data_path("example4.problem")});
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("a1*J1 + a2*J2") != std::string::npos);

  Run ok = run({"verify", data_path("example4.problem"), "--report", a, "--param", "a1=1", "--param", "a2=2",
                "--default-param", "1"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("result: pass") != std::string::npos);
  CHECK(ok.out.find("seed: 42") != std::string::npos);

  // Parameters on a resonance locus are refused.
  Run locus = run({"verify", data_path("example4.problem"), "--report", a, "--param", "a1=1", "--param", "a2=-1",
                   "--default-param", "1"});
  CHECK(locus.code == kExitDomain);
  Run nonnum = run({"verify", data_path("example4.problem"), "--report", a, "--param", "a1=one"});
  CHECK(nonnum.code == kExitUsage);

  // A report from another problem is rejected.
  Run other = run({"verify", data_path("example5.problem"), "--report", a, "--default-param", "1"});
  CHECK(other.code == kExitUsage);

  // A tampered report no longer matches a fresh reduction.
  std::string tampered = temp_path("tampered.json");
  std::string t = read_file(a);
  auto pos = t.find("\"reduced_potential\": \"a1*J1 + a2*J2\"");
  REQUIRE(pos != std::string::npos);
  t.replace(pos, std::string("\"reduced_potential\": \"a1*J1 + a2*J2\"").size(),
            "\"reduced_potential\": \"a1*J1 + 2*a2*J2\"");
  write(tampered, t);
  Run bad = run({"verify", data_path("example4.problem"), "--report", tampered, "--default-param", "1"});
  CHECK(bad.code == kExitDomain);
}

TEST_CASE("seed precedence") {
  std::string path = temp_path("seed.json");
  REQUIRE(run({"reduce", data_path("example4.problem"), "--json", path, "--format", "none", "--seed", "7"}).code ==
          kExitOk);
  CHECK(read_file(path).find("\"seed\": 7") != std::string::npos);
  REQUIRE(run({"reduce", data_path("sgu.problem"), "--truncate", "6", "--json", path, "--format", "none"}).code ==
          kExitOk);
  CHECK(read_file(path).find("\"seed\": 42") != std::string::npos);
}

}  // TEST_SUITE
