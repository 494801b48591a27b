#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitred/expression.hpp"
#include "orbitred/pipeline.hpp"

namespace orbitred {

/// A diagnostic tied to a section of a problem file.
class ProblemError : public ParseError {
 public:
  ProblemError(std::string section, unsigned line, unsigned column, const std::string& message);
  const std::string& section() const { return section_; }

 private:
  std::string section_;
};

struct ProblemOptions {
  Mode mode = Mode::fixed;
  /// 0: stability order.
  unsigned truncate = 0;
  Strategy strategy;
  std::size_t max_sets = 256;
  std::optional<std::uint64_t> seed;
  std::map<unsigned, MonomialOrder> orders;
};

/// Parsed problem definition:
///
///   format_version = 1
///   [space]       vars = x, y
///   [group]       generator = "-1 0; 0 1"        (repeatable)
///   [invariants]  J1 = "x^2"   syzygy = "J1*J2 -> J3^2"
///   [parameters]  critical = a   generic = b1, b2
///   [potential]   expr = "a*J1 + b1*J1^2"   or   general = true
///   [options]     mode, truncate, strategy, keep, max_sets, seed,
///                 targets.<degree>, generators.<degree>
struct ProblemFile {
  unsigned format_version = 1;
  std::vector<std::string> space;
  std::vector<Matrix<Rational>> group;
  std::vector<std::string> invariant_names;
  std::vector<Polynomial> invariants;
  std::vector<SyzygyRule> syzygies;
  std::vector<std::string> critical;
  std::vector<std::string> generic;
  bool general = false;
  /// Unset when general is true.
  JPolynomial potential;
  ProblemOptions options;

  // Derived from the above.
  std::shared_ptr<const OrbitSpace> space_data;
  ParameterSpec params;

  const OrbitSpace& orbit_space() const { return *space_data; }
  const InvariantBasis& basis() const { return space_data->basis(); }
  /// The explicit potential, or the general one at the given order
  /// (0: truncation option or stability order).
  JPolynomial resolved_potential() const;
  unsigned truncation() const;
  ReduceOptions reduce_options() const;
};

ProblemFile parse_problem(std::string_view text);
/// Canonical text; parse_problem(print_problem(p)) reproduces p.
std::string print_problem(const ProblemFile& p);
bool same_problem(const ProblemFile& a, const ProblemFile& b);

/// Override the truncation order; a general potential gets its parameter
/// list rebuilt, and its critical names must still exist.
void set_truncation(ProblemFile& p, unsigned n);

}  // namespace orbitred
