#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitred/elimination.hpp"

namespace orbitred {

struct Strategy {
  enum class Kind { max_eliminate, keep_set };
  Kind kind = Kind::max_eliminate;
  /// Monomials that must survive (keep_set only).
  std::vector<Monomial> keep;
};

struct ReduceOptions {
  Mode mode = Mode::fixed;
  Strategy strategy;
  /// 0 selects the stability order of the basis.
  unsigned truncation = 0;
  std::size_t max_sets = 256;
  /// Explicit target/generator orderings keyed by target degree.
  std::map<unsigned, MonomialOrder> orders;
};

struct Stage {
  unsigned target_degree = 0;
  unsigned source_degree = 0;
  unsigned generator_degree = 0;
  bool applied = false;
  std::string note;
  TransferMatrix transfer;
  EliminationPlan plan;
  Generator generator;
};

struct ReductionReport {
  JPolynomial original;
  JPolynomial reduced;
  std::vector<Stage> stages;
  std::vector<Polynomial> conditions;
  Mode mode = Mode::fixed;
  unsigned truncation = 0;
  /// Monomials zeroed by applied stages.
  std::vector<Monomial> zeroed;
  /// Support of the reduced potential minus the zeroed monomials whose
  /// coefficient vanishes (on the critical locus, in varying mode).
  std::vector<Monomial> surviving;
};

ReductionReport reduce(const JPolynomial& f, const OrbitSpace& space, const ParameterSpec& params,
                       const ReduceOptions& options);

/// Union of all stage conditions, deduplicated up to a rational factor,
/// in a fixed order.
std::vector<Polynomial> conditions_summary(const ReductionReport& report);

/// Re-apply the stage generators to the original (used to check reports).
JPolynomial replay(const ReductionReport& report, const OrbitSpace& space);

}  // namespace orbitred
