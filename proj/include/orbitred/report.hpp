#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "orbitred/problem.hpp"

namespace orbitred {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr unsigned kReportFormat = 1;

std::string sha256_hex(std::string_view data);

/// Machine-readable report: one JSON document, polynomials as canonical
/// strings. Byte-identical for identical inputs.
std::string report_json(const ReductionReport& report, const ProblemFile& problem, std::string_view input_text,
                        std::uint64_t seed);

std::string report_text(const ReductionReport& report, const ProblemFile& problem);

/// The fields of a stored report needed to reproduce it.
struct StoredReport {
  std::string input_digest;
  std::uint64_t seed = 0;
  ReduceOptions options;
};

/// Throws InvalidArgument on malformed documents.
StoredReport read_report(std::string_view json_text, const ProblemFile& problem);

/// Structural equality of two report documents (whitespace-insensitive).
bool same_report(std::string_view a, std::string_view b);

}  // namespace orbitred
