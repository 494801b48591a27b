#pragma once

#include <string>
#include <string_view>

#include "orbitred/error.hpp"
#include "orbitred/rational_function.hpp"

namespace orbitred {

class ParseError : public InvalidArgument {
 public:
  ParseError(unsigned line, unsigned column, const std::string& message);
  unsigned line() const { return line_; }
  unsigned column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  unsigned line_, column_;
  std::string detail_;
};

/// Where an expression starts inside a larger text, for diagnostics.
struct SourcePos {
  unsigned line = 1;
  unsigned column = 1;
};

/// Grammar: integers, names, + - * / ^ and parentheses. Division only by
/// nonzero constants, exponents are integer literals, and juxtaposition is
/// rejected.
Polynomial parse_polynomial(std::string_view text, const VarSetPtr& vars, SourcePos at = {});

/// Same grammar over orbit-space names and parameter names; the parameters
/// become coefficients.
JPolynomial parse_j_polynomial(std::string_view text, const VarSetPtr& j_vars, const VarSetPtr& params,
                               SourcePos at = {});

/// A single monomial such as "J1^2*J3" (coefficient 1).
Monomial parse_monomial(std::string_view text, const VarSetPtr& vars, SourcePos at = {});

}  // namespace orbitred
