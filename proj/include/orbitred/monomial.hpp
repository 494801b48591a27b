#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orbitred {

/// Power product over positionally indexed indeterminates. Trailing zero
/// exponents are never stored, so a monomial is independent of how many
/// indeterminates its ring declares.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  Monomial(std::initializer_list<unsigned> exps);
  explicit Monomial(std::span<const unsigned> exps);

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned exponent(std::size_t i) const { return i < exps_.size() ? exps_[i] : 0u; }
  /// One past the highest index with a nonzero exponent.
  std::size_t length() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  bool is_one() const { return exps_.empty(); }

  bool divides(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;
  /// Requires this->divides(other) == false is an error.
  Monomial quotient(const Monomial& divisor) const;
  Monomial with_exponent(std::size_t i, unsigned e) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }

 private:
  boost::container::small_vector<Exponent, 32> exps_;
  unsigned degree_ = 0;

  void trim();
};

/// Graded lexicographic order: total degree first, then the exponent of the
/// first declared indeterminate, and so on. Greater means "earlier" in term
/// iteration.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// Ordered, named indeterminate set.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// "J1^2*J2"; the unit monomial prints as "1".
  std::string format(const Monomial& m) const;

  friend bool operator==(const VarSet& a, const VarSet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

VarSetPtr make_varset(std::vector<std::string> names);

/// Null sets are compatible with everything (constants carry no set).
bool compatible(const VarSetPtr& a, const VarSetPtr& b);

/// Enumerate all exponent vectors e with sum_i weights[i] * e[i] == degree,
/// in descending grlex order.
std::vector<Monomial> monomials_of_weighted_degree(std::span<const unsigned> weights,
                                                   unsigned degree);

}  // namespace orbitred
