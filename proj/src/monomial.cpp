#include "orbitred/monomial.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "orbitred/error.hpp"

namespace orbitred {

Monomial::Monomial(std::initializer_list<unsigned> exps)
    : Monomial(std::span<const unsigned>(exps.begin(), exps.size())) {}

Monomial::Monomial(std::span<const unsigned> exps) {
  exps_.reserve(exps.size());
  for (unsigned e : exps) {
    if (e > std::numeric_limits<Exponent>::max()) throw InvalidArgument("exponent overflow");
    exps_.push_back(static_cast<Exponent>(e));
    degree_ += e;
  }
  trim();
}

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  if (power == 0) return m;
  if (power > std::numeric_limits<Exponent>::max()) throw InvalidArgument("exponent overflow");
  m.exps_.assign(index + 1, 0);
  m.exps_[index] = static_cast<Exponent>(power);
  m.degree_ = power;
  return m;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

bool Monomial::divides(const Monomial& other) const {
  if (exps_.size() > other.exps_.size() || degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::gcd(const Monomial& other) const {
  Monomial g;
  std::size_t n = std::min(exps_.size(), other.exps_.size());
  g.exps_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.exps_[i] = std::min(exps_[i], other.exps_[i]);
    g.degree_ += g.exps_[i];
  }
  g.trim();
  return g;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  if (!divisor.divides(*this)) throw InvalidArgument("monomial quotient is not exact");
  Monomial q = *this;
  for (std::size_t i = 0; i < divisor.exps_.size(); ++i) q.exps_[i] -= divisor.exps_[i];
  q.degree_ -= divisor.degree_;
  q.trim();
  return q;
}

Monomial Monomial::with_exponent(std::size_t i, unsigned e) const {
  if (e > std::numeric_limits<Exponent>::max()) throw InvalidArgument("exponent overflow");
  Monomial m = *this;
  if (m.exps_.size() <= i) m.exps_.resize(i + 1, 0);
  m.degree_ = m.degree_ - m.exps_[i] + e;
  m.exps_[i] = static_cast<Exponent>(e);
  m.trim();
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  const Monomial& longer = a.exps_.size() >= b.exps_.size() ? a : b;
  const Monomial& shorter = a.exps_.size() >= b.exps_.size() ? b : a;
  Monomial m = longer;
  for (std::size_t i = 0; i < shorter.exps_.size(); ++i) {
    unsigned e = unsigned(m.exps_[i]) + shorter.exps_[i];
    if (e > std::numeric_limits<Monomial::Exponent>::max()) throw InvalidArgument("exponent overflow");
    m.exps_[i] = static_cast<Monomial::Exponent>(e);
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  std::size_t n = std::max(a.length(), b.length());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned ea = a.exponent(i), eb = b.exponent(i);
    if (ea != eb) return ea <=> eb;
  }
  return std::strong_ordering::equal;
}

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InvalidArgument("empty indeterminate name");
    if (!seen.insert(n).second) throw InvalidArgument("duplicate indeterminate '" + n + "'");
  }
}

std::optional<std::size_t> VarSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::string VarSet::format(const Monomial& m) const {
  if (m.is_one()) return "1";
  if (m.length() > names_.size()) throw InvalidArgument("monomial outside indeterminate set");
  std::string out;
  for (std::size_t i = 0; i < m.length(); ++i) {
    unsigned e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += names_[i];
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

VarSetPtr make_varset(std::vector<std::string> names) {
  return std::make_shared<const VarSet>(std::move(names));
}

bool compatible(const VarSetPtr& a, const VarSetPtr& b) {
  return !a || !b || a == b || *a == *b;
}

namespace {

void enumerate(std::span<const unsigned> weights, std::size_t i, unsigned remaining,
               std::vector<unsigned>& exps, std::vector<Monomial>& out) {
  if (i == weights.size()) {
    if (remaining == 0) out.emplace_back(std::span<const unsigned>(exps));
    return;
  }
  if (weights[i] == 0) throw InvalidArgument("zero weight");
  for (unsigned e = remaining / weights[i] + 1; e-- > 0;) {
    exps[i] = e;
    enumerate(weights, i + 1, remaining - e * weights[i], exps, out);
  }
  exps[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_weighted_degree(std::span<const unsigned> weights,
                                                   unsigned degree) {
  std::vector<Monomial> out;
  std::vector<unsigned> exps(weights.size(), 0);
  enumerate(weights, 0, degree, exps, out);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

}  // namespace orbitred
