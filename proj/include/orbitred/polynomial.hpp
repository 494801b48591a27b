#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitred/error.hpp"
#include "orbitred/monomial.hpp"
#include "orbitred/rational.hpp"

namespace orbitred {

/// How a coefficient prints in front of a monomial: the sign is split off
/// so terms join with " + " / " - ".
struct CoefficientText {
  std::string body;  // magnitude, already parenthesized if needed
  bool negative = false;
  bool unit = false;  // magnitude is exactly 1
};

inline CoefficientText format_coefficient(const Rational& c) {
  Rational a = c.abs();
  return {a.str(), c.sign() < 0, a.is_one()};
}

/// Sparse polynomial over a named indeterminate set. Terms are kept sorted
/// in descending graded-lex order with no zero coefficients, so equal
/// polynomials have identical term vectors.
template <class C>
class BasicPolynomial {
 public:
  using Coefficient = C;
  using Term = std::pair<Monomial, C>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(VarSetPtr vars) : vars_(std::move(vars)) {}
  BasicPolynomial(VarSetPtr vars, C c) : vars_(std::move(vars)) {
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, std::move(c));
  }

  static BasicPolynomial constant(C c) { return BasicPolynomial(nullptr, std::move(c)); }

  static BasicPolynomial term(VarSetPtr vars, Monomial m, C c) {
    check_fits(vars, m);
    BasicPolynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
  }

  static BasicPolynomial variable(const VarSetPtr& vars, std::size_t i) {
    if (!vars || i >= vars->size()) throw InvalidArgument("indeterminate index out of range");
    return term(vars, Monomial::variable(i), C(1));
  }

  static BasicPolynomial variable(const VarSetPtr& vars, std::string_view name) {
    auto i = vars ? vars->index_of(name) : std::nullopt;
    if (!i) throw InvalidArgument("unknown indeterminate '" + std::string(name) + "'");
    return variable(vars, *i);
  }

  /// Accepts unsorted terms with repeats and zeros.
  static BasicPolynomial from_terms(VarSetPtr vars, std::vector<Term> terms) {
    for (const auto& t : terms) check_fits(vars, t.first);
    BasicPolynomial p(std::move(vars));
    p.terms_ = combine(std::move(terms));
    return p;
  }

  const VarSetPtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  const Term& leading() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }
  unsigned degree() const { return terms_.empty() ? 0 : terms_.front().first.degree(); }

  C coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return grlex_compare(t.first, k) > 0; });
    if (it != terms_.end() && it->first == m) return it->second;
    return C(0);
  }
  C constant_term() const { return coefficient(Monomial{}); }

  /// Rebinds to an equal (or wider-compatible) indeterminate set.
  BasicPolynomial with_vars(VarSetPtr vars) const {
    BasicPolynomial p = *this;
    for (const auto& t : terms_) check_fits(vars, t.first);
    p.vars_ = std::move(vars);
    return p;
  }

  BasicPolynomial operator-() const {
    BasicPolynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) { return *this = merge(*this, o, false); }
  BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this = merge(*this, o, true); }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = multiply(*this, o); }

  BasicPolynomial& scale(const C& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= c;
    std::erase_if(terms_, [](const Term& t) { return t.second.is_zero(); });
    return *this;
  }

  BasicPolynomial mul_term(const Monomial& m, const C& c) const {
    BasicPolynomial p(vars_);
    if (c.is_zero()) return p;
    check_fits(vars_, m);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.emplace_back(t.first * m, t.second * c);
    std::erase_if(p.terms_, [](const Term& t) { return t.second.is_zero(); });
    return p;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) { return merge(a, b, false); }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return merge(a, b, true); }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) { return multiply(a, b); }
  friend BasicPolynomial operator*(BasicPolynomial a, const C& c) { return a.scale(c); }
  friend BasicPolynomial operator*(const C& c, BasicPolynomial a) { return a.scale(c); }

  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (!compatible(a.vars_, b.vars_) && !(a.is_zero() && b.is_zero())) return false;
    return a.terms_ == b.terms_;
  }

  BasicPolynomial pow(unsigned e) const {
    BasicPolynomial result(vars_, C(1));
    BasicPolynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  BasicPolynomial derivative(std::size_t i) const {
    BasicPolynomial p(vars_);
    for (const auto& [m, c] : terms_) {
      unsigned e = m.exponent(i);
      if (e == 0) continue;
      p.terms_.emplace_back(m.with_exponent(i, e - 1), c * C(e));
    }
    std::sort(p.terms_.begin(), p.terms_.end(), TermGreater{});
    return p;
  }

  /// Replace indeterminate i by images[i]; all images share one target set.
  BasicPolynomial substitute(const std::vector<BasicPolynomial>& images) const {
    VarSetPtr target;
    for (const auto& im : images)
      if (im.vars_) target = im.vars_;
    BasicPolynomial out(target);
    std::vector<std::vector<BasicPolynomial>> powers(images.size());
    auto power = [&](std::size_t i, unsigned e) -> const BasicPolynomial& {
      if (i >= images.size()) throw InvalidArgument("substitution misses an indeterminate");
      auto& cache = powers[i];
      if (cache.empty()) cache.emplace_back(target, C(1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
      return cache[e];
    };
    std::vector<Term> acc;
    for (const auto& [m, c] : terms_) {
      BasicPolynomial prod(target, c);
      for (std::size_t i = 0; i < m.length(); ++i)
        if (unsigned e = m.exponent(i)) prod *= power(i, e);
      for (auto& t : prod.terms_) acc.push_back(std::move(t));
    }
    out.terms_ = combine(std::move(acc));
    return out;
  }

  /// Drop every term containing one of the listed indeterminates.
  BasicPolynomial set_zero(std::span<const std::size_t> indices) const {
    BasicPolynomial p(vars_);
    for (const auto& t : terms_) {
      bool keep = true;
      for (std::size_t i : indices)
        if (t.first.exponent(i)) keep = false;
      if (keep) p.terms_.push_back(t);
    }
    return p;
  }

  template <class T, class F>
  T evaluate(std::span<const T> point, F&& coeff) const {
    T sum = T(0);
    for (const auto& [m, c] : terms_) {
      T v = coeff(c);
      for (std::size_t i = 0; i < m.length(); ++i) {
        unsigned e = m.exponent(i);
        if (e == 0) continue;
        if (i >= point.size()) throw InvalidArgument("evaluation point too short");
        T b = point[i];
        for (unsigned k = 0; k < e; ++k) v *= b;
      }
      sum += v;
    }
    return sum;
  }

  template <class D, class F>
  BasicPolynomial<D> map_coefficients(F&& fn, VarSetPtr vars = nullptr) const {
    std::vector<typename BasicPolynomial<D>::Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(m, fn(c));
    return BasicPolynomial<D>::from_terms(vars ? vars : vars_, std::move(out));
  }

  /// Canonical text: "3*J1^2*J2 - 1/2*J3 + 1"; zero prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      CoefficientText ct = format_coefficient(c);
      if (first)
        out += ct.negative ? "-" : "";
      else
        out += ct.negative ? " - " : " + ";
      first = false;
      if (m.is_one()) {
        out += ct.body;
        continue;
      }
      if (!vars_) throw InvalidArgument("polynomial without indeterminate names");
      if (!ct.unit) out += ct.body + "*";
      out += vars_->format(m);
    }
    return out;
  }

  struct TermGreater {
    bool operator()(const Term& a, const Term& b) const { return grlex_compare(a.first, b.first) > 0; }
  };

 private:
  VarSetPtr vars_;
  std::vector<Term> terms_;

  static void check_fits(const VarSetPtr& vars, const Monomial& m) {
    if (m.is_one()) return;
    if (!vars) throw InvalidArgument("non-constant term without indeterminate set");
    if (m.length() > vars->size()) throw InvalidArgument("monomial outside indeterminate set");
  }

  static VarSetPtr join(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (!compatible(a.vars_, b.vars_)) throw InvalidArgument("indeterminate set mismatch");
    return a.vars_ ? a.vars_ : b.vars_;
  }

  static std::vector<Term> combine(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(), TermGreater{});
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else {
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    return out;
  }

  static BasicPolynomial merge(const BasicPolynomial& a, const BasicPolynomial& b, bool subtract) {
    BasicPolynomial r(join(a, b));
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int c;
      if (i == a.terms_.end())
        c = -1;
      else if (j == b.terms_.end())
        c = 1;
      else {
        auto o = grlex_compare(i->first, j->first);
        c = o > 0 ? 1 : (o < 0 ? -1 : 0);
      }
      if (c > 0) {
        r.terms_.push_back(*i++);
      } else if (c < 0) {
        r.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        C s = subtract ? i->second - j->second : i->second + j->second;
        if (!s.is_zero()) r.terms_.emplace_back(i->first, std::move(s));
        ++i, ++j;
      }
    }
    return r;
  }

  static BasicPolynomial multiply(const BasicPolynomial& a, const BasicPolynomial& b) {
    BasicPolynomial r(join(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1) return b.with_vars(r.vars_).mul_term(a.terms_[0].first, a.terms_[0].second);
    if (b.terms_.size() == 1) return a.with_vars(r.vars_).mul_term(b.terms_[0].first, b.terms_[0].second);
    std::map<Monomial, C, GrlexGreater> acc;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma * mb;
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(std::move(m), ca * cb);
        else
          it->second += ca * cb;
      }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
    return r;
  }
};

template <class C>
bool is_zero(const BasicPolynomial<C>& p) {
  return p.is_zero();
}

using Polynomial = BasicPolynomial<Rational>;

/// Exact quotient a / b, or nullopt when b does not divide a.
template <class C>
std::optional<BasicPolynomial<C>> divide_exact(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  using Poly = BasicPolynomial<C>;
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  VarSetPtr vars = a.vars() ? a.vars() : b.vars();
  if (a.is_zero()) return Poly(vars);
  const auto& [lm, lc] = b.leading();
  // Leading and trailing terms of a product are the products of those of
  // the factors.
  if (!lm.divides(a.leading().first) || !b.terms().back().first.divides(a.terms().back().first)) return std::nullopt;
  std::vector<typename Poly::Term> quotient;
  if (b.size() == 1) {
    for (const auto& [m, c] : a.terms()) {
      if (!lm.divides(m)) return std::nullopt;
      quotient.emplace_back(m.quotient(lm), c / lc);
    }
    return Poly::from_terms(vars, std::move(quotient));
  }
  std::map<Monomial, C, GrlexGreater> rem(a.terms().begin(), a.terms().end());
  const Monomial& trailing = a.terms().back().first;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lm.divides(it->first) || grlex_compare(it->first, trailing) < 0) return std::nullopt;
    Monomial qm = it->first.quotient(lm);
    C qc = it->second / lc;
    rem.erase(it);
    for (std::size_t k = 1; k < b.terms().size(); ++k) {
      const auto& [bm, bc] = b.terms()[k];
      C v = qc * bc;
      auto [pos, inserted] = rem.try_emplace(qm * bm, -v);
      if (!inserted) {
        pos->second -= v;
        if (pos->second.is_zero()) rem.erase(pos);
      }
    }
    quotient.emplace_back(std::move(qm), std::move(qc));
  }
  return Poly::from_terms(vars, std::move(quotient));
}

/// p = content * primitive with integer, gcd-1 coefficients and positive
/// leading coefficient. Zero gives (0, 0).
std::pair<Rational, Polynomial> primitive_split(const Polynomial& p);

/// Largest monomial dividing every term (unit for zero).
template <class C>
Monomial monomial_content(const BasicPolynomial<C>& p) {
  if (p.is_zero()) return Monomial{};
  Monomial g = p.terms().front().first;
  for (const auto& t : p.terms()) g = g.gcd(t.first);
  return g;
}

/// Total order on polynomials (term by term, then length); used only for
/// deterministic sorting.
template <class C>
int compare_structure(const BasicPolynomial<C>& a, const BasicPolynomial<C>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto o = grlex_compare(a.terms()[i].first, b.terms()[i].first);
    if (o != 0) return o > 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
  return 0;
}

}  // namespace orbitred
