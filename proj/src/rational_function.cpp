#include "orbitred/rational_function.hpp"

#include <array>

namespace orbitred {

namespace {

// Bases shared by two factor lists, refined so that a base that divides
// another is split out. powers[k][w] is the multiplicity in list w.
struct Refinement {
  std::vector<Polynomial> bases;
  std::vector<std::array<unsigned, 2>> powers;

  void insert(Polynomial rest, unsigned power, int which) {
    for (std::size_t i = 0; i < bases.size() && !rest.is_constant(); ++i) {
      while (!rest.is_constant()) {
        auto q = divide_exact(rest, bases[i]);
        if (!q) break;
        rest = std::move(*q);
        powers[i][which] += power;
      }
      if (rest.is_constant()) break;
      if (auto q = divide_exact(bases[i], rest)) {
        // bases[i] = rest * q: keep rest in place, append q with the old powers.
        auto old = powers[i];
        bases[i] = rest;
        powers[i][which] += power;
        rest = Polynomial();
        if (!q->is_constant()) {
          bases.push_back(std::move(*q));
          powers.push_back(old);
        }
        return;
      }
    }
    if (rest.is_constant()) return;
    bases.push_back(std::move(rest));
    std::array<unsigned, 2> p{0, 0};
    p[which] = power;
    powers.push_back(p);
  }

  void insert_all(const std::vector<RationalFunction::Factor>& fs, int which) {
    for (const auto& f : fs) insert(f.base, f.power, which);
  }
};

Polynomial product(const std::vector<RationalFunction::Factor>& fs, VarSetPtr vars) {
  Polynomial p(vars, Rational(1));
  for (const auto& f : fs) p *= f.base.pow(f.power);
  return p;
}

void sort_factors(std::vector<RationalFunction::Factor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return compare_structure(a.base, b.base) < 0; });
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, const Polynomial& den) : num_(std::move(num)) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  divide_by(den, 1);
  cancel();
}

VarSetPtr RationalFunction::vars() const {
  if (num_.vars()) return num_.vars();
  for (const auto& f : den_)
    if (f.base.vars()) return f.base.vars();
  return nullptr;
}

Polynomial RationalFunction::denominator() const { return product(den_, vars()); }

std::optional<Rational> RationalFunction::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_term();
}

// Multiply the stored denominator by d^power (d nonzero).
void RationalFunction::divide_by(const Polynomial& d, unsigned power) {
  if (d.is_zero()) throw DomainError("division by zero");
  if (power == 0) return;
  auto [content, prim] = primitive_split(d);
  num_.scale(content.inverse().pow(power));
  Monomial mono = monomial_content(prim);
  Refinement r;
  for (const auto& f : den_) r.insert(f.base, f.power, 0);
  for (std::size_t i = 0; i < mono.length(); ++i)
    if (unsigned e = mono.exponent(i)) r.insert(Polynomial::term(prim.vars(), Monomial::variable(i), 1), e * power, 0);
  if (!mono.is_one()) {
    std::vector<Polynomial::Term> terms;
    for (const auto& t : prim.terms()) terms.emplace_back(t.first.quotient(mono), t.second);
    prim = Polynomial::from_terms(prim.vars(), std::move(terms));
  }
  r.insert(std::move(prim), power, 0);
  den_.clear();
  for (std::size_t i = 0; i < r.bases.size(); ++i)
    if (r.powers[i][0]) den_.push_back({std::move(r.bases[i]), r.powers[i][0]});
  sort_factors(den_);
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    num_ = Polynomial();
    return;
  }
  for (auto& f : den_) {
    while (f.power > 0) {
      auto q = divide_exact(num_, f.base);
      if (!q) break;
      num_ = std::move(*q);
      --f.power;
    }
  }
  std::erase_if(den_, [](const Factor& f) { return f.power == 0; });
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("division by zero rational function");
  RationalFunction r(product(den_, vars()));
  r.divide_by(num_, 1);
  r.cancel();
  return r;
}

RationalFunction RationalFunction::divided_by(const std::vector<Factor>& den) const {
  RationalFunction r = *this;
  if (r.is_zero()) return r;
  for (const auto& f : den) r.divide_by(f.base, f.power);
  r.cancel();
  return r;
}

RationalFunction RationalFunction::add(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    RationalFunction r = a;
    r.num_ += b.num_;
    r.cancel();
    return r;
  }
  Refinement ref;
  ref.insert_all(a.den_, 0);
  ref.insert_all(b.den_, 1);
  VarSetPtr vars = a.vars() ? a.vars() : b.vars();
  Polynomial ma(vars, Rational(1)), mb(vars, Rational(1));
  RationalFunction r;
  for (std::size_t i = 0; i < ref.bases.size(); ++i) {
    unsigned pa = ref.powers[i][0], pb = ref.powers[i][1], l = std::max(pa, pb);
    if (l > pa) ma *= ref.bases[i].pow(l - pa);
    if (l > pb) mb *= ref.bases[i].pow(l - pb);
    r.den_.push_back({ref.bases[i], l});
  }
  sort_factors(r.den_);
  r.num_ = a.num_ * ma + b.num_ * mb;
  r.cancel();
  return r;
}

RationalFunction RationalFunction::multiply(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  RationalFunction r;
  r.num_ = a.num_ * b.num_;
  if (a.den_.empty() && b.den_.empty()) return r;
  Refinement ref;
  ref.insert_all(a.den_, 0);
  ref.insert_all(b.den_, 1);
  for (std::size_t i = 0; i < ref.bases.size(); ++i)
    r.den_.push_back({ref.bases[i], ref.powers[i][0] + ref.powers[i][1]});
  sort_factors(r.den_);
  r.cancel();
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.num_ * b.denominator() == b.num_ * a.denominator();
}

RationalFunction RationalFunction::set_zero(std::span<const std::size_t> indices) const {
  RationalFunction r(num_.set_zero(indices));
  for (const auto& f : den_) {
    Polynomial d = f.base.set_zero(indices);
    if (d.is_zero()) throw DomainError("denominator vanishes at the critical locus");
    r.divide_by(d, f.power);
  }
  r.cancel();
  return r;
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  auto id = [](const Rational& c) { return c; };
  Rational n = num_.evaluate<Rational>(point, id);
  Rational d = 1;
  for (const auto& f : den_) d *= f.base.evaluate<Rational>(point, id).pow(f.power);
  if (d.is_zero()) throw DomainError("rational function evaluated at a pole");
  return n / d;
}

namespace {

std::string denominator_text(const std::vector<RationalFunction::Factor>& den) {
  std::string out;
  bool bare = den.size() == 1;
  for (const auto& f : den) {
    if (!out.empty()) out += '*';
    std::string b = f.base.str();
    if (f.base.size() > 1) b = "(" + b + ")";
    out += b;
    if (f.power > 1) out += "^" + std::to_string(f.power);
  }
  return bare ? out : "(" + out + ")";
}

}  // namespace

CoefficientText format_coefficient(const RationalFunction& c) {
  CoefficientText ct;
  if (c.is_zero()) return {"0", false, false};
  const Polynomial& n = c.num_;
  ct.negative = n.leading().second.sign() < 0;
  Polynomial mag = ct.negative ? -n : n;
  if (n.size() == 1) {
    ct.body = mag.str();
    ct.unit = c.den_.empty() && mag.is_constant() && mag.constant_term().is_one();
  } else {
    ct.body = "(" + mag.str() + ")";
  }
  if (!c.den_.empty()) ct.body += "/" + denominator_text(c.den_);
  return ct;
}

std::string RationalFunction::str() const {
  if (den_.empty()) return num_.str();
  CoefficientText ct = format_coefficient(*this);
  return (ct.negative ? "-" : "") + ct.body;
}

}  // namespace orbitred
