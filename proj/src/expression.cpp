#include "orbitred/expression.hpp"

#include <cctype>

namespace orbitred {

ParseError::ParseError(unsigned line, unsigned column, const std::string& message)
    : InvalidArgument("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarSetPtr& vars, SourcePos at) : text_(text), vars_(vars), at_(at) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) unexpected();
    return p;
  }

 private:
  std::string_view text_;
  VarSetPtr vars_;
  SourcePos at_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t where) const {
    unsigned line = at_.line, col = at_.column;
    for (std::size_t i = 0; i < where && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  [[noreturn]] void unexpected() const {
    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
      fail("implicit multiplication is not allowed; use '*'");
    fail(std::string("unexpected character '") + c + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        skip_space();
        std::size_t where = pos_;
        Polynomial d = unary();
        if (!d.is_constant()) fail("division by a non-constant expression", where);
        Rational c = d.constant_term();
        if (c.is_zero()) fail("division by zero", where);
        acc = acc.scale(c.inverse());
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t where = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a non-negative integer literal");
      mpz_class e = digits();
      if (e > 1000) fail("exponent too large", where);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    skip_space();
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
        fail("implicit multiplication is not allowed; use '*'");
    }
    return base;
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = digits();
      if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal numbers are not supported; write p/q");
      return Polynomial(vars_, Rational(v, mpz_class(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = vars_->index_of(name);
      if (!idx) fail("unknown name '" + name + "'", start);
      return Polynomial::variable(vars_, *idx);
    }
    unexpected();
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const VarSetPtr& vars, SourcePos at) {
  return Parser(text, vars, at).parse();
}

JPolynomial parse_j_polynomial(std::string_view text, const VarSetPtr& j_vars, const VarSetPtr& params,
                               SourcePos at) {
  std::vector<std::string> names = j_vars->names();
  for (const auto& n : params->names()) names.push_back(n);
  auto all = make_varset(names);  // rejects clashes between the two sets
  Polynomial p = parse_polynomial(text, all, at);
  std::size_t r = j_vars->size();
  std::vector<JPolynomial::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<unsigned> je(r, 0), pe(params->size(), 0);
    for (std::size_t i = 0; i < m.length(); ++i) {
      if (i < r)
        je[i] = m.exponent(i);
      else
        pe[i - r] = m.exponent(i);
    }
    Polynomial coeff = Polynomial::term(params, Monomial(std::span<const unsigned>(pe)), c);
    terms.emplace_back(Monomial(std::span<const unsigned>(je)), RationalFunction(coeff));
  }
  return JPolynomial::from_terms(j_vars, std::move(terms));
}

Monomial parse_monomial(std::string_view text, const VarSetPtr& vars, SourcePos at) {
  Polynomial p = parse_polynomial(text, vars, at);
  if (p.size() != 1 || !p.terms().front().second.is_one())
    throw ParseError(at.line, at.column, "expected a single monomial, got '" + std::string(text) + "'");
  return p.terms().front().first;
}

}  // namespace orbitred
