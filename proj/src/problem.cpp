#include "orbitred/problem.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace orbitred {

ProblemError::ProblemError(std::string section, unsigned line, unsigned column, const std::string& message)
    : ParseError(line, column, message), section_(std::move(section)) {}

namespace {

struct Item {
  std::string text;
  unsigned line = 0, column = 0;
  bool quoted = false;
};

struct Entry {
  std::string key;
  std::vector<Item> items;
  unsigned line = 0, column = 0;
};

struct Section {
  std::string name;
  unsigned line = 0;
  std::vector<Entry> entries;
};

const std::vector<std::string> kSections = {"space", "group", "invariants", "parameters", "potential", "options"};

[[noreturn]] void fail(const std::string& section, unsigned line, unsigned column, const std::string& msg) {
  throw ProblemError(section, line, column, msg);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits "a, "b c", d" into items, tracking columns (1-based).
std::vector<Item> split_items(const std::string& section, std::string_view v, unsigned line, unsigned col0) {
  std::vector<Item> out;
  std::size_t i = 0;
  while (true) {
    while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    if (i >= v.size()) break;
    Item it;
    it.line = line;
    if (v[i] == '"') {
      std::size_t close = v.find('"', i + 1);
      if (close == std::string_view::npos) fail(section, line, col0 + static_cast<unsigned>(i), "unterminated string");
      it.text = std::string(v.substr(i + 1, close - i - 1));
      it.column = col0 + static_cast<unsigned>(i) + 1;
      it.quoted = true;
      i = close + 1;
      while (i < v.size() && std::isspace(static_cast<unsigned char>(v[i]))) ++i;
    } else {
      std::size_t end = v.find(',', i);
      if (end == std::string_view::npos) end = v.size();
      it.text = trim(v.substr(i, end - i));
      it.column = col0 + static_cast<unsigned>(i);
      i = end;
    }
    out.push_back(std::move(it));
    if (i >= v.size()) break;
    if (v[i] != ',') fail(section, line, col0 + static_cast<unsigned>(i), "expected ',' between list items");
    ++i;
    std::size_t j = i;
    while (j < v.size() && std::isspace(static_cast<unsigned char>(v[j]))) ++j;
    if (j >= v.size()) fail(section, line, col0 + static_cast<unsigned>(i), "trailing ','");
  }
  return out;
}

std::size_t find_comment(std::string_view line) {
  bool in_quote = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (line[i] == '#' && !in_quote) return i;
  }
  return std::string_view::npos;
}

struct Raw {
  std::optional<Entry> version;
  std::map<std::string, Section> sections;
};

Raw lex(std::string_view text) {
  Raw raw;
  Section* current = nullptr;
  unsigned lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto c = find_comment(line); c != std::string_view::npos) line = line.substr(0, c);
    std::string t = trim(line);
    if (t.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    std::string sect = current ? current->name : "file";
    if (t.front() == '[') {
      if (t.back() != ']') fail(sect, lineno, 1, "malformed section header");
      std::string name = trim(std::string_view(t).substr(1, t.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        fail(name.empty() ? "file" : name, lineno, 1, "unknown section '" + name + "'");
      if (raw.sections.count(name)) fail(name, lineno, 1, "section appears twice");
      current = &raw.sections[name];
      current->name = name;
      current->line = lineno;
    } else {
      std::size_t eq = line.find('=');
      std::size_t first = line.find_first_not_of(" \t");
      if (eq == std::string_view::npos) fail(sect, lineno, static_cast<unsigned>(first) + 1, "expected 'key = value'");
      Entry e;
      e.key = trim(line.substr(0, eq));
      e.line = lineno;
      e.column = static_cast<unsigned>(first) + 1;
      if (e.key.empty()) fail(sect, lineno, e.column, "missing key");
      e.items = split_items(sect, line.substr(eq + 1), lineno, static_cast<unsigned>(eq) + 2);
      if (e.items.empty()) fail(sect, lineno, static_cast<unsigned>(eq) + 2, "missing value for '" + e.key + "'");
      if (!current) {
        if (e.key != "format_version") fail("file", lineno, e.column, "key '" + e.key + "' outside any section");
        if (raw.version) fail("file", lineno, e.column, "format_version given twice");
        raw.version = e;
      } else {
        current->entries.push_back(std::move(e));
      }
    }
    if (nl == text.size()) break;
  }
  return raw;
}

const Item& single(const std::string& section, const Entry& e) {
  if (e.items.size() != 1) fail(section, e.line, e.column, "'" + e.key + "' takes a single value");
  return e.items.front();
}

std::uint64_t parse_unsigned(const std::string& section, const Item& it, const std::string& what) {
  const std::string& s = it.text;
  if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(section, it.line, it.column, what + " must be a non-negative integer");
  return std::stoull(s);
}

std::vector<std::string> names_of(const std::string& section, const Entry& e) {
  std::vector<std::string> out;
  for (const auto& it : e.items) {
    bool ok = !it.text.empty() && (std::isalpha(static_cast<unsigned char>(it.text[0])) || it.text[0] == '_') &&
              std::all_of(it.text.begin(), it.text.end(),
                          [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    if (!ok) fail(section, it.line, it.column, "invalid name '" + it.text + "'");
    out.push_back(it.text);
  }
  return out;
}

// Rethrows expression errors with the section attached.
template <class F>
auto in_section(const std::string& section, F&& fn) {
  try {
    return fn();
  } catch (const ProblemError&) {
    throw;
  } catch (const ParseError& e) {
    throw ProblemError(section, e.line(), e.column(), e.detail());
  }
}

SourcePos pos_of(const Item& it) { return {it.line, it.column}; }

Matrix<Rational> parse_matrix(const Item& it, std::size_t n) {
  std::vector<std::vector<Rational>> rows;
  std::stringstream rows_in(it.text);
  std::string row;
  while (std::getline(rows_in, row, ';')) {
    std::stringstream cells(row);
    std::vector<Rational> r;
    std::string cell;
    while (cells >> cell) {
      try {
        r.push_back(Rational::parse(cell));
      } catch (const Error&) {
        fail("group", it.line, it.column, "invalid matrix entry '" + cell + "'");
      }
    }
    rows.push_back(std::move(r));
  }
  if (rows.size() != n || std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.size() != n; }))
    fail("group", it.line, it.column, "generator must be a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  return Matrix<Rational>(std::move(rows));
}

std::vector<Monomial> monomial_list(const std::string& section, const Entry& e, const VarSetPtr& vars) {
  std::vector<Monomial> out;
  for (const auto& it : e.items)
    out.push_back(in_section(section, [&] { return parse_monomial(it.text, vars, pos_of(it)); }));
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Raw raw = lex(text);
  ProblemFile p;
  if (raw.version) {
    auto v = parse_unsigned("file", single("file", *raw.version), "format_version");
    if (v != 1) fail("file", raw.version->line, raw.version->column, "unsupported format_version " + std::to_string(v));
  }
  auto section = [&](const std::string& name, bool required) -> const Section* {
    auto it = raw.sections.find(name);
    if (it == raw.sections.end()) {
      if (required) fail(name, 1, 1, "missing section [" + name + "]");
      return nullptr;
    }
    return &it->second;
  };

  // space
  const Section* s = section("space", true);
  for (const auto& e : s->entries) {
    if (e.key != "vars") fail("space", e.line, e.column, "unknown key '" + e.key + "'");
    if (!p.space.empty()) fail("space", e.line, e.column, "vars given twice");
    p.space = names_of("space", e);
  }
  if (p.space.empty()) fail("space", s->line, 1, "no variables declared");
  VarSetPtr x_vars;
  try {
    x_vars = make_varset(p.space);
  } catch (const InvalidArgument& err) {
    fail("space", s->entries.front().line, 1, err.what());
  }

  // group
  if (const Section* g = section("group", false)) {
    for (const auto& e : g->entries) {
      if (e.key != "generator") fail("group", e.line, e.column, "unknown key '" + e.key + "'");
      p.group.push_back(parse_matrix(single("group", e), p.space.size()));
    }
  }

  // invariants
  const Section* inv = section("invariants", true);
  std::vector<const Entry*> syz_entries;
  std::vector<const Entry*> inv_entries;
  for (const auto& e : inv->entries) {
    if (e.key == "syzygy") {
      syz_entries.push_back(&e);
      continue;
    }
    p.invariant_names.push_back(names_of("invariants", Entry{e.key, {Item{e.key, e.line, e.column}}, e.line, e.column}).front());
    const Item& it = single("invariants", e);
    p.invariants.push_back(in_section("invariants", [&] { return parse_polynomial(it.text, x_vars, pos_of(it)); }));
    inv_entries.push_back(&e);
  }
  if (p.invariants.empty()) fail("invariants", inv->line, 1, "no invariants declared");
  VarSetPtr j_vars;
  {
    std::vector<std::string> all = p.space;
    all.insert(all.end(), p.invariant_names.begin(), p.invariant_names.end());
    try {
      make_varset(all);
      j_vars = make_varset(p.invariant_names);
    } catch (const InvalidArgument& err) {
      fail("invariants", inv->line, 1, err.what());
    }
  }
  for (const Entry* e : syz_entries) {
    const Item& it = single("invariants", *e);
    std::size_t arrow = it.text.find("->");
    if (arrow == std::string::npos) fail("invariants", it.line, it.column, "syzygy must read 'lhs -> rhs'");
    Item rhs_item{it.text.substr(arrow + 2), it.line, it.column + static_cast<unsigned>(arrow) + 2, true};
    SyzygyRule rule{in_section("invariants", [&] { return parse_monomial(it.text.substr(0, arrow), j_vars, pos_of(it)); }),
                    in_section("invariants", [&] { return parse_polynomial(rhs_item.text, j_vars, pos_of(rhs_item)); })};
    p.syzygies.push_back(std::move(rule));
  }
  std::shared_ptr<OrbitSpace> space_data;
  try {
    InvariantBasis full(x_vars, p.invariant_names, p.invariants, p.syzygies, p.group);
    if (!p.group.empty()) {
      auto check = check_invariance(full);
      if (!check.ok) {
        auto [gen, j] = *check.counterexample;
        fail("invariants", inv_entries[j]->line, inv_entries[j]->column,
             p.invariant_names[j] + " is not invariant under group generator " + std::to_string(gen + 1));
      }
    }
    space_data = std::make_shared<OrbitSpace>(std::move(full));
  } catch (const ProblemError&) {
    throw;
  } catch (const InvalidArgument& err) {
    unsigned line = inv->line;
    std::string msg = err.what();
    if (msg.find("syzygy") != std::string::npos && !syz_entries.empty()) line = syz_entries.front()->line;
    fail("invariants", line, 1, msg);
  }
  p.space_data = space_data;
  j_vars = space_data->j_vars();

  // options (needed before the potential: the general template depends on
  // the truncation order)
  if (const Section* o = section("options", false)) {
    std::optional<Strategy::Kind> kind;
    std::vector<Monomial> keep;
    std::map<unsigned, std::pair<std::optional<std::vector<Monomial>>, std::optional<std::vector<Monomial>>>> orders;
    std::set<std::string> seen;
    for (const auto& e : o->entries) {
      if (!seen.insert(e.key).second) fail("options", e.line, e.column, "'" + e.key + "' given twice");
      if (e.key == "mode") {
        const Item& it = single("options", e);
        if (it.text != "fixed" && it.text != "varying")
          fail("options", it.line, it.column, "mode must be 'fixed' or 'varying'");
        p.options.mode = parse_mode(it.text);
      } else if (e.key == "truncate") {
        const Item& it = single("options", e);
        auto n = parse_unsigned("options", it, "truncate");
        if (n == 0 || n > 64) fail("options", it.line, it.column, "truncate must lie in 1..64");
        p.options.truncate = static_cast<unsigned>(n);
      } else if (e.key == "strategy") {
        const Item& it = single("options", e);
        if (it.text == "max_eliminate")
          kind = Strategy::Kind::max_eliminate;
        else if (it.text == "keep_set")
          kind = Strategy::Kind::keep_set;
        else
          fail("options", it.line, it.column, "strategy must be 'max_eliminate' or 'keep_set'");
      } else if (e.key == "keep") {
        keep = monomial_list("options", e, j_vars);
        for (std::size_t i = 0; i < keep.size(); ++i)
          if (!space_data->basis().in_normal_form(keep[i]))
            fail("options", e.items[i].line, e.items[i].column, "kept monomial is not in normal form");
      } else if (e.key == "max_sets") {
        const Item& it = single("options", e);
        auto n = parse_unsigned("options", it, "max_sets");
        if (n == 0) fail("options", it.line, it.column, "max_sets must be positive");
        p.options.max_sets = static_cast<std::size_t>(n);
      } else if (e.key == "seed") {
        p.options.seed = parse_unsigned("options", single("options", e), "seed");
      } else if (e.key.rfind("targets.", 0) == 0 || e.key.rfind("generators.", 0) == 0) {
        bool targets = e.key[0] == 't';
        std::string deg = e.key.substr(targets ? 8 : 11);
        Item d{deg, e.line, e.column};
        auto w = parse_unsigned("options", d, "order degree");
        auto list = monomial_list("options", e, j_vars);
        (targets ? orders[static_cast<unsigned>(w)].first : orders[static_cast<unsigned>(w)].second) = list;
      } else {
        fail("options", e.line, e.column, "unknown key '" + e.key + "'");
      }
    }
    if (!kind) kind = keep.empty() ? Strategy::Kind::max_eliminate : Strategy::Kind::keep_set;
    if (*kind == Strategy::Kind::max_eliminate && !keep.empty())
      fail("options", o->line, 1, "keep requires strategy = keep_set");
    p.options.strategy.kind = *kind;
    p.options.strategy.keep = keep;
    for (auto& [w, pair] : orders) {
      if (!pair.first || !pair.second)
        fail("options", o->line, 1, "targets." + std::to_string(w) + " and generators." + std::to_string(w) + " go together");
      p.options.orders[w] = MonomialOrder{*pair.first, *pair.second};
    }
  }

  // parameters
  const Section* par = section("parameters", false);
  const Entry* critical_entry = nullptr;
  if (par) {
    for (const auto& e : par->entries) {
      if (e.key == "critical") {
        if (critical_entry) fail("parameters", e.line, e.column, "critical given twice");
        critical_entry = &e;
        p.critical = names_of("parameters", e);
      } else if (e.key == "generic") {
        if (!p.generic.empty()) fail("parameters", e.line, e.column, "generic given twice");
        p.generic = names_of("parameters", e);
      } else {
        fail("parameters", e.line, e.column, "unknown key '" + e.key + "'");
      }
    }
  }

  // potential
  const Section* pot = section("potential", true);
  const Entry* expr = nullptr;
  for (const auto& e : pot->entries) {
    if (e.key == "expr") {
      if (expr || p.general) fail("potential", e.line, e.column, "give exactly one of expr and general");
      expr = &e;
    } else if (e.key == "general") {
      const Item& it = single("potential", e);
      if (it.text != "true" && it.text != "false") fail("potential", it.line, it.column, "general must be true or false");
      if (expr) fail("potential", e.line, e.column, "give exactly one of expr and general");
      p.general = it.text == "true";
    } else {
      fail("potential", e.line, e.column, "unknown key '" + e.key + "'");
    }
  }
  if (!expr && !p.general) fail("potential", pot->line, 1, "missing expr");

  std::vector<std::string> param_names;
  if (p.general) {
    param_names = general_potential(space_data->basis(), p.truncation()).parameters->names();
    auto check_known = [&](const std::vector<std::string>& names, const Entry* e) {
      for (std::size_t i = 0; i < names.size(); ++i)
        if (std::find(param_names.begin(), param_names.end(), names[i]) == param_names.end())
          fail("parameters", e->items[i].line, e->items[i].column, "unknown parameter '" + names[i] + "'");
    };
    if (critical_entry) check_known(p.critical, critical_entry);
    if (par)
      for (const auto& e : par->entries)
        if (e.key == "generic") check_known(p.generic, &e);
  } else {
    param_names = p.critical;
    param_names.insert(param_names.end(), p.generic.begin(), p.generic.end());
  }
  {
    std::vector<std::string> all = p.space;
    all.insert(all.end(), p.invariant_names.begin(), p.invariant_names.end());
    std::set<std::string> distinct;
    for (const auto& n : all) distinct.insert(n);
    std::vector<std::string> params_unique;
    for (const auto& n : param_names) {
      if (distinct.count(n)) fail("parameters", par ? par->line : pot->line, 1, "name '" + n + "' is already used");
      if (std::find(params_unique.begin(), params_unique.end(), n) != params_unique.end()) {
        if (p.general) continue;
        fail("parameters", par ? par->line : pot->line, 1, "parameter '" + n + "' declared twice");
      }
      params_unique.push_back(n);
    }
    p.params = ParameterSpec(params_unique, p.critical);
  }
  if (expr) {
    const Item& it = single("potential", *expr);
    p.potential = in_section("potential", [&] { return parse_j_polynomial(it.text, j_vars, p.params.vars(), pos_of(it)); });
  }
  return p;
}

void set_truncation(ProblemFile& p, unsigned n) {
  if (n == 0 || n > 64) throw InvalidArgument("truncation order must lie in 1..64");
  p.options.truncate = n;
  if (!p.general) return;
  auto names = general_potential(p.basis(), n).parameters->names();
  for (const auto& c : p.critical)
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw InvalidArgument("critical parameter '" + c + "' does not occur at truncation " + std::to_string(n));
  p.params = ParameterSpec(names, p.critical);
}

JPolynomial ProblemFile::resolved_potential() const {
  if (general) {
    auto g = general_potential(basis(), truncation());
    return g.potential;
  }
  return potential;
}

unsigned ProblemFile::truncation() const {
  return options.truncate ? options.truncate : stability_order(basis());
}

ReduceOptions ProblemFile::reduce_options() const {
  ReduceOptions o;
  o.mode = options.mode;
  o.strategy = options.strategy;
  o.truncation = truncation();
  o.max_sets = options.max_sets;
  o.orders = options.orders;
  return o;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string quoted_monomials(const std::vector<Monomial>& ms, const VarSet& vars) {
  std::vector<std::string> parts;
  for (const auto& m : ms) parts.push_back("\"" + vars.format(m) + "\"");
  return join(parts);
}

}  // namespace

std::string print_problem(const ProblemFile& p) {
  std::ostringstream out;
  const VarSet& jv = *p.basis().j_vars();
  out << "format_version = " << p.format_version << "\n\n[space]\nvars = " << join(p.space) << "\n";
  if (!p.group.empty()) {
    out << "\n[group]\n";
    for (const auto& g : p.group) {
      std::vector<std::string> rows;
      for (std::size_t i = 0; i < g.rows(); ++i) {
        std::vector<std::string> cells;
        for (std::size_t j = 0; j < g.cols(); ++j) cells.push_back(g(i, j).str());
        rows.push_back(join(cells, " "));
      }
      out << "generator = \"" << join(rows, "; ") << "\"\n";
    }
  }
  out << "\n[invariants]\n";
  for (std::size_t i = 0; i < p.invariants.size(); ++i)
    out << p.invariant_names[i] << " = \"" << p.invariants[i].str() << "\"\n";
  for (const auto& r : p.syzygies) out << "syzygy = \"" << jv.format(r.lhs) << " -> " << r.rhs.str() << "\"\n";
  if (!p.critical.empty() || !p.generic.empty()) {
    out << "\n[parameters]\n";
    if (!p.critical.empty()) out << "critical = " << join(p.critical) << "\n";
    if (!p.generic.empty()) out << "generic = " << join(p.generic) << "\n";
  }
  out << "\n[potential]\n";
  if (p.general)
    out << "general = true\n";
  else
    out << "expr = \"" << p.potential.str() << "\"\n";
  const auto& o = p.options;
  out << "\n[options]\nmode = " << to_string(o.mode) << "\n";
  if (o.truncate) out << "truncate = " << o.truncate << "\n";
  out << "strategy = " << (o.strategy.kind == Strategy::Kind::keep_set ? "keep_set" : "max_eliminate") << "\n";
  if (!o.strategy.keep.empty()) out << "keep = " << quoted_monomials(o.strategy.keep, jv) << "\n";
  out << "max_sets = " << o.max_sets << "\n";
  if (o.seed) out << "seed = " << *o.seed << "\n";
  for (const auto& [w, ord] : o.orders) {
    out << "targets." << w << " = " << quoted_monomials(ord.targets, jv) << "\n";
    out << "generators." << w << " = " << quoted_monomials(ord.generators, jv) << "\n";
  }
  return out.str();
}

bool same_problem(const ProblemFile& a, const ProblemFile& b) {
  auto same_rules = [](const std::vector<SyzygyRule>& x, const std::vector<SyzygyRule>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!(x[i].lhs == y[i].lhs) || !(x[i].rhs == y[i].rhs)) return false;
    return true;
  };
  auto same_orders = [](const std::map<unsigned, MonomialOrder>& x, const std::map<unsigned, MonomialOrder>& y) {
    if (x.size() != y.size()) return false;
    for (const auto& [w, o] : x) {
      auto it = y.find(w);
      if (it == y.end() || o.targets != it->second.targets || o.generators != it->second.generators) return false;
    }
    return true;
  };
  const auto &oa = a.options, &ob = b.options;
  return a.format_version == b.format_version && a.space == b.space && a.group == b.group &&
         a.invariant_names == b.invariant_names && a.invariants == b.invariants && same_rules(a.syzygies, b.syzygies) &&
         a.critical == b.critical && a.generic == b.generic && a.general == b.general &&
         a.potential.str() == b.potential.str() && oa.mode == ob.mode && oa.truncate == ob.truncate &&
         oa.strategy.kind == ob.strategy.kind && oa.strategy.keep == ob.strategy.keep && oa.max_sets == ob.max_sets &&
         oa.seed == ob.seed && same_orders(oa.orders, ob.orders);
}

}  // namespace orbitred
