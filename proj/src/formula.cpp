#include "sgat/formula.hpp"

#include "sgat/errors.hpp"
#include "sgat/text.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sgat {

bool BoolRelation::accepts(std::uint32_t tuple) const {
  return std::binary_search(tuples.begin(), tuples.end(), tuple);
}

std::string BoolRelation::tuple_string(std::uint32_t tuple, int arity) {
  std::string s(arity, '0');
  for (int i = 0; i < arity; ++i)
    if (tuple >> i & 1u) s[i] = '1';
  return s;
}

int SFormula::find_relation(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return static_cast<int>(i);
  return -1;
}

int SFormula::find_variable(std::string_view name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

bool SFormula::satisfied(const RelClause& c, const std::vector<bool>& assignment) const {
  std::uint32_t tuple = 0;
  for (std::size_t i = 0; i < c.vars.size(); ++i)
    if (assignment[c.vars[i]]) tuple |= 1u << i;
  return relations[c.relation].accepts(tuple);
}

std::size_t SFormula::count_satisfied(const std::vector<bool>& assignment) const {
  std::size_t n = 0;
  for (const auto& c : clauses) n += satisfied(c, assignment) ? 1 : 0;
  return n;
}

const std::string& FormulaCell::variable_name(int v) const {
  if (v < static_cast<int>(interface.size())) return interface[v];
  return locals[v - interface.size()];
}

int FormulaCell::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < interface.size(); ++i)
    if (interface[i] == name) return static_cast<int>(i);
  for (std::size_t i = 0; i < locals.size(); ++i)
    if (locals[i] == name) return static_cast<int>(interface.size() + i);
  return -1;
}

int LFormula::find_cell(std::string_view name) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].name == name) return static_cast<int>(i);
  return -1;
}

std::size_t LFormula::size() const {
  std::size_t s = 0;
  for (const auto& c : cells) s += c.variable_count() * (c.clauses.size() + c.calls.size());
  return s;
}

int FPNClause::max_offset() const {
  int k = 0;
  for (const auto& lit : literals) k = std::max(k, lit.offset);
  return k;
}

int FPNFormula::find_variable(std::string_view name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

int FPNFormula::narrowness() const {
  int k = 0;
  for (const auto& c : clauses) k = std::max(k, c.max_offset());
  return k;
}

namespace {

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void check_identifier(const std::string& name, int line, int column) {
  if (!text::is_identifier(name))
    throw ParseError("invalid identifier '" + name + "'", line, column);
}

BoolRelation parse_relation(const text::Line& line) {
  // relation <R> arity <p> tuples <bits>,<bits>,...
  if (line.tokens.size() < 5 || line.tokens[2].text != "arity" || line.tokens[4].text != "tuples")
    throw ParseError("expected 'relation <R> arity <p> tuples <bitstring,...>'", line.number, 1);
  BoolRelation r;
  r.name = line.tokens[1].text;
  check_identifier(r.name, line.number, line.tokens[1].column);
  if (!parse_int(line.tokens[3].text, r.arity) || r.arity < 1 ||
      r.arity > BoolRelation::kMaxArity)
    throw ParseError("invalid arity", line.number, line.tokens[3].column);
  std::string list;
  for (std::size_t i = 5; i < line.tokens.size(); ++i) list += line.tokens[i].text;
  if (!list.empty()) {
    for (const auto& bits : text::split(list, ',')) {
      if (static_cast<int>(bits.size()) != r.arity)
        throw ParseError("tuple '" + bits + "' does not match arity " + std::to_string(r.arity),
                         line.number, line.tokens[4].column);
      std::uint32_t t = 0;
      for (int i = 0; i < r.arity; ++i) {
        if (bits[i] == '1')
          t |= 1u << i;
        else if (bits[i] != '0')
          throw ParseError("invalid tuple '" + bits + "'", line.number, line.tokens[4].column);
      }
      r.tuples.push_back(t);
    }
  }
  std::sort(r.tuples.begin(), r.tuples.end());
  r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
  return r;
}

struct Application {
  std::string head;
  std::vector<std::string> args;
};

// Parses `Name(a,b,c)` from the rest of a line.
Application parse_application(const text::Line& line, std::size_t first) {
  std::string s;
  for (std::size_t i = first; i < line.tokens.size(); ++i) s += line.tokens[i].text;
  int column = first < line.tokens.size() ? line.tokens[first].column : 1;
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw ParseError("expected '<name>(<args>)'", line.number, column);
  Application app;
  app.head = s.substr(0, open);
  check_identifier(app.head, line.number, column);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (!inner.empty()) app.args = text::split(inner, ',');
  for (const auto& a : app.args) check_identifier(a, line.number, column);
  return app;
}

void check_distinct(const std::vector<std::string>& names, int line) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second)
      throw ParseError("variable '" + n + "' repeated in one clause", line);
}

RelClause make_clause(const std::vector<BoolRelation>& relations, const Application& app,
                      int line, const auto& resolve) {
  auto it = std::find_if(relations.begin(), relations.end(),
                         [&](const BoolRelation& r) { return r.name == app.head; });
  if (it == relations.end()) throw ParseError("unknown relation '" + app.head + "'", line);
  if (static_cast<int>(app.args.size()) != it->arity)
    throw ParseError("arity mismatch: relation " + app.head + " has arity " +
                         std::to_string(it->arity) + ", clause has " +
                         std::to_string(app.args.size()) + " variable(s)",
                     line);
  check_distinct(app.args, line);
  RelClause c;
  c.relation = static_cast<int>(it - relations.begin());
  for (const auto& a : app.args) c.vars.push_back(resolve(a));
  return c;
}

std::string relation_line(const BoolRelation& r) {
  std::vector<std::string> tuples;
  for (auto t : r.tuples) tuples.push_back(BoolRelation::tuple_string(t, r.arity));
  return "relation " + r.name + " arity " + std::to_string(r.arity) + " tuples " +
         text::join(tuples, ",");
}

std::string application(const std::string& head, const std::vector<std::string>& args) {
  return head + "(" + text::join(args, ",") + ")";
}

}  // namespace

SFormula parse_sformula(std::string_view document) {
  SFormula f;
  auto lines = text::tokenize(document);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.tokens[0].text;
    if (kw == "sformula" && i == 0) continue;
    if (kw == "relation") {
      auto r = parse_relation(line);
      if (f.find_relation(r.name) >= 0)
        throw ParseError("duplicate relation '" + r.name + "'", line.number);
      f.relations.push_back(std::move(r));
    } else if (kw == "var") {
      for (std::size_t j = 1; j < line.tokens.size(); ++j) {
        check_identifier(line.tokens[j].text, line.number, line.tokens[j].column);
        if (f.find_variable(line.tokens[j].text) < 0) f.variables.push_back(line.tokens[j].text);
      }
    } else if (kw == "clause") {
      auto app = parse_application(line, 1);
      f.clauses.push_back(make_clause(f.relations, app, line.number, [&](const std::string& v) {
        int idx = f.find_variable(v);
        if (idx >= 0) return idx;
        f.variables.push_back(v);
        return static_cast<int>(f.variables.size()) - 1;
      }));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number, line.tokens[0].column);
    }
  }
  return f;
}

std::string serialize(const SFormula& f) {
  std::ostringstream out;
  out << "sformula\n";
  for (const auto& r : f.relations) out << relation_line(r) << '\n';
  if (!f.variables.empty()) out << "var " << text::join(f.variables, " ") << '\n';
  for (const auto& c : f.clauses) {
    std::vector<std::string> args;
    for (int v : c.vars) args.push_back(f.variables[v]);
    out << "clause " << application(f.relations[c.relation].name, args) << '\n';
  }
  return out.str();
}

LFormula parse_lformula(std::string_view document) {
  LFormula f;
  auto lines = text::tokenize(document);
  std::set<std::string> all_cells;
  for (const auto& line : lines)
    if (line.tokens[0].text == "fcell" && line.tokens.size() >= 2)
      all_cells.insert(line.tokens[1].text);

  auto current = [&](const text::Line& line) -> FormulaCell& {
    if (f.cells.empty())
      throw ParseError("'" + line.tokens[0].text + "' outside of an fcell", line.number, 1);
    return f.cells.back();
  };
  auto resolve_in = [](FormulaCell& cell) {
    return [&cell](const std::string& v) {
      int idx = cell.find_variable(v);
      if (idx >= 0) return idx;
      cell.locals.push_back(v);
      return static_cast<int>(cell.variable_count()) - 1;
    };
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.tokens[0].text;
    if (kw == "lformula" && i == 0) continue;
    if (kw == "relation") {
      if (!f.cells.empty())
        throw ParseError("relations must precede the first fcell", line.number, 1);
      auto r = parse_relation(line);
      for (const auto& other : f.relations)
        if (other.name == r.name)
          throw ParseError("duplicate relation '" + r.name + "'", line.number);
      f.relations.push_back(std::move(r));
    } else if (kw == "fcell") {
      if (line.tokens.size() < 2) throw ParseError("expected 'fcell <F> [in <x,...>]'", line.number, 1);
      FormulaCell cell;
      cell.name = line.tokens[1].text;
      check_identifier(cell.name, line.number, line.tokens[1].column);
      if (f.find_cell(cell.name) >= 0)
        throw ParseError("duplicate fcell '" + cell.name + "'", line.number, line.tokens[1].column);
      if (line.tokens.size() > 2) {
        if (line.tokens[2].text != "in")
          throw ParseError("expected 'in'", line.number, line.tokens[2].column);
        std::string list;
        for (std::size_t j = 3; j < line.tokens.size(); ++j) list += line.tokens[j].text;
        if (!list.empty()) cell.interface = text::split(list, ',');
        for (const auto& v : cell.interface) check_identifier(v, line.number, line.tokens[2].column);
        check_distinct(cell.interface, line.number);
      }
      f.cells.push_back(std::move(cell));
    } else if (kw == "local") {
      FormulaCell& cell = current(line);
      std::string list;
      for (std::size_t j = 1; j < line.tokens.size(); ++j) list += line.tokens[j].text;
      for (const auto& v : list.empty() ? std::vector<std::string>{} : text::split(list, ',')) {
        check_identifier(v, line.number, 1);
        if (cell.find_variable(v) >= 0)
          throw ParseError("variable '" + v + "' declared twice", line.number);
        cell.locals.push_back(v);
      }
    } else if (kw == "clause") {
      FormulaCell& cell = current(line);
      auto app = parse_application(line, 1);
      cell.clauses.push_back(make_clause(f.relations, app, line.number, resolve_in(cell)));
    } else if (kw == "call") {
      FormulaCell& cell = current(line);
      auto app = parse_application(line, 1);
      int callee = f.find_cell(app.head);
      if (callee < 0 || callee == static_cast<int>(f.cells.size()) - 1) {
        if (all_cells.count(app.head))
          throw ParseError("forward reference to fcell '" + app.head + "'", line.number);
        throw ParseError("undefined fcell '" + app.head + "'", line.number);
      }
      if (app.args.size() != f.cells[callee].interface.size())
        throw ParseError("arity mismatch: fcell " + app.head + " takes " +
                             std::to_string(f.cells[callee].interface.size()) + " argument(s)",
                         line.number);
      check_distinct(app.args, line.number);
      FormulaCall call{callee, {}};
      auto resolve = resolve_in(cell);
      for (const auto& a : app.args) call.args.push_back(resolve(a));
      cell.calls.push_back(std::move(call));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number, line.tokens[0].column);
    }
  }
  if (f.cells.empty()) throw ParseError("no fcells", lines.empty() ? 1 : lines.back().number);
  return f;
}

std::string serialize(const LFormula& f) {
  std::ostringstream out;
  out << "lformula\n";
  for (const auto& r : f.relations) out << relation_line(r) << '\n';
  for (const auto& cell : f.cells) {
    out << "fcell " << cell.name;
    if (!cell.interface.empty()) out << " in " << text::join(cell.interface, ",");
    out << '\n';
    if (!cell.locals.empty()) out << "  local " << text::join(cell.locals, ",") << '\n';
    for (const auto& c : cell.clauses) {
      std::vector<std::string> args;
      for (int v : c.vars) args.push_back(cell.variable_name(v));
      out << "  clause " << application(f.relations[c.relation].name, args) << '\n';
    }
    for (const auto& call : cell.calls) {
      std::vector<std::string> args;
      for (int v : call.args) args.push_back(cell.variable_name(v));
      out << "  call " << application(f.cells[call.callee].name, args) << '\n';
    }
  }
  return out.str();
}

std::vector<std::string> validate_lformula(const LFormula& f) {
  std::vector<std::string> problems;
  if (f.cells.empty()) problems.push_back("no fcells");
  for (std::size_t ci = 0; ci < f.cells.size(); ++ci) {
    const auto& cell = f.cells[ci];
    const int nvars = static_cast<int>(cell.variable_count());
    auto vars_ok = [&](const std::vector<int>& vs) {
      std::set<int> seen;
      for (int v : vs)
        if (v < 0 || v >= nvars || !seen.insert(v).second) return false;
      return true;
    };
    for (const auto& c : cell.clauses) {
      if (c.relation < 0 || c.relation >= static_cast<int>(f.relations.size())) {
        problems.push_back("fcell " + cell.name + ": unknown relation");
        continue;
      }
      if (static_cast<int>(c.vars.size()) != f.relations[c.relation].arity)
        problems.push_back("fcell " + cell.name + ": arity mismatch");
      if (!vars_ok(c.vars)) problems.push_back("fcell " + cell.name + ": clause variables not distinct");
    }
    for (const auto& call : cell.calls) {
      if (call.callee < 0 || call.callee >= static_cast<int>(ci)) {
        problems.push_back("fcell " + cell.name + ": forward reference");
        continue;
      }
      if (call.args.size() != f.cells[call.callee].interface.size())
        problems.push_back("fcell " + cell.name + ": call arity mismatch");
      if (!vars_ok(call.args)) problems.push_back("fcell " + cell.name + ": call arguments not distinct");
    }
  }
  if (!f.cells.empty() && !f.cells.back().interface.empty())
    problems.push_back("top fcell " + f.cells.back().name + " has interface variables");
  return problems;
}

FPNFormula parse_fpn_formula(std::string_view document) {
  auto lines = text::tokenize(document);
  if (lines.empty()) throw ParseError("empty document", 1);
  const auto& head = lines.front();
  if (head.tokens.size() != 2 || head.tokens[0].text != "fpncnf" ||
      head.tokens[1].text.rfind("m=", 0) != 0)
    throw ParseError("expected 'fpncnf m=<int>' header", head.number, 1);
  FPNFormula f;
  if (!parse_natural(std::string_view(head.tokens[1].text).substr(2), f.m))
    throw ParseError("invalid bound m", head.number, head.tokens[1].column);

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& kw = line.tokens[0].text;
    if (kw == "var") {
      for (std::size_t j = 1; j < line.tokens.size(); ++j) {
        check_identifier(line.tokens[j].text, line.number, line.tokens[j].column);
        if (f.find_variable(line.tokens[j].text) >= 0)
          throw ParseError("duplicate variable '" + line.tokens[j].text + "'", line.number,
                           line.tokens[j].column);
        f.variables.push_back(line.tokens[j].text);
      }
    } else if (kw == "clause") {
      FPNClause clause;
      for (std::size_t j = 1; j < line.tokens.size(); ++j) {
        const auto& tok = line.tokens[j];
        std::string_view s = tok.text;
        Literal lit;
        if (!s.empty() && s[0] == '!') {
          lit.negated = true;
          s.remove_prefix(1);
        }
        auto at = s.find('@');
        if (at == std::string_view::npos)
          throw ParseError("expected literal '<var>@<offset>'", line.number, tok.column);
        std::string name(s.substr(0, at));
        check_identifier(name, line.number, tok.column);
        if (!parse_int(s.substr(at + 1), lit.offset))
          throw ParseError("invalid offset in '" + tok.text + "'", line.number, tok.column);
        if (lit.offset < 0) throw ParseError("negative offset", line.number, tok.column);
        lit.var = f.find_variable(name);
        if (lit.var < 0) {
          f.variables.push_back(name);
          lit.var = static_cast<int>(f.variables.size()) - 1;
        }
        for (const auto& other : clause.literals)
          if (other.var == lit.var && other.offset == lit.offset)
            throw ParseError("variable '" + tok.text + "' repeated in one clause", line.number,
                             tok.column);
        clause.literals.push_back(lit);
      }
      if (clause.literals.empty()) throw ParseError("empty clause", line.number, 1);
      f.clauses.push_back(std::move(clause));
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number, line.tokens[0].column);
    }
  }
  return f;
}

std::string serialize(const FPNFormula& f) {
  std::ostringstream out;
  out << "fpncnf m=" << f.m << '\n';
  if (!f.variables.empty()) out << "var " << text::join(f.variables, " ") << '\n';
  for (const auto& c : f.clauses) {
    out << "clause";
    for (const auto& lit : c.literals)
      out << ' ' << (lit.negated ? "!" : "") << f.variables[lit.var] << '@' << lit.offset;
    out << '\n';
  }
  return out.str();
}

}  // namespace sgat
