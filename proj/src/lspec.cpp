#include "sgat/lspec.hpp"

#include "sgat/errors.hpp"
#include "sgat/text.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sgat {

std::optional<Terminal> Nonterminal::bound(int k) const {
  for (const auto& b : bindings)
    if (b.pin == k) return b.terminal;
  return std::nullopt;
}

int Cell::find_vertex(std::string_view n) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == n) return static_cast<int>(i);
  return -1;
}

int Cell::find_nonterminal(std::string_view n) const {
  for (std::size_t i = 0; i < nonterminals.size(); ++i)
    if (nonterminals[i].name == n) return static_cast<int>(i);
  return -1;
}

std::size_t Cell::edge_count() const {
  std::size_t m = edges.size();
  for (const auto& nt : nonterminals) m += nt.bindings.size();
  return m;
}

std::string Cell::terminal_name(const Terminal& t) const {
  switch (t.kind) {
    case Terminal::Kind::Pin:
      return "pin:" + std::to_string(t.index);
    case Terminal::Kind::Vertex:
      if (t.index >= 0 && t.index < static_cast<int>(vertices.size())) return vertices[t.index];
      return "<vertex " + std::to_string(t.index) + ">";
    case Terminal::Kind::Nonterminal:
      if (t.index >= 0 && t.index < static_cast<int>(nonterminals.size()))
        return nonterminals[t.index].name;
      return "<nonterminal " + std::to_string(t.index) + ">";
  }
  return {};
}

std::size_t LSpec::vertex_number() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.vertex_count();
  return n;
}

std::size_t LSpec::edge_number() const {
  std::size_t m = 0;
  for (const auto& c : cells) m += c.edge_count();
  return m;
}

int LSpec::find_cell(std::string_view n) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].name == n) return static_cast<int>(i);
  return -1;
}

VertexAddress VertexAddress::parse(std::string_view s) {
  auto parts = text::split(s, '/');
  VertexAddress addr;
  addr.vertex = parts.back();
  parts.pop_back();
  addr.path = std::move(parts);
  return addr;
}

std::string VertexAddress::str() const {
  std::string out;
  for (const auto& p : path) {
    out += p;
    out += '/';
  }
  return out + vertex;
}

bool ValidationReport::has(std::string_view kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::str() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.kind + " at " + v.location;
    if (!v.detail.empty()) out += ": " + v.detail;
    out += '\n';
  }
  return out;
}

namespace {

bool is_path_identifier(std::string_view s) {
  auto parts = text::split(s, '/');
  return std::all_of(parts.begin(), parts.end(),
                     [](const std::string& p) { return text::is_identifier(p); });
}

bool parse_int(const std::string& s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

class LSpecParser {
public:
  explicit LSpecParser(std::string_view doc) : lines_(text::tokenize(doc)) {}

  LSpec run() {
    if (lines_.empty()) throw ParseError("no cells", 1);
    const auto& head = lines_.front();
    if (head.tokens[0].text != "lspec" && head.tokens[0].text != "solution")
      throw ParseError("expected 'lspec <name>' header", head.number, head.tokens[0].column);
    expect_arity(head, 2);
    spec_.name = head.tokens[1].text;
    spec_.solution = head.tokens[0].text == "solution";

    // Cell names are collected up front so that a reference to a later cell is
    // reported as a forward reference rather than as an unknown name.
    for (const auto& line : lines_)
      if (line.tokens[0].text == "cell" && line.tokens.size() >= 2)
        all_cells_.insert(line.tokens[1].text);

    for (std::size_t i = 1; i < lines_.size(); ++i) directive(lines_[i]);
    if (spec_.cells.empty()) throw ParseError("no cells", head.number);
    return std::move(spec_);
  }

private:
  void expect_arity(const text::Line& line, std::size_t n) {
    if (line.tokens.size() != n)
      throw ParseError("'" + line.tokens[0].text + "' expects " + std::to_string(n - 1) +
                           " argument(s)",
                       line.number, line.tokens[0].column);
  }

  Cell& current(const text::Line& line) {
    if (spec_.cells.empty())
      throw ParseError("'" + line.tokens[0].text + "' outside of a cell", line.number,
                       line.tokens[0].column);
    return spec_.cells.back();
  }

  void check_name(const text::Token& tok, int line, bool allow_path) {
    bool ok = allow_path ? is_path_identifier(tok.text) : text::is_identifier(tok.text);
    if (!ok) throw ParseError("invalid identifier '" + tok.text + "'", line, tok.column);
  }

  void directive(const text::Line& line) {
    const std::string& kw = line.tokens[0].text;
    if (kw == "cell") {
      if (line.tokens.size() != 4 || line.tokens[2].text != "pins")
        throw ParseError("expected 'cell <name> pins <p>'", line.number, line.tokens[0].column);
      check_name(line.tokens[1], line.number, false);
      if (spec_.find_cell(line.tokens[1].text) >= 0)
        throw ParseError("duplicate cell '" + line.tokens[1].text + "'", line.number,
                         line.tokens[1].column);
      Cell c;
      c.name = line.tokens[1].text;
      if (!parse_int(line.tokens[3].text, c.pins) || c.pins < 0)
        throw ParseError("invalid pin count", line.number, line.tokens[3].column);
      spec_.cells.push_back(std::move(c));
    } else if (kw == "vertex") {
      expect_arity(line, 2);
      Cell& c = current(line);
      check_name(line.tokens[1], line.number, spec_.solution);
      if (c.find_vertex(line.tokens[1].text) >= 0 || c.find_nonterminal(line.tokens[1].text) >= 0)
        throw ParseError("duplicate name '" + line.tokens[1].text + "'", line.number,
                         line.tokens[1].column);
      c.vertices.push_back(line.tokens[1].text);
    } else if (kw == "edge") {
      expect_arity(line, 3);
      Cell& c = current(line);
      Edge e{terminal(c, line.tokens[1], line.number), terminal(c, line.tokens[2], line.number)};
      for (const auto& other : c.edges) {
        if (other == e || (other.a == e.b && other.b == e.a))
          throw ParseError("multi-edge " + c.terminal_name(e.a) + " " + c.terminal_name(e.b),
                           line.number, line.tokens[0].column);
      }
      c.edges.push_back(e);
    } else if (kw == "nonterm") {
      if (line.tokens.size() != 4 || line.tokens[2].text != "type")
        throw ParseError("expected 'nonterm <name> type <cell>'", line.number,
                         line.tokens[0].column);
      Cell& c = current(line);
      check_name(line.tokens[1], line.number, spec_.solution);
      if (c.find_vertex(line.tokens[1].text) >= 0 || c.find_nonterminal(line.tokens[1].text) >= 0)
        throw ParseError("duplicate name '" + line.tokens[1].text + "'", line.number,
                         line.tokens[1].column);
      const auto& type_tok = line.tokens[3];
      int type = spec_.find_cell(type_tok.text);
      if (type < 0 || type == static_cast<int>(spec_.cells.size()) - 1) {
        if (all_cells_.count(type_tok.text))
          throw ParseError("forward reference to cell '" + type_tok.text + "'", line.number,
                           type_tok.column);
        throw ParseError("undefined cell '" + type_tok.text + "'", line.number, type_tok.column);
      }
      c.nonterminals.push_back({line.tokens[1].text, type, {}});
    } else if (kw == "bind") {
      expect_arity(line, 4);
      Cell& c = current(line);
      int nt = c.find_nonterminal(line.tokens[1].text);
      if (nt < 0)
        throw ParseError("unknown nonterminal '" + line.tokens[1].text + "'", line.number,
                         line.tokens[1].column);
      int k = 0;
      if (!parse_int(line.tokens[2].text, k) || k < 1)
        throw ParseError("invalid pin number", line.number, line.tokens[2].column);
      c.nonterminals[nt].bindings.push_back({k, terminal(c, line.tokens[3], line.number)});
    } else {
      throw ParseError("unknown directive '" + kw + "'", line.number, line.tokens[0].column);
    }
  }

  Terminal terminal(const Cell& c, const text::Token& tok, int line) {
    if (tok.text.rfind("pin:", 0) == 0) {
      int k = 0;
      if (!parse_int(tok.text.substr(4), k) || k < 1 || k > c.pins)
        throw ParseError("pin out of range '" + tok.text + "'", line, tok.column);
      return Terminal::pin(k);
    }
    if (int v = c.find_vertex(tok.text); v >= 0) return Terminal::vertex(v);
    if (int nt = c.find_nonterminal(tok.text); nt >= 0) return {Terminal::Kind::Nonterminal, nt};
    throw ParseError("unknown terminal '" + tok.text + "'", line, tok.column);
  }

  std::vector<text::Line> lines_;
  std::set<std::string> all_cells_;
  LSpec spec_;
};

}  // namespace

LSpec parse_lspec(std::string_view document) { return LSpecParser(document).run(); }

std::string serialize(const LSpec& spec) {
  std::ostringstream out;
  out << (spec.solution ? "solution " : "lspec ") << spec.name << '\n';
  for (const auto& c : spec.cells) {
    out << "cell " << c.name << " pins " << c.pins << '\n';
    for (const auto& v : c.vertices) out << "  vertex " << v << '\n';
    for (const auto& nt : c.nonterminals) {
      out << "  nonterm " << nt.name << " type " << spec.cells.at(nt.type).name << '\n';
      for (const auto& b : nt.bindings)
        out << "  bind " << nt.name << ' ' << b.pin << ' ' << c.terminal_name(b.terminal) << '\n';
    }
    for (const auto& e : c.edges)
      out << "  edge " << c.terminal_name(e.a) << ' ' << c.terminal_name(e.b) << '\n';
  }
  return out.str();
}

ValidationReport validate_lspec(const LSpec& spec) {
  ValidationReport report;
  auto add = [&](std::string kind, std::string location, std::string detail = {}) {
    report.violations.push_back({std::move(kind), std::move(location), std::move(detail)});
  };
  if (spec.cells.empty()) {
    add("no cells", "specification");
    return report;
  }

  auto name_ok = [&](const std::string& s) {
    return spec.solution ? is_path_identifier(s) : text::is_identifier(s);
  };

  std::set<std::string> cell_names;
  std::vector<bool> called(spec.cells.size(), false);
  for (std::size_t ci = 0; ci < spec.cells.size(); ++ci) {
    const Cell& c = spec.cells[ci];
    const std::string where = "cell " + c.name;
    if (!text::is_identifier(c.name)) add("invalid identifier", where, c.name);
    if (!cell_names.insert(c.name).second) add("duplicate name", where, "cell name repeated");
    if (c.pins < 0) add("invalid pin count", where);

    std::set<std::string> local_names;
    for (const auto& v : c.vertices) {
      if (!name_ok(v)) add("invalid identifier", where, v);
      if (!local_names.insert(v).second) add("duplicate name", where, v);
    }
    for (const auto& nt : c.nonterminals) {
      if (!name_ok(nt.name)) add("invalid identifier", where, nt.name);
      if (!local_names.insert(nt.name).second) add("duplicate name", where, nt.name);
    }

    auto terminal_ok = [&](const Terminal& t) {
      switch (t.kind) {
        case Terminal::Kind::Pin:
          return t.index >= 1 && t.index <= c.pins;
        case Terminal::Kind::Vertex:
          return t.index >= 0 && t.index < static_cast<int>(c.vertices.size());
        case Terminal::Kind::Nonterminal:
          return false;
      }
      return false;
    };

    for (const auto& nt : c.nonterminals) {
      const std::string at = where + ", nonterminal " + nt.name;
      if (nt.type < 0 || nt.type >= static_cast<int>(spec.cells.size())) {
        add("unknown cell type", at, std::to_string(nt.type));
        continue;
      }
      if (nt.type >= static_cast<int>(ci)) {
        add("forward reference", at, "type " + spec.cells[nt.type].name);
        continue;
      }
      called[nt.type] = true;
      const int p = spec.cells[nt.type].pins;
      std::set<int> pins_seen;
      std::vector<Terminal> targets;
      bool degree_ok = static_cast<int>(nt.bindings.size()) == p;
      for (const auto& b : nt.bindings) {
        if (b.pin < 1 || b.pin > p || !pins_seen.insert(b.pin).second) degree_ok = false;
        if (b.terminal.kind == Terminal::Kind::Nonterminal)
          add("non-terminal neighbor", at, "pin " + std::to_string(b.pin));
        else if (!terminal_ok(b.terminal))
          add("invalid terminal", at, "pin " + std::to_string(b.pin));
        if (std::find(targets.begin(), targets.end(), b.terminal) != targets.end())
          add("duplicate binding terminal", at, c.terminal_name(b.terminal));
        targets.push_back(b.terminal);
      }
      if (!degree_ok)
        add("pin-degree mismatch", at,
            std::to_string(nt.bindings.size()) + " binding(s) for " + std::to_string(p) +
                " pin(s)");
    }

    for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
      const Edge& e = c.edges[ei];
      const std::string at =
          where + ", edge " + c.terminal_name(e.a) + " " + c.terminal_name(e.b);
      bool endpoints_ok = true;
      for (const Terminal* t : {&e.a, &e.b}) {
        if (t->kind == Terminal::Kind::Nonterminal) {
          add("edge to nonterminal", at);
          endpoints_ok = false;
        } else if (!terminal_ok(*t)) {
          add("invalid terminal", at);
          endpoints_ok = false;
        }
      }
      if (!endpoints_ok) continue;
      if (e.a == e.b) add("self-loop", at);
      if (e.a.kind == Terminal::Kind::Pin && e.b.kind == Terminal::Kind::Pin)
        add("pin-pin edge", at);
      for (std::size_t ej = 0; ej < ei; ++ej) {
        const Edge& f = c.edges[ej];
        if (f == e || (f.a == e.b && f.b == e.a)) add("duplicate edge", at);
      }
    }
  }

  if (spec.cells.back().pins != 0)
    add("top cell has pins", "cell " + spec.cells.back().name,
        std::to_string(spec.cells.back().pins) + " pin(s)");
  for (std::size_t ci = 0; ci + 1 < spec.cells.size(); ++ci)
    if (!called[ci]) add("redundant cell", "cell " + spec.cells[ci].name, "never called");
  return report;
}

void require_valid(const LSpec& spec) {
  auto report = validate_lspec(spec);
  if (!report.ok()) throw PreconditionError("invalid L-specification:\n" + report.str());
}

}  // namespace sgat
