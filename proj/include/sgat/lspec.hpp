#pragma once

// Hierarchical (L-) specifications of graphs: a sequence of cells where each
// cell may call earlier cells through nonterminals whose neighbours are
// identified with the callee's numbered pins.

#include "sgat/bigint.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sgat {

struct Terminal {
  // `Nonterminal` never denotes a legal terminal. The parser produces it when a
  // document names a nonterminal where a terminal is required so that the
  // validator can report the violation with its location.
  enum class Kind { Pin, Vertex, Nonterminal };

  Kind kind = Kind::Vertex;
  int index = 0;  // pin number (1-based), explicit vertex index, or nonterminal index

  static Terminal pin(int k) { return {Kind::Pin, k}; }
  static Terminal vertex(int v) { return {Kind::Vertex, v}; }

  bool operator==(const Terminal&) const = default;
};

struct Binding {
  int pin = 0;  // 1-based pin of the callee
  Terminal terminal;

  bool operator==(const Binding&) const = default;
};

struct Nonterminal {
  std::string name;
  int type = 0;  // 0-based index of the callee cell
  std::vector<Binding> bindings;

  /// The terminal matched to pin `k` of the callee, if bound.
  std::optional<Terminal> bound(int k) const;

  bool operator==(const Nonterminal&) const = default;
};

struct Edge {
  Terminal a;
  Terminal b;

  bool operator==(const Edge&) const = default;
};

struct Cell {
  std::string name;
  int pins = 0;
  std::vector<std::string> vertices;  // explicit vertices
  std::vector<Nonterminal> nonterminals;
  std::vector<Edge> edges;

  int find_vertex(std::string_view name) const;       // -1 if absent
  int find_nonterminal(std::string_view name) const;  // -1 if absent

  /// Vertex count n_i: pins, explicit vertices and nonterminals.
  std::size_t vertex_count() const { return pins + vertices.size() + nonterminals.size(); }
  /// Edge count m_i: terminal edges plus the edges incident on nonterminals.
  std::size_t edge_count() const;

  std::string terminal_name(const Terminal& t) const;

  bool operator==(const Cell&) const = default;
};

struct LSpec {
  std::string name;
  // Solution documents (produced by emit) may use `/`-joined paths as vertex
  // and nonterminal names; ordinary specifications may not.
  bool solution = false;
  std::vector<Cell> cells;

  std::size_t vertex_number() const;  // N
  std::size_t edge_number() const;    // M
  std::size_t size() const { return vertex_number() + edge_number(); }

  int find_cell(std::string_view name) const;
  const Cell& top() const { return cells.back(); }

  bool operator==(const LSpec&) const = default;
};

/// Path of nonterminal names from the top cell down, plus an explicit vertex
/// name of the cell reached. Rendered as `nt1/nt2/vertex`.
struct VertexAddress {
  std::vector<std::string> path;
  std::string vertex;

  static VertexAddress parse(std::string_view text);
  std::string str() const;

  bool operator==(const VertexAddress&) const = default;
  auto operator<=>(const VertexAddress&) const = default;
};

struct Violation {
  std::string kind;      // stable identifier, e.g. "pin-degree mismatch"
  std::string location;  // e.g. "cell G2, nonterminal X"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view kind) const;
  std::string str() const;
};

LSpec parse_lspec(std::string_view document);
std::string serialize(const LSpec& spec);
ValidationReport validate_lspec(const LSpec& spec);

/// Throws PreconditionError listing the violations if `spec` is invalid.
void require_valid(const LSpec& spec);

}  // namespace sgat
