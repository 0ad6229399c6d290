#pragma once

// A uniform view of hierarchical documents (graph specifications and
// formulas) used by expansion, partial expansion and the schemes. Every slot
// of a cell is either an interface slot (pin / interface variable), bound by
// the caller, or a local slot (explicit vertex / local variable) owned by the
// hierarchy-tree node that instantiates the cell.

#include "sgat/bigint.hpp"
#include "sgat/formula.hpp"
#include "sgat/lspec.hpp"

#include <limits>
#include <string>
#include <vector>

namespace sgat {

struct HCall {
  int callee = 0;
  std::vector<int> args;  // caller slot for each callee interface slot
  std::string name;       // path component in addresses
};

/// An edge (two terms, tag -1) or a clause (tag = relation index).
struct HItem {
  int tag = -1;
  std::vector<int> terms;  // caller slots
};

struct HCell {
  std::string name;
  int interface = 0;
  std::vector<std::string> locals;  // canonical (sorted) order
  std::vector<HCall> calls;         // canonical (sorted by name) order
  std::vector<HItem> items;

  int slot_count() const { return interface + static_cast<int>(locals.size()); }
};

class Hierarchy {
public:
  static Hierarchy from_lspec(const LSpec& spec);
  static Hierarchy from_lformula(const LFormula& f);

  const std::vector<HCell>& cells() const { return cells_; }
  const HCell& cell(int c) const { return cells_[c]; }
  int top() const { return static_cast<int>(cells_.size()) - 1; }
  int find_cell(std::string_view name) const;

  /// Depth of the deepest node of HT(c).
  int height(int c) const { return height_[c]; }

  /// Number of locals (vertices / variables) in the full expansion of c.
  const BigInt& expanded_locals(int c) const { return locals_total_[c]; }
  /// Number of items (edges / clauses) in the full expansion of c.
  const BigInt& expanded_items(int c) const { return items_total_[c]; }

  /// Multiplicity of every cell type among the nodes at `depth` of HT(c).
  std::vector<BigInt> nodes_at(int c, int depth) const;

  /// For interface slot s of cell c, the largest number of levels the slot
  /// climbs before reaching its owner, over all call sites. 0 for locals.
  int lift(int c, int slot) const;

  /// Smallest k such that every item reaches its terms within k levels.
  int level_restriction() const;

private:
  void finish();

  std::vector<HCell> cells_;
  std::vector<int> height_;
  std::vector<BigInt> locals_total_;
  std::vector<BigInt> items_total_;
  std::vector<std::vector<int>> lift_;
};

/// A node of a materialized fragment of a hierarchy tree.
struct PieceNode {
  int cell = 0;
  int parent = -1;
  int call = -1;  // index into the parent's calls
  int depth = 0;
  bool frontier = false;  // at the depth limit: interface resolved, locals absent
  std::vector<int> slot;  // vertex id per slot, -1 when outside the fragment
};

struct PieceVertex {
  int node = 0;
  int local = 0;  // index into the cell's locals
};

struct PieceItem {
  int node = 0;
  int index = 0;          // into the cell's items
  std::vector<int> terms;  // vertex ids, -1 when outside the fragment
};

/// The nodes of HT(root) at depths [0, depth_limit) with their locals and
/// items, and the nodes at depth_limit as unexpanded frontier entries. The
/// root's interface is outside. Nodes are in DFS preorder.
struct Piece {
  int root = 0;
  int depth_limit = 0;
  std::vector<PieceNode> nodes;
  std::vector<PieceVertex> vertices;
  std::vector<PieceItem> items;

  std::vector<int> call_path(int node) const;
  std::string address(const Hierarchy& h, int vertex) const;
  std::string node_path(const Hierarchy& h, int node) const;  // joined call names
  int depth_of(int vertex) const { return nodes[vertices[vertex].node].depth; }
};

constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

/// Throws BudgetExceeded when the fragment would hold more than `budget`
/// vertices.
Piece materialize(const Hierarchy& h, int root, int depth_limit, const BigInt& budget);

}  // namespace sgat
