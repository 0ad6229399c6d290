#pragma once

// Decomposition primitives: truncated expansions of a hierarchy tree with a
// counted frontier, periodic slabs of a lattice expansion, and the clause
// pieces of a hierarchical formula.

#include "sgat/bigint.hpp"
#include "sgat/formula.hpp"
#include "sgat/fpn.hpp"
#include "sgat/graph.hpp"
#include "sgat/hierarchy.hpp"
#include "sgat/lspec.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sgat {

enum class Boundary { Delete, KeepOverlap };

struct PartialExpansion {
  int root = 0;  // 0-based cell index
  int depth = 0;
  int band = 1;  // levels deleted (delete mode) or shared (overlap mode)
  Boundary mode = Boundary::Delete;
  /// Delete mode: explicit vertices at depths [0, depth). Overlap mode:
  /// depths [0, depth + band). Addresses are relative to the root.
  ExpandedGraph explicit_graph;
  /// Cell types of the subtrees left unexpanded, with exact multiplicities:
  /// roots at depth + band (delete) or at depth (overlap).
  std::vector<std::pair<int, BigInt>> frontier;
  /// Explicit vertices at depths [depth, depth + band) in delete mode.
  BigInt deleted_level_count = 0;
  /// Nothing to expand: no vertices and no frontier.
  bool empty = false;
};

PartialExpansion partial_expand(const LSpec& spec, int cell, int depth, Boundary mode, int band,
                                const BigInt& budget);

/// Whether depth d is deleted at shifting offset i when bands of `band`
/// levels repeat every `period` levels below the top piece.
inline bool in_deleted_band(int offset, int d, int period, int band) {
  return d >= offset && (d - offset) % period < band;
}

struct FPNSlab {
  std::string role;  // "first", "middle", "last" or "whole"
  BigInt index = 0;  // p
  BigInt lo = 0;
  BigInt hi = -1;  // empty when hi < lo
  BigInt multiplicity = 1;

  BigInt width() const { return hi >= lo ? BigInt(hi - lo + 1) : BigInt(0); }
};

/// Slabs of G^m at shifting offset i: positions congruent to i, ..., i+band-1
/// modulo period are deleted and the remaining runs are the slabs. Interior
/// slabs are all translates of one another and reported once with their
/// multiplicity. Empty slabs are omitted.
struct FPNSlabs {
  int offset = 0;
  int period = 0;
  int band = 1;
  BigInt t = 0;  // index of the last slab
  std::vector<FPNSlab> slabs;
};

FPNSlabs fpn_slabs(const BigInt& m, int offset, int l, int band = 1);

/// One class of clause pieces of a hierarchical formula at offset j: the
/// kept clauses of a piece rooted at a node of `cell` (or of the top piece),
/// over fresh variable names relative to the piece root.
struct FormulaPiece {
  std::string role;  // "top" or "cell"; "first", "middle" or "last" for lattices
  int cell = -1;     // root cell of the piece
  SFormula formula;  // only variables used by kept clauses
  BigInt multiplicity = 1;
};

struct FormulaPieces {
  int offset = 0;
  int period = 0;
  std::vector<FormulaPiece> pieces;
  BigInt deleted_clauses = 0;
};

/// Explicit vertices of a materialized fragment at depths below max_depth,
/// addressed relative to the fragment root and sorted by address.
ExpandedGraph piece_graph(const Hierarchy& h, const Piece& piece, int max_depth);

/// Offsets used by the formula scheme for the given l and level bound k.
std::vector<int> formula_offsets(int l, int k);

FormulaPieces formula_pieces(const LFormula& f, int l, int offset, int k, const BigInt& budget);

/// Variables at positions lo .. lo+positions-1 and the clause instances
/// anchored at lo .. lo+anchors-1 that stay inside those positions.
SFormula fpn_formula_window(const FPNFormula& f, const BigInt& lo, int anchors, int positions);

/// Clause positions congruent to offset .. offset+k-1 modulo k(l+1) are
/// deleted; each remaining run of clauses is variable-disjoint from the rest.
FormulaPieces fpn_formula_pieces(const FPNFormula& f, int l, int offset);

}  // namespace sgat
