#pragma once

// Shifting approximation schemes over hierarchical and periodic inputs.
//
// A hierarchical solution is stored as one solved piece per cell type (the
// memo) plus the top piece of the winning offset. Piece roots sit at depths
// f_top, f_top + P, f_top + 2P, ... of the hierarchy tree, where P is the
// period and f_top the owned depth of the top piece; every copy of a cell at
// such a depth reuses that cell's memo entry.

#include "sgat/bigint.hpp"
#include "sgat/formula.hpp"
#include "sgat/fpn.hpp"
#include "sgat/hierarchy.hpp"
#include "sgat/lspec.hpp"
#include "sgat/solvers.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sgat {

enum class EpsilonKind { MaxSquared, MinSquared, Linear, MaxSat };

/// Parses a positive decimal such as "0.2" or "3/4" exactly.
Ratio parse_ratio(std::string_view text);

/// Smallest l >= 1 whose guarantee of the given kind is within epsilon.
int epsilon_to_l(const Ratio& epsilon, EpsilonKind kind);

EpsilonKind epsilon_kind(Problem p);

struct SchemeOptions {
  int l = 1;
  std::optional<int> k;  // default: measured
  std::string base = "exact";
  int exact_budget = kDefaultExactBudget;
  BigInt piece_budget = 20000;
  int threads = 1;
};

enum class SourceKind { LSpec, LFormula, FPN, FPNFormula };

/// A solved fragment of the hierarchy tree. Vertices at depths below
/// owned_depth belong to this piece; nodes at owned_depth are roots of the
/// next pieces. state[v] is membership (MIS, VC), side (cut) or truth value
/// (SAT) for every vertex of the fragment, deeper context included.
struct PieceSolution {
  Piece piece;
  int owned_depth = 0;
  std::vector<char> state;
  std::vector<std::vector<int>> child;  // per node and call: child node or -1
  std::vector<char> flip;  // cut: per node, the piece below has sides exchanged
  BigInt value = 0;
};

/// Per-position states of a lattice solution: head, then `body` repeated
/// `repeats` times, then tail, covering positions 0..m.
struct PeriodicState {
  std::vector<std::vector<char>> head;
  std::vector<std::vector<char>> body;
  BigInt repeats = 0;
  std::vector<std::vector<char>> tail;

  BigInt positions() const;
  const std::vector<char>& at(const BigInt& position) const;
};

/// One representative slab solve, kept for inspection.
struct SlabSolution {
  std::string role;
  BigInt lo = 0;
  BigInt hi = -1;
  std::vector<std::vector<char>> state;  // per position of the slab
  BigInt value = 0;
};

struct ApproxSolution {
  Problem problem = Problem::MIS;
  SourceKind source = SourceKind::LSpec;
  std::string name;
  int l = 1;
  int k = 1;       // level bound or narrowness used
  int period = 1;  // P
  int band = 1;    // deleted, shared or context levels per boundary
  std::string base;
  Ratio rho{1};
  Ratio guarantee{1};
  int best_offset = 0;
  std::vector<int> offsets;
  std::vector<BigInt> offset_values;
  BigInt total_value = 0;

  // Hierarchical inputs.
  std::shared_ptr<const Hierarchy> hierarchy;
  std::vector<std::optional<PieceSolution>> memo;  // by cell
  PieceSolution top;

  // Lattice inputs.
  BigInt m = 0;
  std::vector<std::string> static_names;
  PeriodicState periodic;
  std::vector<SlabSolution> slabs;
};

/// Composite guarantee for the problem, l and base ratio rho.
Ratio scheme_guarantee(Problem p, SourceKind source, int l, const Ratio& rho);

ApproxSolution h_mis(const LSpec& spec, const SchemeOptions& opt);
ApproxSolution h_vc(const LSpec& spec, const SchemeOptions& opt);
ApproxSolution h_maxcut(const LSpec& spec, const SchemeOptions& opt);
ApproxSolution h_maxsat(const LFormula& f, const SchemeOptions& opt);

ApproxSolution fpn_mis(const FPNSpec& spec, const SchemeOptions& opt);
ApproxSolution fpn_vc(const FPNSpec& spec, const SchemeOptions& opt);
ApproxSolution fpn_maxcut(const FPNSpec& spec, const SchemeOptions& opt);
ApproxSolution fpn_maxsat(const FPNFormula& f, const SchemeOptions& opt);

}  // namespace sgat
