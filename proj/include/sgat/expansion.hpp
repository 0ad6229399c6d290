#pragma once

#include "sgat/bigint.hpp"
#include "sgat/formula.hpp"
#include "sgat/fpn.hpp"
#include "sgat/graph.hpp"
#include "sgat/lspec.hpp"

#include <optional>
#include <vector>

namespace sgat {

/// Exact sizes of the expansion of every cell, without expanding.
struct CountVector {
  std::vector<BigInt> vertices;  // |V(E(G_i))|, pins of G_i excluded
  std::vector<BigInt> edges;     // specification edges in E(G_i), before collapse
  std::vector<std::vector<BigInt>> copies;  // copies[i][j]: copies of G_j in E(G_i)

  const BigInt& total_vertices() const { return vertices.back(); }
  const BigInt& total_edges() const { return edges.back(); }
};

CountVector count_expansion(const LSpec& spec);

/// E(spec). Vertices are addressed `nt1/.../v` and sorted by address.
ExpandedGraph expand(const LSpec& spec, const BigInt& budget);

/// G^m with vertices `v@p`, position-major.
ExpandedGraph expand_fpn(const FPNSpec& spec, const BigInt& budget);

/// The induced subgraph of G^m on positions lo..hi, with absolute names.
ExpandedGraph fpn_window(const FPNSpec& spec, const BigInt& lo, const BigInt& hi, const BigInt& budget);

/// Smallest k for which the specification is k-level-restricted.
int level_restriction(const LSpec& spec);

struct ResolvedAddress {
  int cell = -1;  // owning cell, 0-based
  int depth = 0;
  bool valid = false;
  std::string error;
};

ResolvedAddress resolve_address(const LSpec& spec, const VertexAddress& addr);

/// E(F) with local variables of each call instance named by call path.
SFormula expand_formula(const LFormula& f, const BigInt& budget);

/// Clause instances at positions 0..m; an instance that mentions a position
/// beyond m is dropped. Variables are named `x@p`.
SFormula expand_fpn_formula(const FPNFormula& f, const BigInt& budget);

/// The relation encoding a disjunction with the given negation mask.
BoolRelation clause_relation(int arity, std::uint32_t negated_mask);

}  // namespace sgat
