#include "sgat/partial.hpp"

#include "sgat/errors.hpp"
#include "sgat/expansion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sgat {

ExpandedGraph piece_graph(const Hierarchy& h, const Piece& piece, int max_depth) {
  std::vector<int> keep;
  for (int v = 0; v < static_cast<int>(piece.vertices.size()); ++v)
    if (piece.depth_of(v) < max_depth) keep.push_back(v);
  std::vector<std::string> names;
  for (int v : keep) names.push_back(piece.address(h, v));
  std::vector<int> order(keep.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
  std::vector<int> id(piece.vertices.size(), -1);
  std::vector<std::string> sorted;
  for (std::size_t r = 0; r < order.size(); ++r) {
    id[keep[order[r]]] = static_cast<int>(r);
    sorted.push_back(std::move(names[order[r]]));
  }
  std::vector<VertexPair> edges;
  for (const auto& item : piece.items) {
    if (item.terms.size() != 2 || item.terms[0] < 0 || item.terms[1] < 0) continue;
    const int a = id[item.terms[0]], b = id[item.terms[1]];
    if (a >= 0 && b >= 0) edges.emplace_back(a, b);
  }
  return ExpandedGraph(std::move(sorted), std::move(edges), "piece");
}

namespace {

std::vector<std::pair<int, BigInt>> nonzero(const std::vector<BigInt>& counts) {
  std::vector<std::pair<int, BigInt>> out;
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] != 0) out.emplace_back(static_cast<int>(c), counts[c]);
  return out;
}

}  // namespace

PartialExpansion partial_expand(const LSpec& spec, int cell, int depth, Boundary mode, int band,
                                const BigInt& budget) {
  const Hierarchy h = Hierarchy::from_lspec(spec);
  if (cell < 0 || cell >= static_cast<int>(h.cells().size())) throw PreconditionError("cell index out of range");
  if (depth < 0) throw PreconditionError("depth must be non-negative");
  if (band < 1) throw PreconditionError("band must be at least 1");
  PartialExpansion pe;
  pe.root = cell;
  pe.depth = depth;
  pe.band = band;
  pe.mode = mode;
  const int kept = mode == Boundary::Delete ? depth : depth + band;
  pe.explicit_graph = piece_graph(h, materialize(h, cell, kept, budget), kept);
  if (mode == Boundary::Delete) {
    pe.frontier = nonzero(h.nodes_at(cell, depth + band));
    for (int d = depth; d < depth + band; ++d) {
      const auto level = h.nodes_at(cell, d);
      for (std::size_t c = 0; c < level.size(); ++c) pe.deleted_level_count += level[c] * h.cell(c).locals.size();
    }
  } else {
    pe.frontier = nonzero(h.nodes_at(cell, depth));
  }
  pe.empty = pe.explicit_graph.size() == 0 && pe.frontier.empty();
  return pe;
}

FPNSlabs fpn_slabs(const BigInt& m, int offset, int l, int band) {
  if (l < 1 || band < 1) throw PreconditionError("fpn_slabs needs l >= 1 and band >= 1");
  const int period = band * (l + 1);
  if (offset < 0 || offset >= period) throw PreconditionError("offset out of range");
  FPNSlabs out;
  out.offset = offset;
  out.period = period;
  out.band = band;
  if (offset > m) {
    out.t = 0;
    out.slabs.push_back({"whole", 0, 0, m, 1});
    return out;
  }
  out.t = ceil_div(m - offset + 1, period);
  auto slab = [&](const BigInt& p) {
    FPNSlab s;
    s.index = p;
    s.lo = std::max<BigInt>(0, (p - 1) * period + offset + band);
    s.hi = std::min<BigInt>(m, p * period + offset - 1);
    return s;
  };
  auto push = [&](FPNSlab s, const char* role, const BigInt& mult) {
    if (s.width() == 0 || mult == 0) return;
    s.role = role;
    s.multiplicity = mult;
    out.slabs.push_back(std::move(s));
  };
  push(slab(0), "first", 1);
  if (out.t >= 2) push(slab(1), "middle", out.t - 1);
  push(slab(out.t), "last", 1);
  return out;
}

std::vector<int> formula_offsets(int l, int k) {
  const int period = std::max(k, 1) * (l + 1);
  std::vector<int> out;
  if (k <= 1) {
    for (int i = 0; i <= l; ++i) out.push_back((2 * i) % (l + 1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    out.resize(period);
    std::iota(out.begin(), out.end(), 0);
  }
  return out;
}

namespace {

// Clause items of `piece` at node depths [lo, hi) as a formula over the
// variables they use.
std::pair<SFormula, std::size_t> piece_formula(const Hierarchy& h, const Piece& piece,
                                               const std::vector<BoolRelation>& relations, int lo, int hi) {
  SFormula out;
  out.relations = relations;
  std::map<int, int> var;
  for (const auto& item : piece.items) {
    const int d = piece.nodes[item.node].depth;
    if (d < lo || d >= hi) continue;
    RelClause rc{h.cell(piece.nodes[item.node].cell).items[item.index].tag, {}};
    for (int t : item.terms) {
      if (t < 0) throw Error("kept clause reaches outside its piece");
      rc.vars.push_back(t);
    }
    out.clauses.push_back(std::move(rc));
  }
  for (const auto& c : out.clauses)
    for (int v : c.vars) var.emplace(v, 0);
  std::vector<std::pair<std::string, int>> named;
  for (const auto& [v, _] : var) named.emplace_back(piece.address(h, v), v);
  std::sort(named.begin(), named.end());
  for (std::size_t r = 0; r < named.size(); ++r) {
    var[named[r].second] = static_cast<int>(r);
    out.variables.push_back(named[r].first);
  }
  for (auto& c : out.clauses)
    for (int& v : c.vars) v = var[v];
  const std::size_t n = out.clauses.size();
  return {std::move(out), n};
}

}  // namespace

FormulaPieces formula_pieces(const LFormula& f, int l, int offset, int k, const BigInt& budget) {
  if (l < 1) throw PreconditionError("l must be at least 1");
  const Hierarchy h = Hierarchy::from_lformula(f);
  const int measured = h.level_restriction();
  if (k < measured) throw PreconditionError("formula is not " + std::to_string(k) + "-level-restricted");
  const int ke = std::max(k, 1);
  const int period = ke * (l + 1);
  const int deleted_levels = ke + 1;
  if (offset < 0 || offset >= period) throw PreconditionError("offset out of range");

  FormulaPieces out;
  out.offset = offset;
  out.period = period;
  BigInt kept = 0;

  const int top = h.top();
  {
    Piece piece = materialize(h, top, offset, budget);
    auto [formula, n] = piece_formula(h, piece, f.relations, std::max(0, offset - period + deleted_levels), offset);
    out.pieces.push_back({"top", top, std::move(formula), 1});
    kept += n;
  }
  std::vector<BigInt> mult(h.cells().size(), 0);
  for (int d = offset + 1; d <= h.height(top); d += period) {
    const auto level = h.nodes_at(top, d);
    for (std::size_t c = 0; c < level.size(); ++c) mult[c] += level[c];
  }
  for (int c = 0; c < static_cast<int>(mult.size()); ++c) {
    if (mult[c] == 0) continue;
    Piece piece = materialize(h, c, period - 1, budget);
    auto [formula, n] = piece_formula(h, piece, f.relations, ke, period - 1);
    kept += mult[c] * n;
    out.pieces.push_back({"cell", c, std::move(formula), mult[c]});
  }
  out.deleted_clauses = h.expanded_items(top) - kept;
  return out;
}

SFormula fpn_formula_window(const FPNFormula& f, const BigInt& lo, int anchors, int positions) {
  const int nv = static_cast<int>(f.variables.size());
  SFormula out;
  for (int q = 0; q < positions; ++q)
    for (int v = 0; v < nv; ++v) out.variables.push_back(f.variables[v] + "@" + to_string(lo + q));
  std::map<std::string, int> relation_index;
  for (int a = 0; a < anchors; ++a)
    for (const auto& c : f.clauses) {
      if (a + c.max_offset() >= positions) continue;
      std::uint32_t mask = 0;
      RelClause rc;
      for (std::size_t j = 0; j < c.literals.size(); ++j) {
        if (c.literals[j].negated) mask |= 1u << j;
        rc.vars.push_back((a + c.literals[j].offset) * nv + c.literals[j].var);
      }
      auto rel = clause_relation(static_cast<int>(c.literals.size()), mask);
      auto [it, fresh] = relation_index.emplace(rel.name, static_cast<int>(out.relations.size()));
      if (fresh) out.relations.push_back(std::move(rel));
      rc.relation = it->second;
      out.clauses.push_back(std::move(rc));
    }
  return out;
}

FormulaPieces fpn_formula_pieces(const FPNFormula& f, int l, int offset) {
  const int band = std::max(f.narrowness(), 1);
  const FPNSlabs slabs = fpn_slabs(f.m, offset, l, band);
  FormulaPieces out;
  out.offset = offset;
  out.period = slabs.period;
  BigInt kept = 0;
  for (const auto& s : slabs.slabs) {
    const BigInt var_hi = std::min<BigInt>(f.m, s.hi + band);
    SFormula g = fpn_formula_window(f, s.lo, static_cast<int>(s.width()), static_cast<int>(var_hi - s.lo + 1));
    kept += s.multiplicity * g.clauses.size();
    out.pieces.push_back({s.role, -1, std::move(g), s.multiplicity});
  }
  BigInt total = 0;
  for (const auto& c : f.clauses)
    if (f.m >= c.max_offset()) total += f.m - c.max_offset() + 1;
  out.deleted_clauses = total - kept;
  return out;
}

}  // namespace sgat
