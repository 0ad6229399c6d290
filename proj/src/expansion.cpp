#include "sgat/expansion.hpp"

#include "sgat/errors.hpp"
#include "sgat/hierarchy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sgat {

CountVector count_expansion(const LSpec& spec) {
  require_valid(spec);
  const std::size_t n = spec.cells.size();
  CountVector out;
  out.vertices.assign(n, 0);
  out.edges.assign(n, 0);
  out.copies.assign(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& cell = spec.cells[i];
    out.vertices[i] = cell.vertices.size();
    out.edges[i] = cell.edges.size();
    out.copies[i][i] = 1;
    for (const auto& nt : cell.nonterminals) {
      out.vertices[i] += out.vertices[nt.type];
      out.edges[i] += out.edges[nt.type];
      for (std::size_t j = 0; j < n; ++j) out.copies[i][j] += out.copies[nt.type][j];
    }
  }
  return out;
}

ExpandedGraph expand(const LSpec& spec, const BigInt& budget) {
  require_valid(spec);
  auto h = Hierarchy::from_lspec(spec);
  const BigInt& required = h.expanded_locals(h.top());
  if (required > budget)
    throw BudgetExceeded("expansion vertices", to_string(required), to_string(budget));
  Piece piece = materialize(h, h.top(), kUnlimitedDepth, budget);

  const int nv = static_cast<int>(piece.vertices.size());
  std::vector<std::string> names(nv);
  for (int v = 0; v < nv; ++v) names[v] = piece.address(h, v);
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
  std::vector<int> rank(nv);
  std::vector<std::string> sorted(nv);
  for (int r = 0; r < nv; ++r) {
    rank[order[r]] = r;
    sorted[r] = std::move(names[order[r]]);
  }
  std::vector<VertexPair> edges;
  for (const auto& item : piece.items)
    edges.emplace_back(rank[item.terms[0]], rank[item.terms[1]]);
  return ExpandedGraph(std::move(sorted), std::move(edges), "lspec " + spec.name);
}

ExpandedGraph fpn_window(const FPNSpec& spec, const BigInt& lo, const BigInt& hi, const BigInt& budget) {
  const BigInt width = hi >= lo ? BigInt(hi - lo + 1) : BigInt(0);
  const BigInt required = width * spec.vertices.size();
  if (required > budget) throw BudgetExceeded("window vertices", to_string(required), to_string(budget));
  const int w = static_cast<int>(width);
  const int nv = static_cast<int>(spec.vertices.size());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(w) * nv);
  for (int p = 0; p < w; ++p) {
    const std::string at = "@" + to_string(lo + p);
    for (int v = 0; v < nv; ++v) names.push_back(spec.vertices[v] + at);
  }
  std::vector<VertexPair> edges;
  for (int p = 0; p < w; ++p)
    for (const auto& e : spec.edges)
      if (p + e.offset < w) edges.emplace_back(p * nv + e.from, (p + e.offset) * nv + e.to);
  return ExpandedGraph(std::move(names), std::move(edges), "fpn window");
}

ExpandedGraph expand_fpn(const FPNSpec& spec, const BigInt& budget) {
  auto g = fpn_window(spec, 0, spec.m, budget);
  return ExpandedGraph(g.names(), g.graph().edges, "fpn m=" + to_string(spec.m));
}

int level_restriction(const LSpec& spec) {
  require_valid(spec);
  return Hierarchy::from_lspec(spec).level_restriction();
}

ResolvedAddress resolve_address(const LSpec& spec, const VertexAddress& addr) {
  ResolvedAddress out;
  if (spec.cells.empty()) {
    out.error = "empty specification";
    return out;
  }
  int cell = static_cast<int>(spec.cells.size()) - 1;
  for (const auto& step : addr.path) {
    int nt = spec.cells[cell].find_nonterminal(step);
    if (nt < 0) {
      out.error = "no nonterminal '" + step + "' in cell " + spec.cells[cell].name;
      return out;
    }
    cell = spec.cells[cell].nonterminals[nt].type;
    ++out.depth;
  }
  if (spec.cells[cell].find_vertex(addr.vertex) < 0) {
    out.error = "no vertex '" + addr.vertex + "' in cell " + spec.cells[cell].name;
    return out;
  }
  out.cell = cell;
  out.valid = true;
  return out;
}

SFormula expand_formula(const LFormula& f, const BigInt& budget) {
  auto problems = validate_lformula(f);
  if (!problems.empty()) throw PreconditionError("invalid formula: " + problems.front());
  auto h = Hierarchy::from_lformula(f);
  const BigInt required = std::max(h.expanded_items(h.top()), h.expanded_locals(h.top()));
  if (required > budget) throw BudgetExceeded("expanded formula", to_string(required), to_string(budget));
  Piece piece = materialize(h, h.top(), kUnlimitedDepth, budget);
  SFormula out;
  out.relations = f.relations;
  for (int v = 0; v < static_cast<int>(piece.vertices.size()); ++v) out.variables.push_back(piece.address(h, v));
  for (const auto& item : piece.items)
    out.clauses.push_back({h.cell(piece.nodes[item.node].cell).items[item.index].tag, item.terms});
  return out;
}

BoolRelation clause_relation(int arity, std::uint32_t negated_mask) {
  BoolRelation r;
  r.arity = arity;
  r.name = "CNF_" + std::to_string(arity) + "_" + BoolRelation::tuple_string(negated_mask, arity);
  for (std::uint32_t t = 0; t < (1u << arity); ++t)
    if (t != negated_mask) r.tuples.push_back(t);
  return r;
}

SFormula expand_fpn_formula(const FPNFormula& f, const BigInt& budget) {
  const BigInt positions = f.m + 1;
  const BigInt required = positions * std::max(f.variables.size(), f.clauses.size());
  if (required > budget) throw BudgetExceeded("expanded formula", to_string(required), to_string(budget));
  const int w = static_cast<int>(positions);
  const int nv = static_cast<int>(f.variables.size());
  SFormula out;
  for (int p = 0; p < w; ++p)
    for (int v = 0; v < nv; ++v) out.variables.push_back(f.variables[v] + "@" + std::to_string(p));
  std::map<std::string, int> relation_index;
  for (int p = 0; p < w; ++p)
    for (const auto& c : f.clauses) {
      if (p + c.max_offset() >= w) continue;
      std::uint32_t mask = 0;
      RelClause rc;
      for (std::size_t j = 0; j < c.literals.size(); ++j) {
        const auto& lit = c.literals[j];
        if (lit.negated) mask |= 1u << j;
        rc.vars.push_back((p + lit.offset) * nv + lit.var);
      }
      auto rel = clause_relation(static_cast<int>(c.literals.size()), mask);
      auto [it, fresh] = relation_index.emplace(rel.name, static_cast<int>(out.relations.size()));
      if (fresh) out.relations.push_back(std::move(rel));
      rc.relation = it->second;
      out.clauses.push_back(std::move(rc));
    }
  return out;
}

}  // namespace sgat
