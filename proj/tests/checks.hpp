#pragma once

// Materialized views of a scheme solution, for cross-checking on small
// instances.

#include "oracles.hpp"

#include "sgat/expansion.hpp"
#include "sgat/solution.hpp"

#include <set>
#include <string>

namespace checks {

inline std::set<std::string> stream_set(const sgat::ApproxSolution& sol) {
  std::set<std::string> out;
  sgat::stream_solution(sol, [&](const std::string& a) { out.insert(a); });
  return out;
}

inline std::set<std::string> query_set(const sgat::ApproxSolution& sol, const std::set<std::string>& universe) {
  std::set<std::string> out;
  for (const auto& a : universe)
    if (sgat::query(sol, std::string_view(a))) out.insert(a);
  return out;
}

inline std::set<std::string> emit_set(const sgat::ApproxSolution& sol) {
  return oracle::expand(sgat::emit_solution_lspec(sol)).vertices;
}

inline bool independent(const oracle::NamedGraph& g, const std::set<std::string>& s) {
  for (const auto& [a, b] : g.edges)
    if (s.count(a) && s.count(b)) return false;
  return true;
}

inline bool covers(const oracle::NamedGraph& g, const std::set<std::string>& s) {
  for (const auto& [a, b] : g.edges)
    if (!s.count(a) && !s.count(b)) return false;
  return true;
}

inline std::size_t cut(const oracle::NamedGraph& g, const std::set<std::string>& side1) {
  std::size_t c = 0;
  for (const auto& [a, b] : g.edges) c += side1.count(a) != side1.count(b);
  return c;
}

inline std::size_t satisfied(const sgat::SFormula& f, const std::set<std::string>& truth) {
  std::vector<bool> assignment;
  for (const auto& v : f.variables) assignment.push_back(truth.count(v) > 0);
  return f.count_satisfied(assignment);
}

// Lattice expansion as a named graph, read directly off the static edges.
inline oracle::NamedGraph lattice(const sgat::FPNSpec& spec) {
  oracle::NamedGraph g;
  const int m = static_cast<int>(spec.m);
  auto at = [&](int v, int p) { return spec.vertices[v] + "@" + std::to_string(p); };
  for (int p = 0; p <= m; ++p)
    for (std::size_t v = 0; v < spec.vertices.size(); ++v) g.vertices.insert(at(static_cast<int>(v), p));
  for (int p = 0; p <= m; ++p)
    for (const auto& e : spec.edges)
      if (p + e.offset <= m && !(e.offset == 0 && e.from == e.to)) g.add_edge(at(e.from, p), at(e.to, p + e.offset));
  return g;
}

}  // namespace checks
