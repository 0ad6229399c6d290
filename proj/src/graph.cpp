#include "sgat/graph.hpp"

#include "sgat/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sgat {

Graph Graph::from_edges(int n, std::vector<VertexPair> edges) {
  Graph g;
  g.n = n;
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  edges.erase(std::remove_if(edges.begin(), edges.end(), [](const VertexPair& e) { return e.first == e.second; }),
              edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> where(n, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) where[vertices[i]] = static_cast<int>(i);
  std::vector<VertexPair> sub;
  for (auto [u, v] : edges)
    if (where[u] >= 0 && where[v] >= 0) sub.emplace_back(where[u], where[v]);
  return from_edges(static_cast<int>(vertices.size()), std::move(sub));
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    out.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

ExpandedGraph::ExpandedGraph(std::vector<std::string> names, std::vector<VertexPair> edges,
                             std::string origin)
    : names_(std::move(names)), origin_(std::move(origin)) {
  const std::size_t raw = edges.size();
  graph_ = Graph::from_edges(static_cast<int>(names_.size()), std::move(edges));
  collapsed_ = graph_.edges.size() != raw;
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw Error("duplicate vertex address '" + names_[i] + "'");
}

int ExpandedGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

std::string serialize(const ExpandedGraph& g) {
  std::ostringstream out;
  for (const auto& name : g.names()) out << "v " << name << '\n';
  for (auto [u, v] : g.graph().edges) out << "e " << g.names()[u] << ' ' << g.names()[v] << '\n';
  return out.str();
}

}  // namespace sgat
