#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sgat {

using VertexPair = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1.
struct Graph {
  int n = 0;
  std::vector<VertexPair> edges;  // u < v, sorted, unique
  std::vector<std::vector<int>> adj;

  /// Normalizes, sorts and deduplicates `edges`; self-loops are dropped.
  static Graph from_edges(int n, std::vector<VertexPair> edges);

  /// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  Graph induced(const std::vector<int>& vertices) const;

  /// Connected components, each sorted, ordered by smallest vertex.
  std::vector<std::vector<int>> components() const;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

/// A concrete graph whose vertices carry textual addresses.
class ExpandedGraph {
public:
  ExpandedGraph() = default;
  ExpandedGraph(std::vector<std::string> names, std::vector<VertexPair> edges, std::string origin);

  const std::vector<std::string>& names() const { return names_; }
  const Graph& graph() const { return graph_; }
  const std::string& origin() const { return origin_; }
  int size() const { return graph_.n; }

  /// True when the raw edge list contained parallel edges that were merged.
  bool collapsed() const { return collapsed_; }

  int find(std::string_view name) const;  // -1 if absent

private:
  std::vector<std::string> names_;
  Graph graph_;
  std::string origin_;
  bool collapsed_ = false;
  std::unordered_map<std::string, int> index_;
};

/// `v <address>` lines followed by `e <a> <b>` lines.
std::string serialize(const ExpandedGraph& g);

}  // namespace sgat
