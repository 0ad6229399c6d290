#include "sgat/hierarchy.hpp"

#include "sgat/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sgat {

namespace {

// Ranks of `names` in sorted order: rank[i] is the sorted position of names[i].
std::vector<int> sorted_ranks(const std::vector<std::string>& names) {
  std::vector<int> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
  std::vector<int> rank(names.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  return rank;
}

}  // namespace

Hierarchy Hierarchy::from_lspec(const LSpec& spec) {
  Hierarchy h;
  for (const auto& src : spec.cells) {
    HCell cell;
    cell.name = src.name;
    cell.interface = src.pins;
    auto rank = sorted_ranks(src.vertices);
    cell.locals.resize(src.vertices.size());
    for (std::size_t v = 0; v < src.vertices.size(); ++v) cell.locals[rank[v]] = src.vertices[v];

    auto slot = [&](const Terminal& t) {
      if (t.kind == Terminal::Kind::Pin) return t.index - 1;
      if (t.kind == Terminal::Kind::Vertex) return src.pins + rank[t.index];
      throw PreconditionError("cell " + src.name + ": nonterminal used as a terminal");
    };

    std::vector<int> order(src.nonterminals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return src.nonterminals[a].name < src.nonterminals[b].name;
    });
    for (int idx : order) {
      const auto& nt = src.nonterminals[idx];
      HCall call;
      call.callee = nt.type;
      call.name = nt.name;
      const int p = spec.cells[nt.type].pins;
      for (int k = 1; k <= p; ++k) {
        auto t = nt.bound(k);
        if (!t) throw PreconditionError("cell " + src.name + ": pin " + std::to_string(k) + " of " +
                                        nt.name + " is unbound");
        call.args.push_back(slot(*t));
      }
      cell.calls.push_back(std::move(call));
    }
    for (const auto& e : src.edges) cell.items.push_back({-1, {slot(e.a), slot(e.b)}});
    h.cells_.push_back(std::move(cell));
  }
  h.finish();
  return h;
}

Hierarchy Hierarchy::from_lformula(const LFormula& f) {
  Hierarchy h;
  for (const auto& src : f.cells) {
    HCell cell;
    cell.name = src.name;
    cell.interface = static_cast<int>(src.interface.size());
    auto rank = sorted_ranks(src.locals);
    cell.locals.resize(src.locals.size());
    for (std::size_t v = 0; v < src.locals.size(); ++v) cell.locals[rank[v]] = src.locals[v];
    auto slot = [&](int v) { return v < cell.interface ? v : cell.interface + rank[v - cell.interface]; };

    std::map<int, int> occurrence;
    for (const auto& call : src.calls) {
      HCall hc;
      hc.callee = call.callee;
      hc.name = f.cells[call.callee].name + "_" + std::to_string(++occurrence[call.callee]);
      for (int v : call.args) hc.args.push_back(slot(v));
      cell.calls.push_back(std::move(hc));
    }
    for (const auto& c : src.clauses) {
      HItem item{c.relation, {}};
      for (int v : c.vars) item.terms.push_back(slot(v));
      cell.items.push_back(std::move(item));
    }
    h.cells_.push_back(std::move(cell));
  }
  h.finish();
  return h;
}

void Hierarchy::finish() {
  const int n = static_cast<int>(cells_.size());
  height_.assign(n, 0);
  locals_total_.assign(n, 0);
  items_total_.assign(n, 0);
  for (int c = 0; c < n; ++c) {
    const auto& cell = cells_[c];
    locals_total_[c] = cell.locals.size();
    items_total_[c] = cell.items.size();
    for (const auto& call : cell.calls) {
      if (call.callee < 0 || call.callee >= c)
        throw PreconditionError("cell " + cell.name + " calls a cell that is not earlier");
      height_[c] = std::max(height_[c], height_[call.callee] + 1);
      locals_total_[c] += locals_total_[call.callee];
      items_total_[c] += items_total_[call.callee];
    }
  }
  // Callers always come later, so a reverse sweep sees every call site of a
  // cell before the cell itself.
  lift_.assign(n, {});
  for (int c = 0; c < n; ++c) lift_[c].assign(cells_[c].interface, 0);
  for (int p = n - 1; p >= 0; --p) {
    const auto& cell = cells_[p];
    for (const auto& call : cell.calls)
      for (std::size_t s = 0; s < call.args.size(); ++s) {
        int a = call.args[s];
        int up = a < cell.interface ? 1 + lift_[p][a] : 1;
        lift_[call.callee][s] = std::max(lift_[call.callee][s], up);
      }
  }
}

int Hierarchy::find_cell(std::string_view name) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<BigInt> Hierarchy::nodes_at(int c, int depth) const {
  std::vector<BigInt> level(cells_.size(), 0);
  level[c] = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<BigInt> next(cells_.size(), 0);
    bool any = false;
    for (std::size_t t = 0; t < cells_.size(); ++t) {
      if (level[t] == 0) continue;
      for (const auto& call : cells_[t].calls) {
        next[call.callee] += level[t];
        any = true;
      }
    }
    level = std::move(next);
    if (!any) break;
  }
  return level;
}

int Hierarchy::lift(int c, int slot) const {
  return slot < cells_[c].interface ? lift_[c][slot] : 0;
}

int Hierarchy::level_restriction() const {
  int k = 0;
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (const auto& item : cells_[c].items)
      for (int s : item.terms) k = std::max(k, lift(static_cast<int>(c), s));
  return k;
}

std::vector<int> Piece::call_path(int node) const {
  std::vector<int> path;
  for (int x = node; nodes[x].parent >= 0; x = nodes[x].parent) path.push_back(nodes[x].call);
  std::reverse(path.begin(), path.end());
  return path;
}

std::string Piece::node_path(const Hierarchy& h, int node) const {
  std::vector<std::string> parts;
  for (int x = node; nodes[x].parent >= 0; x = nodes[x].parent)
    parts.push_back(h.cell(nodes[nodes[x].parent].cell).calls[nodes[x].call].name);
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += *it;
  }
  return out;
}

std::string Piece::address(const Hierarchy& h, int vertex) const {
  const auto& pv = vertices[vertex];
  std::string prefix = node_path(h, pv.node);
  const std::string& name = h.cell(nodes[pv.node].cell).locals[pv.local];
  return prefix.empty() ? name : prefix + "/" + name;
}

Piece materialize(const Hierarchy& h, int root, int depth_limit, const BigInt& budget) {
  const int limit = std::min(depth_limit, h.height(root) + 1);
  BigInt required = 0;
  {
    std::vector<BigInt> level(h.cells().size(), 0);
    level[root] = 1;
    for (int d = 0; d < limit; ++d) {
      std::vector<BigInt> next(h.cells().size(), 0);
      for (std::size_t t = 0; t < level.size(); ++t) {
        if (level[t] == 0) continue;
        required += level[t] * h.cell(static_cast<int>(t)).locals.size();
        for (const auto& call : h.cell(static_cast<int>(t)).calls) next[call.callee] += level[t];
      }
      if (required > budget) throw BudgetExceeded("piece vertices", to_string(required), to_string(budget));
      level = std::move(next);
    }
  }

  Piece piece;
  piece.root = root;
  piece.depth_limit = depth_limit;

  struct Frame {
    int node;
    std::size_t next_call;
  };
  auto add_node = [&](int cell, int parent, int call, int depth, std::vector<int> slot) {
    PieceNode node{cell, parent, call, depth, depth >= depth_limit, std::move(slot)};
    const auto& hc = h.cell(cell);
    const int id = static_cast<int>(piece.nodes.size());
    node.slot.resize(hc.slot_count(), -1);
    if (!node.frontier) {
      for (int j = 0; j < static_cast<int>(hc.locals.size()); ++j) {
        node.slot[hc.interface + j] = static_cast<int>(piece.vertices.size());
        piece.vertices.push_back({id, j});
      }
      for (std::size_t it = 0; it < hc.items.size(); ++it) {
        PieceItem item{id, static_cast<int>(it), {}};
        for (int s : hc.items[it].terms) item.terms.push_back(node.slot[s]);
        piece.items.push_back(std::move(item));
      }
    }
    piece.nodes.push_back(std::move(node));
    return id;
  };

  std::vector<Frame> stack;
  stack.push_back({add_node(root, -1, -1, 0, {}), 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    const PieceNode& node = piece.nodes[top.node];
    const auto& hc = h.cell(node.cell);
    if (node.frontier || top.next_call >= hc.calls.size()) {
      stack.pop_back();
      continue;
    }
    const int ci = static_cast<int>(top.next_call++);
    const auto& call = hc.calls[ci];
    std::vector<int> slot;
    for (int a : call.args) slot.push_back(node.slot[a]);
    const int parent = top.node;
    const int depth = node.depth + 1;
    int child = add_node(call.callee, parent, ci, depth, std::move(slot));
    stack.push_back({child, 0});
  }
  return piece;
}

}  // namespace sgat
