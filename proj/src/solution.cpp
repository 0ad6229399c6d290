#include "sgat/solution.hpp"

#include "sgat/errors.hpp"

#include <algorithm>
#include <map>

namespace sgat {

namespace {

bool hierarchical(const ApproxSolution& sol) {
  return sol.source == SourceKind::LSpec || sol.source == SourceKind::LFormula;
}

const PieceSolution& memo_of(const ApproxSolution& sol, int cell) {
  if (cell < 0 || cell >= static_cast<int>(sol.memo.size()) || !sol.memo[cell])
    throw Error("solution has no piece for cell " + sol.hierarchy->cell(cell).name);
  return *sol.memo[cell];
}

std::vector<int> occurrences(const PieceSolution& ps) {
  std::vector<int> out;
  for (std::size_t x = 0; x < ps.piece.nodes.size(); ++x)
    if (ps.piece.nodes[x].depth == ps.owned_depth) out.push_back(static_cast<int>(x));
  return out;
}

// Vertices of `ps` in the shared band below node `o` that it selects and the
// child piece does not.
void extra_overlap(const Hierarchy& h, const PieceSolution& ps, int o, const PieceSolution& child, int band,
                   std::vector<int>& out) {
  struct Item {
    int x, y, r;
  };
  std::vector<Item> stack{{o, 0, 0}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const auto& nx = ps.piece.nodes[it.x];
    const auto& ny = child.piece.nodes[it.y];
    if (nx.frontier || ny.frontier) continue;
    const auto& hc = h.cell(nx.cell);
    for (std::size_t j = 0; j < hc.locals.size(); ++j) {
      const int va = nx.slot[hc.interface + j], vb = ny.slot[hc.interface + j];
      if (va >= 0 && ps.state[va] && !(vb >= 0 && child.state[vb])) out.push_back(va);
    }
    if (it.r + 1 >= band) continue;
    for (std::size_t ci = 0; ci < hc.calls.size(); ++ci) {
      const int cx = ps.child[it.x][ci], cy = child.child[it.y][ci];
      if (cx >= 0 && cy >= 0) stack.push_back({cx, cy, it.r + 1});
    }
  }
}

std::pair<std::string, BigInt> split_lattice(const ApproxSolution& sol, std::string_view address) {
  const auto at = address.rfind('@');
  if (at == std::string_view::npos) throw Error("lattice address needs the form v@p: " + std::string(address));
  const std::string name(address.substr(0, at));
  BigInt p;
  if (!parse_natural(address.substr(at + 1), p)) throw Error("bad position in " + std::string(address));
  if (std::find(sol.static_names.begin(), sol.static_names.end(), name) == sol.static_names.end())
    throw Error("unknown static vertex " + name);
  if (p > sol.m) throw Error("position beyond m in " + std::string(address));
  return {name, p};
}

}  // namespace

LSpec emit_solution_lspec(const ApproxSolution& sol) {
  if (!hierarchical(sol)) throw PreconditionError("emit needs a hierarchical solution");
  const Hierarchy& h = *sol.hierarchy;
  // Drafts are keyed by cell and orientation; cut pieces may be used with
  // their sides exchanged, which turns members into non-members.
  const int n = static_cast<int>(h.cells().size()) * 2;

  struct Draft {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, int>> calls;  // name, source key
  };
  auto draft = [&](const PieceSolution& ps, int parity) {
    Draft d;
    std::vector<int> members;
    for (int v = 0; v < static_cast<int>(ps.piece.vertices.size()); ++v)
      if (ps.piece.depth_of(v) < ps.owned_depth && (ps.state[v] != 0) != (parity != 0)) members.push_back(v);
    for (int o : occurrences(ps)) {
      const int cell = ps.piece.nodes[o].cell;
      if (sol.problem == Problem::VC) extra_overlap(h, ps, o, memo_of(sol, cell), sol.band, members);
      const int flip = ps.flip.empty() ? 0 : ps.flip[o];
      d.calls.emplace_back(ps.piece.node_path(h, o), 2 * cell + (parity ^ flip));
    }
    for (int v : members) d.vertices.push_back(ps.piece.address(h, v));
    std::sort(d.vertices.begin(), d.vertices.end());
    return d;
  };

  // Only orientations reachable from the top piece are drafted.
  std::vector<std::optional<Draft>> drafts(n);
  Draft root = draft(sol.top, 0);
  std::vector<int> work;
  for (const auto& call : root.calls) work.push_back(call.second);
  while (!work.empty()) {
    const int key = work.back();
    work.pop_back();
    if (drafts[key]) continue;
    drafts[key] = draft(memo_of(sol, key / 2), key % 2);
    for (const auto& call : drafts[key]->calls) work.push_back(call.second);
  }

  // Prune cells without members anywhere below. Calls only go to cells of
  // smaller index, so one increasing pass suffices.
  std::vector<char> useful(n, 0);
  auto trim = [&](Draft& d) {
    std::erase_if(d.calls, [&](const auto& call) { return !useful[call.second]; });
    return !d.vertices.empty() || !d.calls.empty();
  };
  for (int key = 0; key < n; ++key)
    if (drafts[key]) useful[key] = trim(*drafts[key]);
  trim(root);

  std::vector<char> reach(n, 0);
  for (const auto& call : root.calls)
    if (!reach[call.second]) reach[call.second] = 1, work.push_back(call.second);
  while (!work.empty()) {
    const int key = work.back();
    work.pop_back();
    for (const auto& call : drafts[key]->calls)
      if (!reach[call.second]) reach[call.second] = 1, work.push_back(call.second);
  }

  LSpec out;
  out.name = sol.name + "_" + std::string(problem_name(sol.problem));
  out.solution = true;
  std::vector<int> index(n, -1);
  auto make = [&](const std::string& name, const Draft& d) {
    Cell cell;
    cell.name = name;
    cell.vertices = d.vertices;
    for (const auto& [call, src] : d.calls) cell.nonterminals.push_back({call, index[src], {}});
    return cell;
  };
  for (int key = 0; key < n; ++key) {
    if (!reach[key]) continue;
    index[key] = static_cast<int>(out.cells.size());
    out.cells.push_back(make("H_" + h.cell(key / 2).name + (key % 2 ? "_inv" : ""), *drafts[key]));
  }
  out.cells.push_back(make("H_" + h.cell(h.top()).name, root));
  return out;
}

bool query(const ApproxSolution& sol, const VertexAddress& addr) {
  if (!hierarchical(sol)) return query(sol, std::string_view(addr.str()));
  const Hierarchy& h = *sol.hierarchy;
  const PieceSolution* cur = &sol.top;
  int node = 0;
  // The piece above the current one, followed through the shared band (VC).
  const PieceSolution* above = nullptr;
  int above_node = -1;
  int parity = 0;  // cut: sides exchanged an odd number of times on the way

  for (const auto& step : addr.path) {
    const auto& hc = h.cell(cur->piece.nodes[node].cell);
    int ci = -1;
    for (std::size_t c = 0; c < hc.calls.size(); ++c)
      if (hc.calls[c].name == step) ci = static_cast<int>(c);
    if (ci < 0) throw Error("address does not resolve: no call '" + step + "' in " + hc.name);
    if (above) {
      above_node = above->child[above_node][ci];
      if (above_node < 0 || above->piece.nodes[above_node].frontier) above = nullptr;
    }
    const int next = cur->child[node][ci];
    if (next < 0) throw Error("internal: piece lacks node on path " + addr.str());
    if (cur->piece.nodes[next].depth == cur->owned_depth) {
      if (sol.problem == Problem::VC && !cur->piece.nodes[next].frontier) {
        above = cur;
        above_node = next;
      } else {
        above = nullptr;
      }
      if (!cur->flip.empty()) parity ^= cur->flip[next];
      cur = &memo_of(sol, cur->piece.nodes[next].cell);
      node = 0;
    } else {
      node = next;
    }
  }
  const auto& pn = cur->piece.nodes[node];
  const auto& hc = h.cell(pn.cell);
  const auto it = std::find(hc.locals.begin(), hc.locals.end(), addr.vertex);
  if (it == hc.locals.end()) throw Error("address does not resolve: no vertex '" + addr.vertex + "' in " + hc.name);
  const int slot = hc.interface + static_cast<int>(it - hc.locals.begin());
  bool member = cur->state[pn.slot[slot]] != 0;
  if (above && !member) {
    const int v = above->piece.nodes[above_node].slot[slot];
    member = v >= 0 && above->state[v];
  }
  return member != (parity != 0);
}

bool query(const ApproxSolution& sol, std::string_view address) {
  if (hierarchical(sol)) return query(sol, VertexAddress::parse(address));
  const auto [name, p] = split_lattice(sol, address);
  const int v = static_cast<int>(std::find(sol.static_names.begin(), sol.static_names.end(), name) -
                                 sol.static_names.begin());
  return sol.periodic.at(p)[v] != 0;
}

BigInt solution_size(const ApproxSolution& sol) { return sol.total_value; }

BigInt stream_solution(const ApproxSolution& sol, const SolutionSink& sink, const std::optional<BigInt>& cap) {
  BigInt emitted = 0;
  auto full = [&] { return cap && emitted >= *cap; };
  if (!hierarchical(sol)) {
    const int nv = static_cast<int>(sol.static_names.size());
    for (BigInt q = 0; q <= sol.m && !full(); ++q) {
      const auto& row = sol.periodic.at(q);
      const std::string at = "@" + to_string(q);
      for (int v = 0; v < nv && !full(); ++v)
        if (row[v]) {
          sink(sol.static_names[v] + at);
          ++emitted;
        }
    }
    return emitted;
  }

  const LSpec spec = emit_solution_lspec(sol);
  struct Frame {
    int cell;
    std::string prefix;
    std::size_t next;
  };
  std::vector<Frame> stack;
  auto enter = [&](int cell, std::string prefix) {
    for (const auto& v : spec.cells[cell].vertices) {
      if (full()) break;
      sink(prefix + v);
      ++emitted;
    }
    stack.push_back({cell, std::move(prefix), 0});
  };
  enter(static_cast<int>(spec.cells.size()) - 1, "");
  while (!stack.empty() && !full()) {
    Frame& f = stack.back();
    const auto& cell = spec.cells[f.cell];
    if (f.next >= cell.nonterminals.size()) {
      stack.pop_back();
      continue;
    }
    const auto& nt = cell.nonterminals[f.next++];
    enter(nt.type, f.prefix + nt.name + "/");
  }
  return emitted;
}

}  // namespace sgat
