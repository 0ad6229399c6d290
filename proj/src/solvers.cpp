#include "sgat/solvers.hpp"

#include "sgat/errors.hpp"

#include <boost/dynamic_bitset.hpp>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <array>
#include <functional>

namespace sgat {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

void check_budget(std::size_t size, int budget, const char* what) {
  if (size > static_cast<std::size_t>(budget))
    throw BudgetExceeded(what, std::to_string(size), std::to_string(budget));
}

// Independence number of induced subgraphs of one graph.
class MisSolver {
public:
  explicit MisSolver(const Graph& g) : n_(g.n), open_(g.n, Bits(g.n)), closed_(g.n, Bits(g.n)) {
    for (int v = 0; v < n_; ++v) {
      for (int w : g.adj[v]) open_[v].set(w);
      closed_[v] = open_[v];
      closed_[v].set(v);
    }
  }

  int alpha(Bits s) const {
    int taken = 0;
    // Vertices of degree 0 or 1 belong to some maximum independent set.
    for (bool changed = true; changed;) {
      changed = false;
      for (auto v = s.find_first(); v != Bits::npos; v = s.find_next(v)) {
        if ((open_[v] & s).count() <= 1) {
          ++taken;
          s -= closed_[v];
          changed = true;
        }
      }
    }
    if (s.none()) return taken;

    Bits comp = reach(s);
    if (comp != s) return taken + alpha(comp) + alpha(s - comp);

    std::size_t best = s.find_first();
    std::size_t best_deg = 0;
    for (auto v = s.find_first(); v != Bits::npos; v = s.find_next(v)) {
      std::size_t d = (open_[v] & s).count();
      if (d > best_deg) {
        best = v;
        best_deg = d;
      }
    }
    if (best_deg <= 2) return taken + static_cast<int>(s.count() / 2);  // a cycle

    Bits without = s;
    without.reset(best);
    int with_v = 1 + alpha(s - closed_[best]);
    if (with_v >= clique_cover(without)) return taken + with_v;
    return taken + std::max(with_v, alpha(without));
  }

  Bits full() const {
    Bits s(n_);
    s.set();
    return s;
  }

  const Bits& closed(int v) const { return closed_[v]; }

private:
  Bits reach(const Bits& s) const {
    Bits seen(n_);
    std::vector<std::size_t> stack{s.find_first()};
    seen.set(stack.back());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      Bits next = open_[v] & s;
      next -= seen;
      for (auto w = next.find_first(); w != Bits::npos; w = next.find_next(w)) {
        seen.set(w);
        stack.push_back(w);
      }
    }
    return seen;
  }

  // Greedy partition into cliques; its size bounds alpha from above.
  int clique_cover(const Bits& s) const {
    std::vector<Bits> cliques;
    for (auto v = s.find_first(); v != Bits::npos; v = s.find_next(v)) {
      bool placed = false;
      for (auto& c : cliques)
        if (c.is_subset_of(open_[v])) {
          c.set(v);
          placed = true;
          break;
        }
      if (!placed) {
        cliques.emplace_back(n_);
        cliques.back().set(v);
      }
    }
    return static_cast<int>(cliques.size());
  }

  int n_;
  std::vector<Bits> open_;
  std::vector<Bits> closed_;
};

std::vector<int> mis_of_component(const Graph& g) {
  MisSolver solver(g);
  Bits s = solver.full();
  int target = solver.alpha(s);
  std::vector<int> out;
  for (int u = 0; u < g.n && target > 0; ++u) {
    if (!s.test(u)) continue;
    Bits rest = s - solver.closed(u);
    if (1 + solver.alpha(rest) == target) {
      out.push_back(u);
      s = rest;
      --target;
    } else {
      s.reset(u);
    }
  }
  return out;
}

std::vector<char> maxcut_of_component(const Graph& g) {
  const int n = g.n;
  std::vector<char> side(n, 0);
  if (n <= 1) return side;

  // BFS order keeps the assigned region connected, which tightens the bound.
  std::vector<int> order, pos(n, -1);
  order.push_back(0);
  pos[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : g.adj[order[i]])
      if (pos[w] < 0) {
        pos[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
  // rest[i]: edges with both endpoints at order position >= i.
  std::vector<int> rest(n + 1, 0);
  for (auto [u, v] : g.edges) ++rest[std::min(pos[u], pos[v])];
  for (int i = n - 1; i >= 0; --i) rest[i] += rest[i + 1];

  std::vector<std::array<int, 2>> seen(n, {0, 0});  // assigned neighbours per side
  std::vector<char> cur(n, 0), best_side(n, 0);
  int best = -1;

  // Greedy start.
  {
    std::vector<std::array<int, 2>> cnt(n, {0, 0});
    int value = 0;
    for (int i = 0; i < n; ++i) {
      int v = order[i];
      char s = i == 0 ? 0 : (cnt[v][0] >= cnt[v][1] ? 1 : 0);
      value += cnt[v][1 - s];
      best_side[v] = s;
      for (int w : g.adj[v]) ++cnt[w][s];
    }
    best = value;
  }

  auto bound = [&](int i, int value) {
    int b = value + rest[i];
    for (int j = i; j < n; ++j) {
      int v = order[j];
      b += std::max(seen[v][0], seen[v][1]);
    }
    return b;
  };

  std::function<void(int, int)> search = [&](int i, int value) {
    if (i == n) {
      if (value > best) {
        best = value;
        best_side = cur;
      }
      return;
    }
    if (bound(i, value) <= best) return;
    int v = order[i];
    char first = i == 0 ? 0 : (seen[v][0] > seen[v][1] ? 1 : 0);
    for (char s : {first, static_cast<char>(1 - first)}) {
      if (i == 0 && s == 1) break;
      cur[v] = s;
      for (int w : g.adj[v]) ++seen[w][s];
      search(i + 1, value + seen[v][1 - s]);
      for (int w : g.adj[v]) --seen[w][s];
    }
  };
  search(0, 0);
  return best_side;
}

}  // namespace

std::vector<int> exact_mis(const Graph& g, int budget) {
  std::vector<int> out;
  for (const auto& comp : g.components()) {
    check_budget(comp.size(), budget, "exact solver component");
    for (int v : mis_of_component(g.induced(comp))) out.push_back(comp[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int exact_mis_size(const Graph& g, int budget) {
  int total = 0;
  for (const auto& comp : g.components()) {
    check_budget(comp.size(), budget, "exact solver component");
    MisSolver solver(g.induced(comp));
    total += solver.alpha(solver.full());
  }
  return total;
}

std::vector<int> exact_vc(const Graph& g, int budget) {
  auto mis = exact_mis(g, budget);
  std::vector<char> in(g.n, 0);
  for (int v : mis) in[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (!in[v]) out.push_back(v);
  return out;
}

std::vector<char> exact_maxcut(const Graph& g, int budget) {
  std::vector<char> side(g.n, 0);
  for (const auto& comp : g.components()) {
    check_budget(comp.size(), budget, "exact solver component");
    auto local = maxcut_of_component(g.induced(comp));
    for (std::size_t i = 0; i < comp.size(); ++i) side[comp[i]] = local[i];
  }
  return side;
}

std::size_t cut_value(const Graph& g, const std::vector<char>& side) {
  std::size_t c = 0;
  for (auto [u, v] : g.edges) c += side[u] != side[v] ? 1 : 0;
  return c;
}

MaxSatResult exact_maxsat(const SFormula& f, int budget) {
  const int nv = static_cast<int>(f.variables.size());
  const int nc = static_cast<int>(f.clauses.size());
  MaxSatResult result;
  result.assignment.assign(nv, false);

  // Variable-connected components by union-find.
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& c : f.clauses)
    for (std::size_t j = 1; j < c.vars.size(); ++j) parent[find(c.vars[j])] = find(c.vars[0]);

  std::vector<std::vector<int>> comp_vars(nv), comp_clauses(nv);
  for (int v = 0; v < nv; ++v) comp_vars[find(v)].push_back(v);
  std::vector<char> constant(nc, 0);  // 1: always satisfied, 2: never
  for (int i = 0; i < nc; ++i) {
    const auto& c = f.clauses[i];
    const auto& r = f.relations[c.relation];
    if (r.tuples.empty())
      constant[i] = 2;
    else if (r.tuples.size() == (std::size_t{1} << r.arity))
      constant[i] = 1;
    if (c.vars.empty()) continue;
    comp_clauses[find(c.vars[0])].push_back(i);
  }
  for (int i = 0; i < nc; ++i) {
    if (f.clauses[i].vars.empty() && !f.relations[f.clauses[i].relation].tuples.empty()) ++result.satisfied;
  }

  for (int root = 0; root < nv; ++root) {
    if (comp_vars[root].empty()) continue;
    const auto& vars = comp_vars[root];
    const auto& clauses = comp_clauses[root];
    check_budget(vars.size(), budget, "exact solver component");

    // Order variables by first appearance so clauses close early.
    std::vector<int> order;
    std::vector<char> placed(nv, 0);
    for (int ci : clauses)
      for (int v : f.clauses[ci].vars)
        if (!placed[v]) {
          placed[v] = 1;
          order.push_back(v);
        }
    for (int v : vars)
      if (!placed[v]) order.push_back(v);

    std::vector<std::vector<std::pair<int, int>>> occurs(nv);  // (clause, argument)
    for (int ci : clauses)
      for (std::size_t j = 0; j < f.clauses[ci].vars.size(); ++j)
        occurs[f.clauses[ci].vars[j]].emplace_back(ci, static_cast<int>(j));

    std::vector<std::uint32_t> known(nc, 0), bits(nc, 0);
    std::vector<char> dead(nc, 0);
    std::vector<char> value(nv, 0), best_value(nv, 0);
    int lost = 0, best_lost = static_cast<int>(clauses.size()) + 1;
    for (int ci : clauses)
      if (constant[ci] == 2) {
        dead[ci] = 1;
        ++lost;
      }

    auto alive = [&](int ci) {
      if (constant[ci] == 1) return true;
      for (auto t : f.relations[f.clauses[ci].relation].tuples)
        if ((t & known[ci]) == bits[ci]) return true;
      return false;
    };

    std::function<void(std::size_t)> search = [&](std::size_t i) {
      if (lost >= best_lost) return;
      if (i == order.size()) {
        best_lost = lost;
        for (int v : vars) best_value[v] = value[v];
        return;
      }
      int v = order[i];
      for (char b : {0, 1}) {
        value[v] = b;
        std::vector<int> killed;
        for (auto [ci, j] : occurs[v]) {
          known[ci] |= 1u << j;
          if (b) bits[ci] |= 1u << j;
          if (!dead[ci] && !alive(ci)) {
            dead[ci] = 1;
            killed.push_back(ci);
          }
        }
        lost += static_cast<int>(killed.size());
        search(i + 1);
        lost -= static_cast<int>(killed.size());
        for (int ci : killed) dead[ci] = 0;
        for (auto [ci, j] : occurs[v]) {
          known[ci] &= ~(1u << j);
          bits[ci] &= ~(1u << j);
        }
      }
    };
    search(0);
    for (int v : vars) result.assignment[v] = best_value[v] != 0;
    result.satisfied += clauses.size() - best_lost;
  }
  return result;
}

bool planarity_check(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n);
  if (n >= 3 && g.edges.size() > 3 * n - 6) return false;
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  G bg(n);
  for (auto [u, v] : g.edges) boost::add_edge(u, v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

bool is_independent(const Graph& g, const std::vector<int>& set) {
  std::vector<char> in(g.n, 0);
  for (int v : set) in[v] = 1;
  for (auto [u, v] : g.edges)
    if (in[u] && in[v]) return false;
  return true;
}

bool is_vertex_cover(const Graph& g, const std::vector<int>& set) {
  std::vector<char> in(g.n, 0);
  for (int v : set) in[v] = 1;
  for (auto [u, v] : g.edges)
    if (!in[u] && !in[v]) return false;
  return true;
}

namespace {

// BFS layer of every vertex within its component, rooted at the component's
// smallest vertex.
std::vector<int> bfs_layers(const Graph& g, const std::vector<int>& comp) {
  std::vector<int> layer(g.n, -1);
  std::queue<int> q;
  layer[comp.front()] = 0;
  q.push(comp.front());
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.adj[u])
      if (layer[w] < 0) {
        layer[w] = layer[u] + 1;
        q.push(w);
      }
  }
  return layer;
}

std::vector<int> solve_on(const Graph& g, const std::vector<int>& vertices, bool cover, int budget) {
  auto sub = g.induced(vertices);
  auto local = cover ? exact_vc(sub, budget) : exact_mis(sub, budget);
  std::vector<int> out;
  for (int v : local) out.push_back(vertices[v]);
  return out;
}

}  // namespace

std::vector<int> baker_mis(const Graph& g, int l, int budget) {
  if (l < 1) throw PreconditionError("baker_mis needs l >= 1");
  std::vector<int> out;
  for (const auto& comp : g.components()) {
    auto layer = bfs_layers(g, comp);
    std::vector<int> best;
    bool have = false;
    for (int r = 0; r <= l; ++r) {
      std::vector<int> kept;
      for (int v : comp)
        if (layer[v] % (l + 1) != r) kept.push_back(v);
      auto sol = solve_on(g, kept, false, budget);
      if (!have || sol.size() > best.size()) {
        best = std::move(sol);
        have = true;
      }
    }
    out.insert(out.end(), best.begin(), best.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> baker_vc(const Graph& g, int l, int budget) {
  if (l < 1) throw PreconditionError("baker_vc needs l >= 1");
  std::vector<int> out;
  for (const auto& comp : g.components()) {
    auto layer = bfs_layers(g, comp);
    int depth = 0;
    for (int v : comp) depth = std::max(depth, layer[v]);
    std::vector<int> best;
    bool have = false;
    for (int r = 0; r < l; ++r) {
      std::vector<char> in(g.n, 0);
      // Windows [b, b+l] for b = r - l, r, r + l, ...; consecutive windows
      // share layer b + l.
      for (int b = r - l; b <= depth; b += l) {
        std::vector<int> window;
        for (int v : comp)
          if (layer[v] >= b && layer[v] <= b + l) window.push_back(v);
        if (window.empty()) continue;
        for (int v : solve_on(g, window, true, budget)) in[v] = 1;
      }
      std::vector<int> sol;
      for (int v : comp)
        if (in[v]) sol.push_back(v);
      if (!have || sol.size() < best.size()) {
        best = std::move(sol);
        have = true;
      }
    }
    out.insert(out.end(), best.begin(), best.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::MIS: return "mis";
    case Problem::VC: return "vc";
    case Problem::MaxCut: return "maxcut";
    case Problem::MaxSat: return "maxsat";
  }
  return "?";
}

Problem parse_problem(std::string_view name) {
  for (Problem p : {Problem::MIS, Problem::VC, Problem::MaxCut, Problem::MaxSat})
    if (problem_name(p) == name) return p;
  throw Error("unknown problem '" + std::string(name) + "'");
}

namespace {

std::vector<char> membership(int n, const std::vector<int>& set) {
  std::vector<char> in(n, 0);
  for (int v : set) in[v] = 1;
  return in;
}

}  // namespace

SolverContract make_solver(std::string_view id, Problem problem, int budget, int baker_l) {
  SolverContract s;
  s.id = std::string(id);
  s.problem = problem;
  s.budget = budget;
  if (id == "exact") {
    switch (problem) {
      case Problem::MIS:
        s.solve_graph = [budget](const Graph& g) { return membership(g.n, exact_mis(g, budget)); };
        break;
      case Problem::VC:
        s.solve_graph = [budget](const Graph& g) { return membership(g.n, exact_vc(g, budget)); };
        break;
      case Problem::MaxCut:
        s.solve_graph = [budget](const Graph& g) { return exact_maxcut(g, budget); };
        break;
      case Problem::MaxSat:
        s.solve_formula = [budget](const SFormula& f) { return exact_maxsat(f, budget).assignment; };
        break;
    }
    return s;
  }
  if (id == "baker") {
    if (baker_l < 1) throw PreconditionError("baker solver needs l >= 1");
    s.requires_planar = true;
    s.rho = Ratio(baker_l + 1, baker_l);
    if (problem == Problem::MIS) {
      s.solve_graph = [budget, baker_l](const Graph& g) { return membership(g.n, baker_mis(g, baker_l, budget)); };
      return s;
    }
    if (problem == Problem::VC) {
      s.solve_graph = [budget, baker_l](const Graph& g) { return membership(g.n, baker_vc(g, baker_l, budget)); };
      return s;
    }
    throw PreconditionError("baker solver supports mis and vc only");
  }
  throw Error("unknown base solver '" + std::string(id) + "'");
}

}  // namespace sgat
