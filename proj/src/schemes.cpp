#include "sgat/schemes.hpp"

#include "sgat/errors.hpp"
#include "sgat/partial.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

namespace sgat {

Ratio parse_ratio(std::string_view text) {
  auto fail = [&]() -> Ratio { throw Error("not a positive number: " + std::string(text)); };
  if (text.empty()) return fail();
  std::int64_t num = 0, den = 1;
  std::size_t i = 0;
  bool digits = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, digits = true) {
    if (num > 100000000000000LL) return fail();
    num = num * 10 + (text[i] - '0');
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, digits = true) {
      if (den > 100000000000000LL || num > 100000000000000LL) return fail();
      num = num * 10 + (text[i] - '0');
      den *= 10;
    }
  } else if (i < text.size() && text[i] == '/') {
    std::int64_t d = 0;
    bool dd = false;
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, dd = true) {
      if (d > 100000000000000LL) return fail();
      d = d * 10 + (text[i] - '0');
    }
    if (!dd || d == 0) return fail();
    den = d;
  }
  if (!digits || i != text.size() || num == 0) return fail();
  return Ratio(num, den);
}

int epsilon_to_l(const Ratio& epsilon, EpsilonKind kind) {
  if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
  const BigInt num = epsilon.numerator(), den = epsilon.denominator();
  if (kind == EpsilonKind::MaxSat) {
    const BigInt l = ceil_div(2 * den, num) - 1;
    return l < 1 ? 1 : static_cast<int>(l);
  }
  constexpr int kMaxL = 1000000;
  for (int l = 1; l <= kMaxL; ++l) {
    const BigInt a = l, b = l + 1;
    switch (kind) {
      case EpsilonKind::MaxSquared:
        if (a * a * den >= b * b * (den - num)) return l;
        break;
      case EpsilonKind::MinSquared:
        if (b * b * den <= a * a * (den + num)) return l;
        break;
      case EpsilonKind::Linear:
        if (a * den >= b * (den - num)) return l;
        break;
      case EpsilonKind::MaxSat:
        break;
    }
  }
  throw PreconditionError("epsilon too small");
}

EpsilonKind epsilon_kind(Problem p) {
  switch (p) {
    case Problem::MIS: return EpsilonKind::MaxSquared;
    case Problem::VC: return EpsilonKind::MinSquared;
    case Problem::MaxCut: return EpsilonKind::Linear;
    case Problem::MaxSat: return EpsilonKind::MaxSat;
  }
  return EpsilonKind::Linear;
}

Ratio scheme_guarantee(Problem p, SourceKind source, int l, const Ratio& rho) {
  const Ratio shrink(l, l + 1);
  switch (p) {
    case Problem::MIS: return shrink * shrink / rho;
    case Problem::VC: return Ratio(l + 1, l) * Ratio(l + 1, l) * rho;
    case Problem::MaxCut: return shrink / rho;
    case Problem::MaxSat:
      return source == SourceKind::FPNFormula ? shrink / rho : Ratio(l - 1, l + 1) / rho;
  }
  return Ratio(1);
}

namespace {

class HierScheme {
public:
  HierScheme(std::shared_ptr<const Hierarchy> h, Problem problem, const SchemeOptions& opt)
      : h_(std::move(h)), problem_(problem), opt_(opt),
        solver_(make_solver(opt.base, problem, opt.exact_budget, opt.l)) {
    if (opt.l < 1) throw PreconditionError("l must be at least 1");
    const int measured = h_->level_restriction();
    k_ = opt.k.value_or(measured);
    if (k_ < measured)
      throw PreconditionError("input is not " + std::to_string(k_) + "-level-restricted (needs k = " +
                              std::to_string(measured) + ")");
    band_ = std::max(k_, 1);
    period_ = problem == Problem::VC ? band_ * opt.l : band_ * (opt.l + 1);
    memo_.resize(h_->cells().size());
  }

  ApproxSolution run(const std::string& name, SourceKind source) {
    std::vector<int> offsets;
    if (problem_ == Problem::MaxSat) {
      offsets = formula_offsets(opt_.l, k_);
    } else {
      offsets.resize(period_);
      std::iota(offsets.begin(), offsets.end(), 0);
    }

    // Memo entries needed by any offset, closed under the memo pieces' own
    // occurrences, built in increasing cell order.
    std::set<int> needed;
    std::vector<int> work;
    auto need_at = [&](int cell, int depth) {
      const auto level = h_->nodes_at(cell, depth);
      for (std::size_t c = 0; c < level.size(); ++c)
        if (level[c] != 0 && needed.insert(static_cast<int>(c)).second) work.push_back(static_cast<int>(c));
    };
    for (int i : offsets) need_at(h_->top(), top_owned(i));
    while (!work.empty()) {
      const int c = work.back();
      work.pop_back();
      need_at(c, period_);
    }
    for (int c : needed) memo_[c] = solve_piece(c, period_, true, 0);

    std::vector<PieceSolution> tops(offsets.size());
    auto solve_top = [&](std::size_t idx) { tops[idx] = solve_piece(h_->top(), top_owned(offsets[idx]), false, offsets[idx]); };
    const int threads = std::max(1, opt_.threads);
    if (threads == 1) {
      for (std::size_t idx = 0; idx < offsets.size(); ++idx) solve_top(idx);
    } else {
      for (std::size_t start = 0; start < offsets.size(); start += threads) {
        std::vector<std::future<void>> batch;
        for (std::size_t idx = start; idx < std::min(offsets.size(), start + threads); ++idx)
          batch.push_back(std::async(std::launch::async, solve_top, idx));
        for (auto& f : batch) f.get();
      }
    }

    ApproxSolution sol;
    sol.problem = problem_;
    sol.source = source;
    sol.name = name;
    sol.l = opt_.l;
    sol.k = k_;
    sol.period = period_;
    sol.band = band_;
    sol.base = solver_.id;
    sol.rho = solver_.rho;
    sol.guarantee = scheme_guarantee(problem_, source, opt_.l, solver_.rho);
    sol.offsets = offsets;
    std::size_t best = 0;
    for (std::size_t idx = 0; idx < offsets.size(); ++idx) {
      sol.offset_values.push_back(tops[idx].value);
      const bool better = is_minimization(problem_) ? tops[idx].value < tops[best].value
                                                    : tops[idx].value > tops[best].value;
      if (better) best = idx;
    }
    sol.best_offset = offsets[best];
    sol.total_value = tops[best].value;
    sol.top = std::move(tops[best]);
    sol.memo = std::move(memo_);
    sol.hierarchy = h_;
    return sol;
  }

private:
  // Owned depth of the top piece at offset i.
  int top_owned(int i) const {
    switch (problem_) {
      case Problem::VC: return i == 0 ? period_ : i;
      case Problem::MaxSat: return i + 1;
      default: return i + band_;
    }
  }

  PieceSolution solve_piece(int root, int f, bool memo, int offset) {
    PieceSolution ps;
    ps.owned_depth = f;
    const int window = problem_ == Problem::MIS ? f : f + band_;
    ps.piece = materialize(*h_, root, window, opt_.piece_budget);
    const Piece& p = ps.piece;
    ps.child.resize(p.nodes.size());
    for (std::size_t x = 0; x < p.nodes.size(); ++x) {
      ps.child[x].assign(h_->cell(p.nodes[x].cell).calls.size(), -1);
      if (p.nodes[x].parent >= 0) ps.child[p.nodes[x].parent][p.nodes[x].call] = static_cast<int>(x);
    }
    ps.state.assign(p.vertices.size(), 0);
    switch (problem_) {
      case Problem::MIS: solve_mis(ps); break;
      case Problem::VC: solve_vc(ps); break;
      case Problem::MaxCut: solve_cut(ps); break;
      case Problem::MaxSat: solve_sat(ps, memo ? band_ : std::max(0, offset - period_ + band_ + 1), memo ? band_ : 0); break;
    }
    return ps;
  }

  std::vector<int> occurrences(const PieceSolution& ps) const {
    std::vector<int> out;
    for (std::size_t x = 0; x < ps.piece.nodes.size(); ++x)
      if (ps.piece.nodes[x].depth == ps.owned_depth) out.push_back(static_cast<int>(x));
    return out;
  }

  const PieceSolution& memo_of(int cell) const {
    if (!memo_[cell]) throw Error("internal: memo entry missing for cell " + h_->cell(cell).name);
    return *memo_[cell];
  }

  // Calls fn(vertex in a, vertex in b) for corresponding locals of the
  // subtree of a at node na and of b at node nb, over `levels` levels.
  template <class F>
  void walk_pair(const PieceSolution& a, int na, const PieceSolution& b, int nb, int levels, F&& fn) const {
    struct Item {
      int x, y, r;
    };
    std::vector<Item> stack{{na, nb, 0}};
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const auto& nx = a.piece.nodes[it.x];
      const auto& ny = b.piece.nodes[it.y];
      if (nx.frontier || ny.frontier) continue;
      const auto& hc = h_->cell(nx.cell);
      for (std::size_t j = 0; j < hc.locals.size(); ++j) fn(nx.slot[hc.interface + j], ny.slot[hc.interface + j]);
      if (it.r + 1 >= levels) continue;
      for (std::size_t ci = 0; ci < hc.calls.size(); ++ci) {
        const int cx = a.child[it.x][ci], cy = b.child[it.y][ci];
        if (cx >= 0 && cy >= 0) stack.push_back({cx, cy, it.r + 1});
      }
    }
  }

  // Copies child memo states onto the band levels below the owned region.
  void import_context(PieceSolution& ps) const {
    for (int o : occurrences(ps)) {
      const PieceSolution& m = memo_of(ps.piece.nodes[o].cell);
      walk_pair(ps, o, m, 0, band_, [&](int va, int vb) {
        if (va >= 0 && vb >= 0) ps.state[va] = m.state[vb];
      });
    }
  }

  Graph region_graph(const Piece& p, const std::vector<int>& region) const {
    std::vector<int> id(p.vertices.size(), -1);
    for (std::size_t r = 0; r < region.size(); ++r) id[region[r]] = static_cast<int>(r);
    std::vector<VertexPair> edges;
    for (const auto& item : p.items) {
      if (item.terms.size() != 2 || item.terms[0] < 0 || item.terms[1] < 0) continue;
      const int a = id[item.terms[0]], b = id[item.terms[1]];
      if (a >= 0 && b >= 0) edges.emplace_back(a, b);
    }
    Graph g = Graph::from_edges(static_cast<int>(region.size()), std::move(edges));
    if (solver_.requires_planar && !planarity_check(g))
      throw PreconditionError("piece is not planar; base solver '" + solver_.id + "' requires planarity");
    return g;
  }

  std::vector<int> region_below(const Piece& p, int depth) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v)
      if (p.depth_of(v) < depth) out.push_back(v);
    return out;
  }

  void solve_mis(PieceSolution& ps) const {
    const auto region = region_below(ps.piece, ps.owned_depth - band_);
    const auto chosen = solver_.solve_graph(region_graph(ps.piece, region));
    for (std::size_t r = 0; r < region.size(); ++r) ps.state[region[r]] = chosen[r];
    ps.value = std::count(ps.state.begin(), ps.state.end(), 1);
    for (int o : occurrences(ps)) ps.value += memo_of(ps.piece.nodes[o].cell).value;
  }

  void solve_vc(PieceSolution& ps) const {
    const auto region = region_below(ps.piece, ps.owned_depth + band_);
    const auto chosen = solver_.solve_graph(region_graph(ps.piece, region));
    for (std::size_t r = 0; r < region.size(); ++r) ps.state[region[r]] = chosen[r];
    ps.value = std::count(ps.state.begin(), ps.state.end(), 1);
    for (int o : occurrences(ps)) {
      const PieceSolution& m = memo_of(ps.piece.nodes[o].cell);
      long shared = 0;
      walk_pair(ps, o, m, 0, band_, [&](int va, int vb) {
        if (va >= 0 && vb >= 0 && ps.state[va] && m.state[vb]) ++shared;
      });
      ps.value += m.value - shared;
    }
  }

  // Every owned level is solved exactly; only edges into child pieces can be
  // lost. A child piece may be used with its sides exchanged, which keeps its
  // value, so each copy takes whichever orientation cuts more boundary edges.
  void solve_cut(PieceSolution& ps) const {
    const Piece& p = ps.piece;
    const int f = ps.owned_depth;
    const auto region = region_below(p, f);
    const auto side = solver_.solve_graph(region_graph(p, region));
    for (std::size_t r = 0; r < region.size(); ++r) ps.state[region[r]] = side[r];

    const auto occ = occurrences(ps);
    std::vector<int> owner(p.vertices.size(), -1);
    for (std::size_t j = 0; j < occ.size(); ++j) {
      const PieceSolution& m = memo_of(p.nodes[occ[j]].cell);
      walk_pair(ps, occ[j], m, 0, band_, [&](int va, int vb) {
        if (va < 0 || vb < 0) return;
        ps.state[va] = m.state[vb];
        owner[va] = static_cast<int>(j);
      });
    }

    std::set<VertexPair> edges;
    for (const auto& item : p.items) {
      if (item.terms.size() != 2 || item.terms[0] < 0 || item.terms[1] < 0) continue;
      int a = item.terms[0], b = item.terms[1];
      if (a == b || std::min(p.depth_of(a), p.depth_of(b)) >= f) continue;
      edges.insert({std::min(a, b), std::max(a, b)});  // parallel edges collapse
    }
    std::vector<long> same(occ.size(), 0), cut(occ.size(), 0);
    for (const auto& [a, b] : edges) {
      const int o = std::max(owner[a], owner[b]);
      if (o >= 0) ++(ps.state[a] != ps.state[b] ? cut : same)[o];
    }
    ps.flip.assign(p.nodes.size(), 0);
    for (std::size_t j = 0; j < occ.size(); ++j) {
      if (same[j] <= cut[j]) continue;
      ps.flip[occ[j]] = 1;
      for (std::size_t v = 0; v < owner.size(); ++v)
        if (owner[v] == static_cast<int>(j)) ps.state[v] ^= 1;
    }

    ps.value = 0;
    for (const auto& [a, b] : edges)
      if (ps.state[a] != ps.state[b]) ++ps.value;
    for (int o : occ) ps.value += memo_of(p.nodes[o].cell).value;
  }

  // Variables at depths below f-1 are solved; depth f-1 is dropped (false).
  // Clauses at depths [kept_lo, f-1) are kept; [eval_lo, f+band) are counted.
  void solve_sat(PieceSolution& ps, int kept_lo, int eval_lo) const {
    const Piece& p = ps.piece;
    const int f = ps.owned_depth;
    SFormula g;
    g.relations = relations_;
    std::vector<int> id(p.vertices.size(), -1);
    for (const auto& item : p.items) {
      const int d = p.nodes[item.node].depth;
      if (d < kept_lo || d >= f - 1) continue;
      RelClause rc{h_->cell(p.nodes[item.node].cell).items[item.index].tag, {}};
      for (int t : item.terms) {
        if (t < 0 || p.depth_of(t) >= f - 1) throw Error("internal: kept clause leaves its piece");
        if (id[t] < 0) {
          id[t] = static_cast<int>(g.variables.size());
          g.variables.push_back(std::to_string(t));
        }
        rc.vars.push_back(id[t]);
      }
      g.clauses.push_back(std::move(rc));
    }
    const auto assignment = solver_.solve_formula(g);
    for (std::size_t v = 0; v < id.size(); ++v)
      if (id[v] >= 0) ps.state[v] = assignment[id[v]] ? 1 : 0;
    import_context(ps);

    ps.value = 0;
    for (const auto& item : p.items) {
      const int d = p.nodes[item.node].depth;
      if (d < eval_lo || d >= f + band_) continue;
      const auto& rel = relations_[h_->cell(p.nodes[item.node].cell).items[item.index].tag];
      std::uint32_t tuple = 0;
      for (std::size_t j = 0; j < item.terms.size(); ++j) {
        if (item.terms[j] < 0) throw Error("internal: counted clause leaves its piece");
        if (ps.state[item.terms[j]]) tuple |= 1u << j;
      }
      if (rel.accepts(tuple)) ++ps.value;
    }
    for (int o : occurrences(ps)) ps.value += memo_of(p.nodes[o].cell).value;
  }

public:
  std::vector<BoolRelation> relations_;

private:
  std::shared_ptr<const Hierarchy> h_;
  Problem problem_;
  SchemeOptions opt_;
  SolverContract solver_;
  int k_ = 1;
  int band_ = 1;
  int period_ = 1;
  std::vector<std::optional<PieceSolution>> memo_;
};

ApproxSolution run_lspec(const LSpec& spec, Problem problem, const SchemeOptions& opt) {
  require_valid(spec);
  auto h = std::make_shared<const Hierarchy>(Hierarchy::from_lspec(spec));
  HierScheme scheme(h, problem, opt);
  return scheme.run(spec.name, SourceKind::LSpec);
}

}  // namespace

ApproxSolution h_mis(const LSpec& spec, const SchemeOptions& opt) { return run_lspec(spec, Problem::MIS, opt); }
ApproxSolution h_vc(const LSpec& spec, const SchemeOptions& opt) { return run_lspec(spec, Problem::VC, opt); }
ApproxSolution h_maxcut(const LSpec& spec, const SchemeOptions& opt) {
  return run_lspec(spec, Problem::MaxCut, opt);
}

ApproxSolution h_maxsat(const LFormula& f, const SchemeOptions& opt) {
  if (auto problems = validate_lformula(f); !problems.empty()) throw PreconditionError(problems.front());
  auto h = std::make_shared<const Hierarchy>(Hierarchy::from_lformula(f));
  HierScheme scheme(h, Problem::MaxSat, opt);
  scheme.relations_ = f.relations;
  return scheme.run("formula", SourceKind::LFormula);
}

}  // namespace sgat
