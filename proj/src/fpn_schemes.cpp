// Shifting schemes on periodic lattices. Only O(1) representative slabs are
// solved per offset; the solution of G^m is described by a head, a repeated
// period and a tail, and every count uses that description.

#include "sgat/errors.hpp"
#include "sgat/partial.hpp"
#include "sgat/schemes.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>

namespace sgat {

BigInt PeriodicState::positions() const {
  return BigInt(head.size()) + repeats * body.size() + tail.size();
}

const std::vector<char>& PeriodicState::at(const BigInt& position) const {
  BigInt q = position;
  if (q < 0) throw Error("position out of range");
  if (q < head.size()) return head[static_cast<std::size_t>(q)];
  q -= head.size();
  if (!body.empty()) {
    const BigInt span = repeats * body.size();
    if (q < span) return body[static_cast<std::size_t>(q % body.size())];
    q -= span;
  }
  if (q < tail.size()) return tail[static_cast<std::size_t>(q)];
  throw Error("position out of range");
}

namespace {

using States = std::vector<std::vector<char>>;  // [position][vertex]

struct OffsetResult {
  PeriodicState state;
  BigInt value = 0;
  std::vector<SlabSolution> slabs;
};

std::size_t ones(const States& s) {
  std::size_t n = 0;
  for (const auto& row : s) n += std::count(row.begin(), row.end(), 1);
  return n;
}

class FpnScheme {
public:
  FpnScheme(Problem problem, const SchemeOptions& opt, int measured, const BigInt& m, int nv)
      : problem_(problem), opt_(opt), solver_(make_solver(opt.base, problem, opt.exact_budget, opt.l)), m_(m),
        nv_(nv) {
    if (opt.l < 1) throw PreconditionError("l must be at least 1");
    if (m < 0) throw PreconditionError("m must be non-negative");
    k_ = opt.k.value_or(measured);
    if (k_ < measured)
      throw PreconditionError("input is not " + std::to_string(k_) + "-narrow (needs k = " +
                              std::to_string(measured) + ")");
    band_ = std::max(k_, 1);
    period_ = problem == Problem::VC ? band_ * opt.l : band_ * (opt.l + 1);
  }

  void set_graph(const FPNSpec& g) {
    std::set<std::tuple<int, int, int>> seen;
    for (auto e : g.edges) {
      if (e.offset == 0 && e.from == e.to) continue;
      if (e.offset == 0 && e.from > e.to) std::swap(e.from, e.to);
      if (seen.insert({e.from, e.to, e.offset}).second) edges_.push_back(e);
    }
  }

  void set_formula(const FPNFormula& f) { formula_ = &f; }

  ApproxSolution run(SourceKind source, std::vector<std::string> names) {
    std::vector<OffsetResult> results(period_);
    auto one = [&](int i) {
      results[i] = problem_ == Problem::VC       ? overlap_offset(i)
                   : problem_ == Problem::MaxCut ? cut_offset(i)
                                                 : delete_offset(i);
    };
    const int threads = std::max(1, opt_.threads);
    if (threads == 1) {
      for (int i = 0; i < period_; ++i) one(i);
    } else {
      for (int start = 0; start < period_; start += threads) {
        std::vector<std::future<void>> batch;
        for (int i = start; i < std::min(period_, start + threads); ++i)
          batch.push_back(std::async(std::launch::async, one, i));
        for (auto& f : batch) f.get();
      }
    }
    ApproxSolution sol;
    sol.problem = problem_;
    sol.source = source;
    sol.name = source == SourceKind::FPN ? "fpn" : "fpncnf";
    sol.l = opt_.l;
    sol.k = k_;
    sol.period = period_;
    sol.band = band_;
    sol.base = solver_.id;
    sol.rho = solver_.rho;
    sol.guarantee = scheme_guarantee(problem_, source, opt_.l, solver_.rho);
    int best = 0;
    for (int i = 0; i < period_; ++i) {
      sol.offsets.push_back(i);
      sol.offset_values.push_back(results[i].value);
      const bool better = is_minimization(problem_) ? results[i].value < results[best].value
                                                    : results[i].value > results[best].value;
      if (better) best = i;
    }
    sol.best_offset = best;
    sol.total_value = results[best].value;
    sol.periodic = std::move(results[best].state);
    sol.slabs = std::move(results[best].slabs);
    sol.m = m_;
    sol.static_names = std::move(names);
    return sol;
  }

private:
  // G^{w-1} solved by the base solver, per position and vertex.
  States solve_graph_window(int w) const {
    std::vector<VertexPair> es;
    for (int q = 0; q < w; ++q)
      for (const auto& e : edges_)
        if (q + e.offset < w) es.emplace_back(q * nv_ + e.from, (q + e.offset) * nv_ + e.to);
    Graph g = Graph::from_edges(w * nv_, std::move(es));
    if (solver_.requires_planar && !planarity_check(g))
      throw PreconditionError("slab is not planar; base solver '" + solver_.id + "' requires planarity");
    const auto flat = solver_.solve_graph(g);
    return reshape(flat, w);
  }

  States solve_formula_window(int positions, int anchors) const {
    const SFormula g = fpn_formula_window(*formula_, 0, anchors, positions);
    const auto assignment = solver_.solve_formula(g);
    std::vector<char> flat(assignment.begin(), assignment.end());
    return reshape(flat, positions);
  }

  States reshape(const std::vector<char>& flat, int w) const {
    States out(w, std::vector<char>(nv_, 0));
    for (int q = 0; q < w; ++q)
      for (int v = 0; v < nv_; ++v) out[q][v] = flat[q * nv_ + v];
    return out;
  }

  int small(const BigInt& x) const {
    if (x < 0 || x > 100000000) throw BudgetExceeded("slab positions", to_string(x), "100000000");
    return static_cast<int>(x);
  }

  template <class F>
  PeriodicState build(const BigInt& head_end, const BigInt& repeats, F&& state, int body_len = 0) const {
    if (body_len == 0) body_len = period_;
    PeriodicState ps;
    const BigInt h = std::min<BigInt>(head_end, m_ + 1);
    for (BigInt q = 0; q < h; ++q) ps.head.push_back(state(q));
    BigInt tail_start = h;
    if (repeats > 0) {
      for (int r = 0; r < body_len; ++r) ps.body.push_back(state(h + r));
      ps.repeats = repeats;
      tail_start = h + repeats * body_len;
    }
    for (BigInt q = tail_start; q <= m_; ++q) ps.tail.push_back(state(q));
    return ps;
  }

  // Sum of fn(q) over anchors q = 0..m, using one representative period for
  // all but the last repetition of the body.
  template <class F>
  BigInt count_anchors(const PeriodicState& ps, F&& fn) const {
    BigInt total = 0;
    const BigInt h = ps.head.size();
    for (BigInt q = 0; q < h; ++q) total += fn(q);
    BigInt tail_start = h;
    const BigInt L = ps.body.size();
    if (ps.repeats > 0) {
      if (ps.repeats >= 2) {
        BigInt once = 0;
        for (BigInt q = h; q < h + L; ++q) once += fn(q);
        total += once * (ps.repeats - 1);
      }
      for (BigInt q = h + (ps.repeats - 1) * L; q < h + ps.repeats * L; ++q) total += fn(q);
      tail_start = h + ps.repeats * L;
    }
    for (BigInt q = tail_start; q <= m_; ++q) total += fn(q);
    return total;
  }

  BigInt value_of(const PeriodicState& ps) const {
    switch (problem_) {
      case Problem::MIS:
      case Problem::VC:
        return BigInt(ones(ps.head)) + ps.repeats * ones(ps.body) + ones(ps.tail);
      case Problem::MaxCut:
        return count_anchors(ps, [&](const BigInt& q) {
          int cut = 0;
          for (const auto& e : edges_)
            if (q + e.offset <= m_ && ps.at(q)[e.from] != ps.at(q + e.offset)[e.to]) ++cut;
          return cut;
        });
      case Problem::MaxSat:
        return count_anchors(ps, [&](const BigInt& q) {
          int sat = 0;
          for (const auto& c : formula_->clauses) {
            if (q + c.max_offset() > m_) continue;
            for (const auto& lit : c.literals)
              if ((ps.at(q + lit.offset)[lit.var] != 0) != lit.negated) {
                ++sat;
                break;
              }
          }
          return sat;
        });
    }
    return 0;
  }

  OffsetResult whole() const {
    OffsetResult out;
    const int w = small(m_ + 1);
    States all = problem_ == Problem::MaxSat ? solve_formula_window(w, w) : solve_graph_window(w);
    out.slabs.push_back({"whole", 0, m_, all, 0});
    out.state = build(m_ + 1, 0, [&](const BigInt& q) { return all[static_cast<std::size_t>(q)]; });
    out.value = value_of(out.state);
    out.slabs.back().value = out.value;
    return out;
  }

  // 1 if segment b, placed right after a, cuts more edges between them with
  // its sides exchanged.
  int orientation(const States& a, const States& b) const {
    const int wa = static_cast<int>(a.size()), wb = static_cast<int>(b.size());
    long same = 0, cut = 0;
    for (const auto& e : edges_)
      for (int q = std::max(0, wa - e.offset); q < wa; ++q) {
        const int r = q + e.offset - wa;
        if (r >= wb) continue;
        ++(a[q][e.from] != b[r][e.to] ? cut : same);
      }
    return same > cut ? 1 : 0;
  }

  // Segments [0, i), then [i + (n-1)P, i + nP) for n = 1..c-1, then the rest.
  // Each is solved exactly and nothing is deleted; only edges across a
  // boundary can be lost. Exchanging the sides of a segment keeps its value,
  // so each segment is oriented against its left neighbour by majority.
  // Regular segments share one relative orientation, giving a period of P or
  // 2P.
  OffsetResult cut_offset(int i) const {
    if (i > m_) return whole();
    OffsetResult out;
    const int P = period_;
    const BigInt c = (m_ - i) / P + 1;
    const BigInt last_lo = i + (c - 1) * P;
    const States head = i > 0 ? solve_graph_window(i) : States{};
    const States reg = c >= 2 ? solve_graph_window(P) : States{};
    const States last = solve_graph_window(small(m_ - last_lo + 1));
    const States& second = c >= 2 ? reg : last;
    const int o1 = i > 0 ? orientation(head, second) : 0;
    const int step = c >= 3 ? orientation(reg, reg) : 0;
    const int o_last = c >= 2 ? (o1 ^ (static_cast<int>((c - 2) % 2) & step) ^ orientation(reg, last)) : o1;

    auto flipped = [](std::vector<char> row, int o) {
      if (o)
        for (auto& x : row) x ^= 1;
      return row;
    };
    auto state = [&](const BigInt& q) -> std::vector<char> {
      if (q < i) return head[static_cast<std::size_t>(q)];
      if (q >= last_lo) return flipped(last[static_cast<std::size_t>(q - last_lo)], o_last);
      const BigInt rel = q - i;
      const int n = static_cast<int>((rel / P) % 2);  // parity of n - 1
      return flipped(reg[static_cast<std::size_t>(rel % P)], o1 ^ (n & step));
    };
    auto record = [&](const char* role, const BigInt& lo, const States& s) {
      if (!s.empty()) out.slabs.push_back({role, lo, lo + s.size() - 1, s, 0});
    };
    record("first", 0, head);
    record("middle", i, reg);
    record("last", last_lo, last);

    const int body = step ? 2 * P : P;
    const BigInt repeats = c >= 2 ? (c - 1) / (body / P) : BigInt(0);
    out.state = build(BigInt(i), repeats, state, body);
    out.value = value_of(out.state);
    for (auto& slab : out.slabs) {
      const int w = static_cast<int>(slab.state.size());
      long n = 0;
      for (const auto& e : edges_)
        for (int q = 0; q + e.offset < w; ++q) n += slab.state[q][e.from] != slab.state[q + e.offset][e.to];
      slab.value = n;
    }
    return out;
  }

  // Positions i, i+1, ..., i+band-1 (mod P) are boundaries. Segment 0 is
  // [0, i+band); segment p >= 1 is [(p-1)P+i+band, pP+i+band); the last
  // slab follows segment t-1. Segments 1..t-2 are identical.
  OffsetResult delete_offset(int i) const {
    OffsetResult out;
    if (i > m_) return whole();
    const int P = period_, b = band_;
    const BigInt t = ceil_div(m_ - i + 1, P);
    const BigInt last_lo = (t - 1) * P + i + b;
    const int last_w = last_lo > m_ ? 0 : small(m_ - last_lo + 1);

    // Representative solves. Boundary positions of graph problems stay out of
    // the set; for formulas the boundary variables belong to the segment and
    // only the boundary clauses are dropped.
    States head, mid, last, seg_end;
    if (problem_ == Problem::MaxSat) {
      head = solve_formula_window(small(std::min<BigInt>(m_ + 1, i + b)), i);
      if (t >= 2) {
        const BigInt lo = (t - 2) * P + i + b;
        seg_end = solve_formula_window(std::min<int>(P, small(m_ - lo + 1)), P - b);
      }
      if (t >= 3) mid = solve_formula_window(P, P - b);
      if (last_w > 0) last = solve_formula_window(last_w, last_w);
    } else {
      head = i > 0 ? solve_graph_window(i) : States{};
      if (t >= 2) mid = solve_graph_window(P - b);
      if (last_w > 0) last = solve_graph_window(last_w);
    }

    auto record = [&](const char* role, const BigInt& lo, const States& s) {
      if (s.empty()) return;
      SlabSolution slab{role, lo, lo + s.size() - 1, s, 0};
      slab.value = problem_ == Problem::MaxSat ? BigInt(0) : BigInt(ones(s));
      out.slabs.push_back(std::move(slab));
    };

    std::function<std::vector<char>(const BigInt&)> state;
    if (problem_ == Problem::MaxSat) {
      record("first", 0, head);
      if (t >= 3) record("middle", i + b, mid);
      if (t >= 2) record("middle-last", (t - 2) * P + i + b, seg_end);
      record("last", last_lo, last);
      state = [&, t, last_lo](const BigInt& q) -> std::vector<char> {
        if (q < i + b) return head[static_cast<std::size_t>(q)];
        if (q >= last_lo) return last[static_cast<std::size_t>(q - last_lo)];
        const BigInt p = (q - i - b) / P + 1;
        const int off = static_cast<int>((q - i - b) % P);
        return p == t - 1 ? seg_end[off] : mid[off];
      };
    } else {
      record("first", 0, head);
      if (t >= 2) record("middle", i + b, mid);
      record("last", last_lo, last);
      // Slab states, zero on boundary positions.
      auto slab_state = [&, last_lo](const BigInt& q) -> std::vector<char> {
        if (q < 0 || q > m_) return std::vector<char>(nv_, 0);
        if (q < i) return head[static_cast<std::size_t>(q)];
        if (q >= last_lo) return last[static_cast<std::size_t>(q - last_lo)];
        if (q < i + b) return std::vector<char>(nv_, 0);
        const int off = static_cast<int>((q - i - b) % P);
        return off < P - b ? mid[off] : std::vector<char>(nv_, 0);
      };
      state = slab_state;
    }
    const BigInt repeats = t >= 3 ? BigInt(t - 2) : BigInt(0);
    out.state = build(BigInt(i + b), repeats, state);
    out.value = value_of(out.state);
    return out;
  }

  // Windows of P+band positions starting at a0 + jP, a0 = (i == 0 ? 0 : i-P),
  // clamped to [0, m]; consecutive windows share band positions.
  OffsetResult overlap_offset(int i) const {
    OffsetResult out;
    const int P = period_, b = band_;
    const BigInt a0 = i == 0 ? BigInt(0) : BigInt(i - P);
    const BigInt J = floor_div(m_ - a0, P);
    auto start = [&](const BigInt& j) { return std::max<BigInt>(0, a0 + j * P); };
    auto end = [&](const BigInt& j) { return std::min<BigInt>(m_, a0 + j * P + P + b - 1); };
    const bool drop_last = J >= 1 && end(J) <= end(J - 1);
    const BigInt last_kept = drop_last ? J - 1 : J;

    std::map<int, States> cover;
    auto cover_of = [&](const BigInt& j) -> const States& {
      const int w = small(end(j) - start(j) + 1);
      auto it = cover.find(w);
      if (it == cover.end()) it = cover.emplace(w, solve_graph_window(w)).first;
      return it->second;
    };
    // Solve the representative windows up front.
    cover_of(0);
    if (last_kept >= 1) cover_of(last_kept);
    if (last_kept >= 2) cover_of(1);
    for (const auto& [w, s] : cover) {
      SlabSolution slab{"window", 0, BigInt(w - 1), s, BigInt(ones(s))};
      out.slabs.push_back(std::move(slab));
    }

    auto state = [&](const BigInt& q) {
      std::vector<char> row(nv_, 0);
      BigInt jq = floor_div(q - a0, P);
      if (jq > last_kept) jq = last_kept;
      for (BigInt j = jq; j >= 0 && j >= jq - 1; --j) {
        if (q < start(j) || q > end(j)) continue;
        const auto& s = cover.at(static_cast<int>(end(j) - start(j) + 1));
        const auto& src = s[static_cast<std::size_t>(q - start(j))];
        for (int v = 0; v < nv_; ++v) row[v] |= src[v];
      }
      return row;
    };

    // Positions in [A, B) lie only in full interior windows.
    const BigInt A = std::max<BigInt>(0, a0 + P + b);
    BigInt first_partial = ceil_div(m_ - a0 - P - b + 2, P);  // first j whose window is clamped at m
    if (first_partial < 1) first_partial = 1;
    const BigInt B = a0 + first_partial * P;
    const BigInt repeats = B > A ? floor_div(B - A, P) : BigInt(0);
    out.state = build(A, A <= m_ ? repeats : BigInt(0), state);
    out.value = value_of(out.state);
    return out;
  }

  Problem problem_;
  SchemeOptions opt_;
  SolverContract solver_;
  BigInt m_;
  int nv_;
  int k_ = 1;
  int band_ = 1;
  int period_ = 1;
  std::vector<StaticEdge> edges_;
  const FPNFormula* formula_ = nullptr;
};

ApproxSolution run_fpn(const FPNSpec& spec, Problem problem, const SchemeOptions& opt) {
  FpnScheme scheme(problem, opt, fpn_narrowness(spec), spec.m, static_cast<int>(spec.vertices.size()));
  scheme.set_graph(spec);
  return scheme.run(SourceKind::FPN, spec.vertices);
}

}  // namespace

ApproxSolution fpn_mis(const FPNSpec& spec, const SchemeOptions& opt) { return run_fpn(spec, Problem::MIS, opt); }
ApproxSolution fpn_vc(const FPNSpec& spec, const SchemeOptions& opt) { return run_fpn(spec, Problem::VC, opt); }
ApproxSolution fpn_maxcut(const FPNSpec& spec, const SchemeOptions& opt) {
  return run_fpn(spec, Problem::MaxCut, opt);
}

ApproxSolution fpn_maxsat(const FPNFormula& f, const SchemeOptions& opt) {
  FpnScheme scheme(Problem::MaxSat, opt, f.narrowness(), f.m, static_cast<int>(f.variables.size()));
  scheme.set_formula(f);
  return scheme.run(SourceKind::FPNFormula, f.variables);
}

}  // namespace sgat
