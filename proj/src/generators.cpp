#include "sgat/generators.hpp"

#include "sgat/errors.hpp"
#include "sgat/expansion.hpp"
#include "sgat/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace sgat::gen {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::vector<int> pick_distinct(std::mt19937_64& rng, int n, int k) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

}  // namespace

LSpec bintree(int n) {
  if (n < 1) throw PreconditionError("bintree needs n >= 1");
  LSpec spec;
  spec.name = "bintree" + std::to_string(n);
  for (int h = 1; h <= n; ++h) {
    const bool top = h == n;
    Cell cell;
    cell.name = top ? "Top" : "T" + std::to_string(h);
    cell.pins = top ? 0 : 1;
    cell.vertices = {"r"};
    if (!top) cell.edges.push_back({Terminal::pin(1), Terminal::vertex(0)});
    if (h >= 2)
      for (const char* side : {"L", "R"})
        cell.nonterminals.push_back({side, h - 2, {{1, Terminal::vertex(0)}}});
    spec.cells.push_back(std::move(cell));
  }
  return spec;
}

LSpec tri() {
  return parse_lspec(
      "lspec TRI\n"
      "cell G1 pins 2\n"
      "  vertex a\n"
      "  edge pin:1 a\n"
      "  edge a pin:2\n"
      "cell G2 pins 0\n"
      "  vertex u\n"
      "  vertex v\n"
      "  edge u v\n"
      "  nonterm X type G1\n"
      "  bind X 1 u\n"
      "  bind X 2 v\n");
}

LSpec rand_lspec(const RandSpecOptions& opt, std::uint64_t seed) {
  if (opt.cells < 1 || opt.max_locals < 2 || opt.max_pins < 0)
    throw PreconditionError("rand_lspec: invalid options");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    LSpec spec;
    spec.name = "rand" + std::to_string(seed);
    std::vector<long> size;  // expanded vertices per cell
    bool ok = true;
    for (int i = 0; i < opt.cells && ok; ++i) {
      const bool top = i == opt.cells - 1;
      Cell cell;
      cell.name = "C" + std::to_string(i + 1);
      cell.pins = top ? 0 : uniform(rng, 0, opt.max_pins);
      const int nloc = uniform(rng, 2, opt.max_locals);
      for (int v = 0; v < nloc; ++v) cell.vertices.push_back("v" + std::to_string(v + 1));
      for (int a = 0; a < nloc; ++a)
        for (int b = a + 1; b < nloc; ++b)
          if (chance(rng, opt.edge_density)) cell.edges.push_back({Terminal::vertex(a), Terminal::vertex(b)});
      for (int k = 1; k <= cell.pins; ++k) {
        auto targets = pick_distinct(rng, nloc, chance(rng, 0.3) ? 2 : 1);
        for (int t : targets) cell.edges.push_back({Terminal::pin(k), Terminal::vertex(t)});
      }

      long total = nloc;
      const int wanted = i == 0 ? 0 : uniform(rng, 1, opt.max_calls);
      for (int c = 0; c < wanted; ++c) {
        const int callee = c == 0 ? i - 1 : uniform(rng, 0, i - 1);
        const int p = spec.cells[callee].pins;
        if (total + size[callee] > opt.max_expanded) {
          if (c == 0) ok = false;
          break;
        }
        // Candidate terminals: locals, plus pins when pin bindings are allowed.
        std::vector<Terminal> pool;
        for (int v = 0; v < nloc; ++v) pool.push_back(Terminal::vertex(v));
        for (int k = 1; k <= cell.pins; ++k)
          if (chance(rng, opt.pin_binding)) pool.push_back(Terminal::pin(k));
        if (static_cast<int>(pool.size()) < p) {
          if (c == 0) ok = false;
          break;
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        Nonterminal nt{"N" + std::to_string(c + 1), callee, {}};
        for (int k = 1; k <= p; ++k) nt.bindings.push_back({k, pool[k - 1]});
        cell.nonterminals.push_back(std::move(nt));
        total += size[callee];
      }
      size.push_back(total);
      spec.cells.push_back(std::move(cell));
    }
    if (!ok) continue;
    if (!validate_lspec(spec).ok()) continue;
    auto g = expand(spec, opt.max_expanded);
    if (!planarity_check(g.graph())) continue;
    return spec;
  }
  throw PreconditionError("rand_lspec: no planar instance within the retry budget");
}

FPNSpec fpnpath(const BigInt& m) {
  FPNSpec spec;
  spec.m = m;
  spec.vertices = {"v"};
  spec.edges = {{0, 0, 1}};
  return spec;
}

FPNSpec fpnladder(const BigInt& m) {
  FPNSpec spec;
  spec.m = m;
  spec.vertices = {"a", "b"};
  spec.edges = {{0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  return spec;
}

FPNSpec randfpn(const RandFpnOptions& opt, std::uint64_t seed) {
  if (opt.vertices < 1 || opt.k < 0) throw PreconditionError("randfpn: invalid options");
  std::mt19937_64 rng(seed);
  FPNSpec spec;
  spec.m = opt.m;
  for (int v = 0; v < opt.vertices; ++v) spec.vertices.push_back("v" + std::to_string(v + 1));
  for (int u = 0; u < opt.vertices; ++u)
    for (int v = 0; v < opt.vertices; ++v)
      for (int t = 0; t <= opt.k; ++t) {
        if (t == 0 && u >= v) continue;  // offset-0 edges are undirected; keep one orientation
        if (chance(rng, opt.density)) spec.edges.push_back({u, v, t});
      }
  return spec;
}

LFormula nested_formula() {
  return parse_lformula(
      "lformula\n"
      "relation OR3 arity 3 tuples 100,010,110,001,101,011,111\n"
      "relation OR2 arity 2 tuples 10,01,11\n"
      "fcell F1 in x1,x2\n"
      "  local z1,z2,z3\n"
      "  clause OR3(x1,x2,z1)\n"
      "  clause OR2(z2,z3)\n"
      "fcell F2 in x3,x4\n"
      "  local z4,z5\n"
      "  call F1(x3,z4)\n"
      "  call F1(z4,z5)\n"
      "  clause OR3(z4,z5,x4)\n"
      "fcell F3\n"
      "  local z6,z7,z8\n"
      "  call F1(z7,z6)\n"
      "  call F2(z8,z7)\n");
}

namespace {

std::vector<BoolRelation> small_relations() {
  auto rel = [](std::string name, int arity, std::vector<std::uint32_t> tuples) {
    std::sort(tuples.begin(), tuples.end());
    return BoolRelation{std::move(name), arity, std::move(tuples)};
  };
  return {
      rel("ONE", 1, {1}),
      rel("ZERO", 1, {0}),
      rel("OR2", 2, {1, 2, 3}),
      rel("NAND2", 2, {0, 1, 2}),
      rel("XOR2", 2, {1, 2}),
      rel("EQ2", 2, {0, 3}),
      rel("OR3", 3, {1, 2, 3, 4, 5, 6, 7}),
      rel("ONEOF3", 3, {1, 2, 4}),
  };
}

}  // namespace

LFormula rand_lformula(const RandFormulaOptions& opt, std::uint64_t seed) {
  if (opt.cells < 1 || opt.max_locals < 1) throw PreconditionError("rand_lformula: invalid options");
  std::mt19937_64 rng(seed);
  const int min_locals = std::max(1, opt.max_interface);
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    LFormula f;
    f.relations = small_relations();
    std::vector<long> size;  // expanded variables, interface excluded
    bool ok = true;
    for (int i = 0; i < opt.cells && ok; ++i) {
      const bool top = i == opt.cells - 1;
      FormulaCell cell;
      cell.name = "F" + std::to_string(i + 1);
      const int ni = top ? 0 : uniform(rng, 0, opt.max_interface);
      const int nl = uniform(rng, min_locals, std::max(min_locals, opt.max_locals));
      for (int v = 0; v < ni; ++v) cell.interface.push_back("x" + std::to_string(v + 1));
      for (int v = 0; v < nl; ++v) cell.locals.push_back("z" + std::to_string(v + 1));
      const int slots = ni + nl;
      const int nclauses = uniform(rng, 1, opt.max_clauses);
      for (int c = 0; c < nclauses; ++c) {
        int r = uniform(rng, 0, static_cast<int>(f.relations.size()) - 1);
        if (f.relations[r].arity > slots) r = 0;
        cell.clauses.push_back({r, pick_distinct(rng, slots, f.relations[r].arity)});
      }
      long total = nl;
      const int wanted = i == 0 ? 0 : uniform(rng, 1, opt.max_calls);
      for (int c = 0; c < wanted; ++c) {
        const int callee = c == 0 ? i - 1 : uniform(rng, 0, i - 1);
        if (total + size[callee] > opt.max_expanded_vars) {
          if (c == 0) ok = false;
          break;
        }
        FormulaCall call{callee, {}};
        for (int a : pick_distinct(rng, nl, static_cast<int>(f.cells[callee].interface.size())))
          call.args.push_back(ni + a);
        cell.calls.push_back(std::move(call));
        total += size[callee];
      }
      size.push_back(total);
      f.cells.push_back(std::move(cell));
    }
    if (ok && validate_lformula(f).empty()) return f;
  }
  throw PreconditionError("rand_lformula: no instance within the retry budget");
}

LFormula contradiction_formula(int copies) {
  if (copies < 1) throw PreconditionError("contradiction_formula needs copies >= 1");
  LFormula f;
  f.relations = {BoolRelation{"ONE", 1, {1}}, BoolRelation{"ZERO", 1, {0}}};
  FormulaCell base{"P", {}, {"x"}, {{0, {0}}, {1, {0}}}, {}};
  FormulaCell top{"Top", {}, {}, {}, {}};
  for (int i = 0; i < copies; ++i) top.calls.push_back({0, {}});
  f.cells = {base, top};
  return f;
}

}  // namespace sgat::gen
