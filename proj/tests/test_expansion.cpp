#include "oracles.hpp"

#include "sgat/errors.hpp"
#include "sgat/expansion.hpp"
#include "sgat/generators.hpp"
#include "sgat/hierarchy.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sgat;

namespace {

oracle::NamedGraph named(const ExpandedGraph& g) {
  oracle::NamedGraph out;
  for (const auto& n : g.names()) out.vertices.insert(n);
  for (auto [u, v] : g.graph().edges) out.add_edge(g.names()[u], g.names()[v]);
  return out;
}

// Owner depth of an address is the number of path components.
int depth_of(const std::string& addr) { return static_cast<int>(std::count(addr.begin(), addr.end(), '/')); }

}  // namespace

TEST(Expand, Triangle) {
  auto g = expand(gen::tri(), 100);
  EXPECT_EQ(g.names(), (std::vector<std::string>{"X/a", "u", "v"}));
  EXPECT_EQ(g.graph().edges.size(), 3u);
  EXPECT_FALSE(g.collapsed());
  auto c = count_expansion(gen::tri());
  EXPECT_EQ(c.total_vertices(), 3);
  EXPECT_EQ(c.total_edges(), 3);
  EXPECT_EQ(serialize(g), "v X/a\nv u\nv v\ne X/a u\ne X/a v\ne u v\n");
}

TEST(Expand, SingleCell) {
  auto spec = parse_lspec("lspec S\ncell G pins 0\n vertex a\n vertex b\n vertex c\n edge a b\n edge b c\n");
  auto g = expand(spec, 10);
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.graph().edges.size(), 2u);
  auto c = count_expansion(spec);
  EXPECT_EQ(c.total_vertices(), 3);
  EXPECT_EQ(c.total_edges(), 2);
}

TEST(Expand, BinaryTreeMatchesDirectTree) {
  for (int n = 1; n <= 10; ++n) {
    auto spec = gen::bintree(n);
    auto g = expand(spec, 1 << 12);
    ASSERT_EQ(g.size(), (1 << n) - 1);
    EXPECT_EQ(count_expansion(spec).total_vertices(), (1 << n) - 1);
    // A tree: connected with n-1 edges, and every non-root has exactly one
    // neighbour one level up.
    EXPECT_EQ(static_cast<int>(g.graph().edges.size()), g.size() - 1);
    EXPECT_EQ(g.graph().components().size(), 1u);
    for (auto [u, v] : g.graph().edges)
      EXPECT_EQ(std::abs(depth_of(g.names()[u]) - depth_of(g.names()[v])), 1);
  }
  EXPECT_EQ(to_string(count_expansion(gen::bintree(200)).total_vertices()),
            to_string((BigInt(1) << 200) - 1));
}

TEST(Expand, AgreesWithRecursiveOracle) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    gen::RandSpecOptions opt;
    opt.cells = 2 + seed % 5;
    opt.pin_binding = seed % 3 == 0 ? 0.5 : 0.0;
    opt.max_expanded = 60;
    auto spec = gen::rand_lspec(opt, seed);
    auto g = expand(spec, 1000);
    auto want = oracle::expand(spec);
    auto got = named(g);
    EXPECT_EQ(got.vertices, want.vertices) << serialize(spec);
    EXPECT_EQ(got.edges, want.edges) << serialize(spec);
    auto c = count_expansion(spec);
    EXPECT_EQ(c.total_vertices(), g.size());
    EXPECT_EQ(c.total_edges(), g.graph().edges.size());
  }
}

TEST(Expand, DeclarationOrderInvariance) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto spec = gen::rand_lspec({}, seed);
    auto shuffled = spec;
    for (auto& cell : shuffled.cells) std::shuffle(cell.nonterminals.begin(), cell.nonterminals.end(), rng);
    auto a = expand(spec, 1000), b = expand(shuffled, 1000);
    EXPECT_EQ(a.names(), b.names());
    EXPECT_EQ(a.graph().edges, b.graph().edges);
  }
}

TEST(Expand, BudgetReportsExactCount) {
  try {
    expand(gen::bintree(70), 1000);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), to_string((BigInt(1) << 70) - 1));
    EXPECT_EQ(e.budget(), "1000");
  }
}

TEST(LevelRestriction, Values) {
  EXPECT_EQ(level_restriction(gen::tri()), 1);
  EXPECT_EQ(level_restriction(gen::bintree(6)), 1);
  EXPECT_EQ(level_restriction(parse_lspec("lspec S\ncell G pins 0\n vertex a\n vertex b\n edge a b\n")), 0);
  // The pin of G1 is handed through G2's pin to the top: two levels.
  auto two = parse_lspec(
      "lspec S\ncell G1 pins 1\n vertex a\n edge pin:1 a\ncell G2 pins 1\n vertex b\n edge pin:1 b\n"
      " nonterm X type G1\n bind X 1 pin:1\ncell G3 pins 0\n vertex t\n nonterm Y type G2\n bind Y 1 t\n");
  EXPECT_EQ(level_restriction(two), 2);
}

TEST(LevelRestriction, BoundsEveryExpandedEdge) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    gen::RandSpecOptions opt;
    opt.cells = 3 + seed % 4;
    opt.pin_binding = 0.6;
    opt.max_expanded = 60;
    auto spec = gen::rand_lspec(opt, seed);
    const int k = level_restriction(spec);
    auto g = expand(spec, 1000);
    int worst = 0;
    for (auto [u, v] : g.graph().edges) {
      // Endpoint owners lie on one root path, so depth difference is the
      // tree distance between them.
      worst = std::max(worst, std::abs(depth_of(g.names()[u]) - depth_of(g.names()[v])));
    }
    EXPECT_EQ(worst, k) << serialize(spec);
  }
}

TEST(ResolveAddress, Cases) {
  auto spec = gen::tri();
  auto r = resolve_address(spec, VertexAddress::parse("X/a"));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.cell, 0);
  EXPECT_EQ(r.depth, 1);
  r = resolve_address(spec, VertexAddress::parse("u"));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.cell, 1);
  EXPECT_EQ(r.depth, 0);
  EXPECT_FALSE(resolve_address(spec, VertexAddress::parse("Y/a")).valid);
  EXPECT_FALSE(resolve_address(spec, VertexAddress::parse("X/zz")).valid);
}

TEST(ExpandFpn, PathAndBoundaries) {
  auto g = expand_fpn(gen::fpnpath(4), 100);
  EXPECT_EQ(g.size(), 5);
  EXPECT_EQ(g.graph().edges.size(), 4u);
  EXPECT_GE(g.find("v@4"), 0);
  EXPECT_TRUE(g.graph().adj[g.find("v@2")] == (std::vector<int>{g.find("v@1"), g.find("v@3")}));

  auto iso = expand_fpn(parse_fpn("fpn m=0\nvertex a\nvertex b\nedge a b 1\n"), 100);
  EXPECT_EQ(iso.size(), 2);
  EXPECT_TRUE(iso.graph().edges.empty());

  auto wide = parse_fpn("fpn m=4\nvertex a\nvertex b\nvertex c\nvertex d\nedge a b 1\nedge c d 0\n");
  EXPECT_EQ(expand_fpn(wide, 100).size(), 4 * 5);

  EXPECT_THROW(expand_fpn(gen::fpnpath(BigInt(1) << 80), 1000), BudgetExceeded);
}

TEST(ExpandFpn, OffsetsBoundEdgeSpan) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    gen::RandFpnOptions opt;
    opt.k = 1 + seed % 3;
    opt.m = 12;
    auto spec = gen::randfpn(opt, seed);
    auto g = expand_fpn(spec, 1000);
    for (auto [u, v] : g.graph().edges) {
      auto pos = [&](int x) { return std::stoi(g.names()[x].substr(g.names()[x].find('@') + 1)); };
      EXPECT_LE(std::abs(pos(u) - pos(v)), opt.k);
    }
  }
}

TEST(ExpandFormula, NestedExample) {
  auto e = expand_formula(gen::nested_formula(), 1000);
  ASSERT_EQ(e.clauses.size(), 7u);
  EXPECT_EQ(e.variables.size(), 14u);
  // Reference clause list: top locals z6, z7, z8; the F2 call has z4, z5;
  // three F1 copies each contribute fresh z1, z2, z3.
  std::multiset<std::multiset<std::string>> got, want;
  for (const auto& c : e.clauses) {
    std::multiset<std::string> vars;
    for (int v : c.vars) vars.insert(e.variables[v]);
    got.insert(vars);
  }
  want = {{"z7", "z6", "F1_1/z1"},         {"F1_1/z2", "F1_1/z3"},
          {"z8", "F2_1/z4", "F2_1/F1_1/z1"}, {"F2_1/F1_1/z2", "F2_1/F1_1/z3"},
          {"F2_1/z4", "F2_1/z5", "F2_1/F1_2/z1"}, {"F2_1/F1_2/z2", "F2_1/F1_2/z3"},
          {"F2_1/z4", "F2_1/z5", "z7"}};
  EXPECT_EQ(got, want);
}

TEST(ExpandFormula, SingleCellAndCounts) {
  auto f = parse_lformula("relation R arity 2 tuples 11\nfcell A\n  clause R(a,b)\n  clause R(b,c)\n");
  auto e = expand_formula(f, 100);
  EXPECT_EQ(e.clauses.size(), 2u);
  EXPECT_EQ(e.variables.size(), 3u);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = gen::rand_lformula({}, seed);
    auto h = Hierarchy::from_lformula(r);
    auto x = expand_formula(r, 10000);
    EXPECT_EQ(h.expanded_items(h.top()), x.clauses.size());
    EXPECT_EQ(h.expanded_locals(h.top()), x.variables.size());
  }
}

TEST(ExpandFormula, PeriodicCnf) {
  auto f = parse_fpn_formula(
      "fpncnf m=3\nvar x1 x2 x3\nclause x1@0 x2@0 x3@0\nclause x1@1 x3@0\nclause x3@1 x2@0\n");
  auto e = expand_fpn_formula(f, 1000);
  ASSERT_EQ(e.clauses.size(), 10u);
  auto text = [&](const RelClause& c) {
    std::string s;
    for (int v : c.vars) s += e.variables[v] + " ";
    return s;
  };
  EXPECT_EQ(text(e.clauses.front()), "x1@0 x2@0 x3@0 ");
  EXPECT_EQ(text(e.clauses[3]), "x1@1 x2@1 x3@1 ");
  EXPECT_EQ(text(e.clauses.back()), "x1@3 x2@3 x3@3 ");
  // Every clause is a plain disjunction.
  for (const auto& c : e.clauses) EXPECT_EQ(e.relations[c.relation].tuples.size(), (1u << c.vars.size()) - 1);
}
