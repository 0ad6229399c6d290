#include "oracles.hpp"

#include "sgat/errors.hpp"
#include "sgat/expansion.hpp"
#include "sgat/generators.hpp"
#include "sgat/partial.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace sgat;

namespace {

std::set<std::string> names(const ExpandedGraph& g) { return {g.names().begin(), g.names().end()}; }

int depth_of(const std::string& address) { return static_cast<int>(std::count(address.begin(), address.end(), '/')); }

}  // namespace

TEST(PartialExpand, TriangleDepthZero) {
  auto pe = partial_expand(gen::tri(), 1, 0, Boundary::Delete, 1, 1000);
  EXPECT_EQ(pe.explicit_graph.size(), 0);
  ASSERT_EQ(pe.frontier.size(), 1u);
  EXPECT_EQ(pe.frontier[0].first, 0);
  EXPECT_EQ(pe.frontier[0].second, 1);
  EXPECT_EQ(pe.deleted_level_count, 2);
  EXPECT_FALSE(pe.empty);
}

TEST(PartialExpand, TriangleDepthOne) {
  auto pe = partial_expand(gen::tri(), 1, 1, Boundary::Delete, 1, 1000);
  EXPECT_EQ(names(pe.explicit_graph), (std::set<std::string>{"u", "v"}));
  EXPECT_EQ(pe.explicit_graph.graph().edges.size(), 1u);
  EXPECT_TRUE(pe.frontier.empty());
  EXPECT_EQ(pe.deleted_level_count, 1);
}

TEST(PartialExpand, ChildlessCell) {
  auto pe = partial_expand(gen::tri(), 0, 1, Boundary::Delete, 1, 1000);
  EXPECT_EQ(names(pe.explicit_graph), (std::set<std::string>{"a"}));
  EXPECT_EQ(pe.explicit_graph.graph().edges.size(), 0u);  // pins excluded
  EXPECT_TRUE(pe.frontier.empty());
  EXPECT_EQ(pe.deleted_level_count, 0);

  auto zero = partial_expand(gen::tri(), 0, 0, Boundary::Delete, 1, 1000);
  EXPECT_EQ(zero.explicit_graph.size(), 0);
  EXPECT_TRUE(zero.frontier.empty());
}

TEST(PartialExpand, OverlapKeepsBoundary) {
  auto pe = partial_expand(gen::tri(), 1, 0, Boundary::KeepOverlap, 1, 1000);
  EXPECT_EQ(names(pe.explicit_graph), (std::set<std::string>{"u", "v"}));
  ASSERT_EQ(pe.frontier.size(), 1u);
  EXPECT_EQ(pe.frontier[0].first, 1);  // the root itself at depth 0
}

TEST(PartialExpand, FrontierCountsAreExact) {
  auto pe = partial_expand(gen::bintree(70), 69, 10, Boundary::Delete, 1, 1000000);
  EXPECT_EQ(pe.explicit_graph.size(), (1 << 10) - 1);
  ASSERT_EQ(pe.frontier.size(), 1u);
  EXPECT_EQ(pe.frontier[0].first, 69 - 11);
  EXPECT_EQ(pe.frontier[0].second, 1 << 11);
  EXPECT_EQ(pe.deleted_level_count, 1 << 10);
  EXPECT_THROW(partial_expand(gen::bintree(70), 69, 30, Boundary::Delete, 1, 1000), BudgetExceeded);
}

// Kept vertices, deleted vertices and frontier subtrees partition the
// expansion, and no expanded edge leaves a kept region for a frontier
// subtree of a 1-level-restricted spec.
TEST(PartialExpand, PartitionAndNoCrossEdges) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    LSpec spec = gen::rand_lspec({}, seed);
    auto full = oracle::expand(spec);
    const int n = static_cast<int>(spec.cells.size()) - 1;
    for (int j = 0; j <= 3; ++j) {
      auto pe = partial_expand(spec, n, j, Boundary::Delete, 1, 100000);
      BigInt below = 0;
      std::map<int, int> deeper;
      for (const auto& v : full.vertices) {
        const int d = depth_of(v);
        if (d < j) EXPECT_TRUE(pe.explicit_graph.find(v) >= 0) << v;
        if (d > j) ++below;
      }
      BigInt deleted = 0, kept = 0;
      for (const auto& v : full.vertices) {
        deleted += depth_of(v) == j;
        kept += depth_of(v) < j;
      }
      EXPECT_EQ(kept, pe.explicit_graph.size());
      EXPECT_EQ(deleted, pe.deleted_level_count);
      // Frontier subtrees hold everything deeper.
      BigInt frontier_vertices = 0;
      const auto counts = count_expansion(spec);
      for (const auto& [cell, mult] : pe.frontier) frontier_vertices += mult * counts.vertices[cell];
      EXPECT_EQ(frontier_vertices, below);
      for (const auto& [a, b] : full.edges) {
        const int da = depth_of(a), db = depth_of(b);
        EXPECT_FALSE((da < j && db > j) || (db < j && da > j)) << a << " " << b;
      }
    }
  }
}

TEST(FpnSlabs, FigureExample) {
  auto s = fpn_slabs(9, 3, 3);
  EXPECT_EQ(s.t, 2);
  ASSERT_EQ(s.slabs.size(), 3u);
  EXPECT_EQ(s.slabs[0].lo, 0);
  EXPECT_EQ(s.slabs[0].hi, 2);
  EXPECT_EQ(s.slabs[1].lo, 4);
  EXPECT_EQ(s.slabs[1].hi, 6);
  EXPECT_EQ(s.slabs[1].multiplicity, 1);
  EXPECT_EQ(s.slabs[2].lo, 8);
  EXPECT_EQ(s.slabs[2].hi, 9);
}

TEST(FpnSlabs, ClampsAndDegenerateCases) {
  auto s = fpn_slabs(2, 0, 3);
  ASSERT_EQ(s.slabs.size(), 1u);
  EXPECT_EQ(s.slabs[0].lo, 1);
  EXPECT_EQ(s.slabs[0].hi, 2);

  auto none = fpn_slabs(2, 3, 3);
  ASSERT_EQ(none.slabs.size(), 1u);
  EXPECT_EQ(none.slabs[0].role, "whole");
  EXPECT_EQ(none.slabs[0].hi, 2);
}

// Slabs and deleted positions cover 0..m exactly once, for any band width.
TEST(FpnSlabs, CoverPositions) {
  for (int band = 1; band <= 3; ++band)
    for (int l = 1; l <= 4; ++l)
      for (int m = 0; m <= 40; ++m)
        for (int i = 0; i < band * (l + 1); ++i) {
          auto s = fpn_slabs(m, i, l, band);
          BigInt covered = 0;
          for (const auto& slab : s.slabs) {
            covered += slab.width() * slab.multiplicity;
            if (slab.role == "middle") EXPECT_EQ(slab.width(), band * l);
          }
          // Boundary residues may wrap below i, so count by residue.
          const int period = band * (l + 1);
          int deleted = 0;
          if (i <= m)
            for (int q = 0; q <= m; ++q) deleted += ((q - i) % period + period) % period < band;
          EXPECT_EQ(covered + deleted, m + 1) << m << " " << l << " " << i << " " << band;
        }
}

TEST(FpnSlabs, HugeM) {
  BigInt m = boost::multiprecision::pow(BigInt(10), 30);
  auto s = fpn_slabs(m, 1, 3);
  EXPECT_EQ(s.slabs[1].multiplicity, s.t - 1);
  EXPECT_EQ(s.t, ceil_div(m, 4));
}

TEST(FormulaPieces, OneCellFormula) {
  LFormula f = gen::contradiction_formula(1);
  f.cells.pop_back();
  for (int j : formula_offsets(1, 0)) {
    auto fp = formula_pieces(f, 1, j, 0, 1000);
    BigInt kept = 0;
    for (const auto& p : fp.pieces) kept += p.multiplicity * p.formula.clauses.size();
    EXPECT_TRUE(kept == 2 || kept == 0);
    EXPECT_EQ(kept + fp.deleted_clauses, 2);
  }
}

TEST(FormulaPieces, Offsets) {
  EXPECT_EQ(formula_offsets(1, 1), (std::vector<int>{0}));
  EXPECT_EQ(formula_offsets(2, 1), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(formula_offsets(3, 1), (std::vector<int>{0, 2}));
  EXPECT_EQ(formula_offsets(1, 2).size(), 4u);
}

// Kept clause sets of distinct piece instances never share a variable: the
// total over piece classes times multiplicity plus the deleted clauses is
// the clause count, and each class is self-contained.
TEST(FormulaPieces, NestedExampleAccounting) {
  const LFormula f = gen::nested_formula();
  const SFormula full = expand_formula(f, 1000);
  for (int l = 1; l <= 3; ++l)
    for (int j : formula_offsets(l, 2)) {
      auto fp = formula_pieces(f, l, j, 2, 1000);
      BigInt kept = 0;
      for (const auto& p : fp.pieces) kept += p.multiplicity * p.formula.clauses.size();
      EXPECT_EQ(kept + fp.deleted_clauses, full.clauses.size());
      EXPECT_GE(fp.deleted_clauses, 0);
    }
}

TEST(FormulaPieces, LatticeGroupsAreDisjoint) {
  const FPNFormula f = parse_fpn_formula(
      "fpncnf m=9\n"
      "var x\n"
      "var y\n"
      "clause x@0 !y@1\n"
      "clause !x@0 y@0\n");
  const SFormula full = expand_fpn_formula(f, 1000);
  for (int i = 0; i < 2; ++i) {
    auto fp = fpn_formula_pieces(f, 1, i);
    BigInt kept = 0;
    for (const auto& p : fp.pieces) kept += p.multiplicity * p.formula.clauses.size();
    EXPECT_EQ(kept + fp.deleted_clauses, full.clauses.size());
  }
}
