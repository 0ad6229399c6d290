#include "checks.hpp"

#include "sgat/errors.hpp"
#include "sgat/generators.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace sgat;

namespace {

SchemeOptions with_l(int l) {
  SchemeOptions o;
  o.l = l;
  return o;
}

}  // namespace

TEST(Emit, TriangleMis) {
  const auto sol = h_mis(gen::tri(), with_l(1));
  const LSpec spec = emit_solution_lspec(sol);
  EXPECT_TRUE(validate_lspec(spec).ok()) << validate_lspec(spec).str();
  EXPECT_EQ(checks::emit_set(sol), (std::set<std::string>{"X/a"}));
  EXPECT_EQ(parse_lspec(serialize(spec)), spec);
}

TEST(Emit, EmptySolutionKeepsTopCell) {
  const auto sol = h_mis(parse_lspec("lspec E\ncell G pins 0\n"), with_l(1));
  const LSpec spec = emit_solution_lspec(sol);
  ASSERT_EQ(spec.cells.size(), 1u);
  EXPECT_TRUE(spec.cells[0].vertices.empty());
  EXPECT_EQ(solution_size(sol), 0);
  EXPECT_EQ(stream_solution(sol, [](const std::string&) {}), 0);
}

TEST(Emit, BintreeStaysSmall) {
  const auto sol = h_mis(gen::bintree(8), with_l(2));
  const LSpec spec = emit_solution_lspec(sol);
  EXPECT_LE(spec.cells.size(), 8u);
  EXPECT_EQ(BigInt(checks::emit_set(sol).size()), solution_size(sol));
}

TEST(Query, Triangle) {
  const auto sol = h_mis(gen::tri(), with_l(1));
  EXPECT_TRUE(query(sol, std::string_view("X/a")));
  EXPECT_FALSE(query(sol, std::string_view("u")));
  EXPECT_FALSE(query(sol, std::string_view("v")));
  EXPECT_THROW(query(sol, std::string_view("X/b")), Error);
  EXPECT_THROW(query(sol, std::string_view("Y/a")), Error);
}

TEST(Query, DeletedLevelIsNeverChosen) {
  const auto sol = h_mis(gen::bintree(8), with_l(2));
  // Depth best_offset is the top piece's deleted band.
  std::string addr;
  for (int d = 0; d < sol.best_offset; ++d) addr += "L/";
  EXPECT_FALSE(query(sol, std::string_view(addr + "r")));
}

TEST(Query, BintreeFortyIsFast) {
  const auto sol = h_mis(gen::bintree(40), with_l(2));
  ASSERT_GE(sol.best_offset, 0);
  // Pieces below the top one start every third level from best_offset + 1.
  // Each takes the second level of its star (and a lone leaf) and drops the
  // third level.
  auto expected = [&](int d) {
    const int rel = (d - sol.best_offset - 1) % 3;
    return rel == 1 || (rel == 0 && d == 39);
  };
  for (int d : {38, 39}) {
    std::string addr;
    for (int j = 0; j < d; ++j) addr += j % 2 ? "R/" : "L/";
    const auto start = std::chrono::steady_clock::now();
    const bool got = query(sol, std::string_view(addr + "r"));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(secs, 1.0);
    EXPECT_EQ(got, expected(d)) << d;
  }
}

TEST(Stream, CapGivesPrefix) {
  const auto sol = h_mis(gen::bintree(10), with_l(2));
  std::vector<std::string> all, first;
  stream_solution(sol, [&](const std::string& a) { all.push_back(a); });
  EXPECT_EQ(BigInt(all.size()), solution_size(sol));
  EXPECT_EQ(stream_solution(sol, [&](const std::string& a) { first.push_back(a); }, BigInt(10)), 10);
  ASSERT_EQ(first.size(), 10u);
  EXPECT_TRUE(std::equal(first.begin(), first.end(), all.begin()));
}

TEST(Stream, BintreeTwenty) {
  const auto sol = h_mis(gen::bintree(20), with_l(2));
  BigInt n = 0;
  EXPECT_EQ(stream_solution(sol, [&](const std::string&) { ++n; }), solution_size(sol));
  EXPECT_EQ(n, solution_size(sol));
}

TEST(TriConsistency, RandomSpecs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const LSpec spec = gen::rand_lspec({}, seed);
    const auto universe = oracle::expand(spec).vertices;
    for (int l = 1; l <= 3; ++l)
      for (auto* scheme : {&h_mis, &h_vc, &h_maxcut}) {
        const auto sol = (*scheme)(spec, with_l(l));
        const auto streamed = checks::stream_set(sol);
        EXPECT_EQ(checks::query_set(sol, universe), streamed) << seed;
        EXPECT_EQ(checks::emit_set(sol), streamed) << seed;
        if (sol.problem != Problem::MaxCut) EXPECT_EQ(BigInt(streamed.size()), solution_size(sol)) << seed;
      }
  }
}

// Child pieces used with exchanged sides appear as separate cells.
TEST(TriConsistency, BintreeCutWithFlippedPieces) {
  const LSpec spec = gen::bintree(10);
  const auto g = oracle::expand(spec);
  for (int l = 1; l <= 3; ++l) {
    const auto sol = h_maxcut(spec, with_l(l));
    EXPECT_EQ(sol.total_value, BigInt(g.edges.size())) << l;  // a tree is bipartite
    const auto streamed = checks::stream_set(sol);
    EXPECT_EQ(checks::query_set(sol, g.vertices), streamed);
    EXPECT_EQ(checks::emit_set(sol), streamed);
    EXPECT_EQ(checks::cut(g, streamed), sol.total_value);
  }
}

TEST(TriConsistency, Formulas) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LFormula f = gen::rand_lformula({}, seed);
    const SFormula full = expand_formula(f, 1000);
    const std::set<std::string> universe(full.variables.begin(), full.variables.end());
    for (int l = 1; l <= 3; ++l) {
      const auto sol = h_maxsat(f, with_l(l));
      const auto streamed = checks::stream_set(sol);
      EXPECT_EQ(checks::query_set(sol, universe), streamed) << seed;
      EXPECT_EQ(checks::emit_set(sol), streamed) << seed;
    }
  }
}

TEST(Lattice, QueryAndStream) {
  const auto sol = fpn_mis(gen::fpnpath(9), with_l(3));
  const auto g = checks::lattice(gen::fpnpath(9));
  EXPECT_EQ(checks::query_set(sol, g.vertices), checks::stream_set(sol));
  EXPECT_THROW(query(sol, std::string_view("v@10")), Error);
  EXPECT_THROW(query(sol, std::string_view("w@1")), Error);
  EXPECT_THROW(emit_solution_lspec(sol), PreconditionError);

  const auto huge = fpn_mis(gen::fpnpath(boost::multiprecision::pow(BigInt(10), 18)), with_l(3));
  std::vector<std::string> got;
  stream_solution(huge, [&](const std::string& a) { got.push_back(a); }, BigInt(5));
  EXPECT_EQ(got.size(), 5u);
  EXPECT_NO_THROW(query(huge, std::string_view("v@999999999999999999")));
}
