#pragma once

// Solvers for concrete pieces. Exact solvers split the input into connected
// components; the vertex budget applies to each component separately.

#include "sgat/bigint.hpp"
#include "sgat/formula.hpp"
#include "sgat/graph.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sgat {

constexpr int kDefaultExactBudget = 64;

/// Maximum independent set, lexicographically least among the optima.
std::vector<int> exact_mis(const Graph& g, int budget = kDefaultExactBudget);

/// Independence number only.
int exact_mis_size(const Graph& g, int budget = kDefaultExactBudget);

/// Minimum vertex cover, the complement of exact_mis.
std::vector<int> exact_vc(const Graph& g, int budget = kDefaultExactBudget);

/// Maximum cut as a side (0 or 1) per vertex; the smallest vertex of every
/// component is on side 0.
std::vector<char> exact_maxcut(const Graph& g, int budget = kDefaultExactBudget);

std::size_t cut_value(const Graph& g, const std::vector<char>& side);

struct MaxSatResult {
  std::vector<bool> assignment;
  std::size_t satisfied = 0;
};

/// Optimal assignment by branch and bound over the variables of each
/// variable-connected component. Among optima, prefers false earlier.
MaxSatResult exact_maxsat(const SFormula& f, int budget = kDefaultExactBudget);

bool planarity_check(const Graph& g);

bool is_independent(const Graph& g, const std::vector<int>& set);
bool is_vertex_cover(const Graph& g, const std::vector<int>& set);

/// Shifting over BFS layers: for each residue r mod (l+1) drop the layers
/// congruent to r and solve the remaining slabs exactly. At least
/// l/(l+1) of the optimum on planar inputs.
std::vector<int> baker_mis(const Graph& g, int l, int budget = kDefaultExactBudget);

/// Overlapping windows of l+1 BFS layers whose boundary layers are shared
/// by neighbouring windows. At most (l+1)/l of the optimum.
std::vector<int> baker_vc(const Graph& g, int l, int budget = kDefaultExactBudget);

enum class Problem { MIS, VC, MaxCut, MaxSat };

std::string_view problem_name(Problem p);
Problem parse_problem(std::string_view name);
inline bool is_minimization(Problem p) { return p == Problem::VC; }

/// A deterministic solver for one problem with a worst-case ratio rho to the
/// optimum (value >= OPT/rho for maximization, <= rho*OPT for minimization).
struct SolverContract {
  std::string id;
  Problem problem = Problem::MIS;
  Ratio rho{1};
  bool requires_planar = false;
  int budget = kDefaultExactBudget;

  /// MIS/VC: membership flag per vertex. MaxCut: side per vertex.
  std::function<std::vector<char>(const Graph&)> solve_graph;
  std::function<std::vector<bool>(const SFormula&)> solve_formula;
};

/// Registered ids: "exact" (all problems) and "baker" (MIS and VC, planar
/// pieces, shifting parameter `baker_l`).
SolverContract make_solver(std::string_view id, Problem problem, int budget, int baker_l);

}  // namespace sgat
