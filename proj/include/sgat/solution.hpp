#pragma once

// Access to scheme solutions without expanding the input: the solution as a
// specification of its own, membership queries, size, and a bounded-memory
// stream of all members.
//
// Members are the chosen vertices (MIS, VC), the side-1 vertices (cut) or
// the true variables (SAT).

#include "sgat/bigint.hpp"
#include "sgat/lspec.hpp"
#include "sgat/schemes.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace sgat {

/// One cell per solved piece class (`H_<cell>`), holding the members owned by
/// that piece as explicit vertices named by their address relative to the
/// piece root, and one nonterminal per piece below it. Cells contributing no
/// members are pruned. Hierarchical solutions only.
LSpec emit_solution_lspec(const ApproxSolution& sol);

/// Membership of a vertex given by its full path from the root. Lattice
/// solutions take `v@p`. Throws Error for addresses that do not resolve.
bool query(const ApproxSolution& sol, const VertexAddress& addr);
bool query(const ApproxSolution& sol, std::string_view address);

BigInt solution_size(const ApproxSolution& sol);

using SolutionSink = std::function<void(const std::string&)>;

/// Emits member addresses in depth-first order of the hierarchy tree (or by
/// position for lattices), at most `cap` of them. Returns the number emitted.
BigInt stream_solution(const ApproxSolution& sol, const SolutionSink& sink,
                       const std::optional<BigInt>& cap = std::nullopt);

}  // namespace sgat
