#pragma once

// Finite periodic (1-FPN) specifications: a static graph whose edges carry
// non-negative lattice offsets, unrolled over positions 0..m.

#include "sgat/bigint.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sgat {

struct StaticEdge {
  int from = 0;
  int to = 0;
  int offset = 0;  // t_{u,v} >= 0

  bool operator==(const StaticEdge&) const = default;
};

struct FPNSpec {
  std::vector<std::string> vertices;
  std::vector<StaticEdge> edges;
  BigInt m = 0;

  int find_vertex(std::string_view name) const;

  bool operator==(const FPNSpec&) const = default;
};

FPNSpec parse_fpn(std::string_view document);
std::string serialize(const FPNSpec& spec);

/// Largest edge offset; a spec is k-narrow iff this is <= k.
int fpn_narrowness(const FPNSpec& spec);

}  // namespace sgat
