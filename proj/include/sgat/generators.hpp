#pragma once

// Deterministic instance families. Equal parameters and seed give equal
// documents.

#include "sgat/formula.hpp"
#include "sgat/fpn.hpp"
#include "sgat/lspec.hpp"

#include <cstdint>

namespace sgat::gen {

/// Complete binary tree of height n (2^n - 1 vertices) with one cell per
/// subtree height.
LSpec bintree(int n);

/// The triangle: a top edge u-v plus a nonterminal whose cell holds the apex.
LSpec tri();

struct RandSpecOptions {
  int cells = 4;
  int max_expanded = 30;  // vertices of E(spec)
  int max_locals = 3;     // explicit vertices per cell, at least 2
  int max_pins = 2;
  int max_calls = 3;
  double edge_density = 0.5;
  double pin_binding = 0.0;  // chance a binding uses a caller pin (raises k)
  int retries = 1000;
};

/// Random valid specification whose expansion is planar and small. With
/// pin_binding = 0 it is 1-level-restricted.
LSpec rand_lspec(const RandSpecOptions& opt, std::uint64_t seed);

FPNSpec fpnpath(const BigInt& m);
FPNSpec fpnladder(const BigInt& m);

struct RandFpnOptions {
  int vertices = 3;
  double density = 0.4;
  int k = 1;
  BigInt m = 10;
};

FPNSpec randfpn(const RandFpnOptions& opt, std::uint64_t seed);

/// The three-cell formula with two nested calls used as a running example.
LFormula nested_formula();

struct RandFormulaOptions {
  int cells = 3;
  int max_expanded_vars = 20;
  int max_locals = 3;
  int max_interface = 2;
  int max_calls = 2;
  int max_clauses = 3;
  int retries = 1000;
};

/// Random 1-level-restricted L-formula over small fixed relations.
LFormula rand_lformula(const RandFormulaOptions& opt, std::uint64_t seed);

/// `copies` calls of a cell holding the clauses x and not-x.
LFormula contradiction_formula(int copies);

}  // namespace sgat::gen
