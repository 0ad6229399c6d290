#pragma once

// Boolean formulas built from finite relations: flat S-formulas, hierarchical
// L-formulas and periodic CNF formulas.

#include "sgat/bigint.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sgat {

/// A subset of {0,1}^arity. Tuple bit i holds the value of argument i.
struct BoolRelation {
  static constexpr int kMaxArity = 20;

  std::string name;
  int arity = 1;
  std::vector<std::uint32_t> tuples;  // sorted, unique

  bool accepts(std::uint32_t tuple) const;
  static std::string tuple_string(std::uint32_t tuple, int arity);

  bool operator==(const BoolRelation&) const = default;
};

struct RelClause {
  int relation = 0;
  std::vector<int> vars;  // distinct

  bool operator==(const RelClause&) const = default;
};

struct SFormula {
  std::vector<BoolRelation> relations;
  std::vector<std::string> variables;
  std::vector<RelClause> clauses;

  int find_relation(std::string_view name) const;
  int find_variable(std::string_view name) const;
  bool satisfied(const RelClause& c, const std::vector<bool>& assignment) const;
  std::size_t count_satisfied(const std::vector<bool>& assignment) const;

  bool operator==(const SFormula&) const = default;
};

struct FormulaCall {
  int callee = 0;
  std::vector<int> args;  // caller variables bound to the callee's interface, in order

  bool operator==(const FormulaCall&) const = default;
};

/// Variables 0..interface.size()-1 are the interface X^i; the rest are the
/// local variables Z^i.
struct FormulaCell {
  std::string name;
  std::vector<std::string> interface;
  std::vector<std::string> locals;
  std::vector<RelClause> clauses;
  std::vector<FormulaCall> calls;

  std::size_t variable_count() const { return interface.size() + locals.size(); }
  const std::string& variable_name(int v) const;
  int find_variable(std::string_view name) const;

  bool operator==(const FormulaCell&) const = default;
};

struct LFormula {
  std::vector<BoolRelation> relations;
  std::vector<FormulaCell> cells;

  int find_cell(std::string_view name) const;
  /// sum over cells of (variables * clauses)
  std::size_t size() const;

  bool operator==(const LFormula&) const = default;
};

struct Literal {
  int var = 0;
  int offset = 0;
  bool negated = false;

  bool operator==(const Literal&) const = default;
};

struct FPNClause {
  std::vector<Literal> literals;

  int max_offset() const;
  bool operator==(const FPNClause&) const = default;
};

struct FPNFormula {
  std::vector<std::string> variables;
  std::vector<FPNClause> clauses;
  BigInt m = 0;

  int find_variable(std::string_view name) const;
  int narrowness() const;

  bool operator==(const FPNFormula&) const = default;
};

SFormula parse_sformula(std::string_view document);
LFormula parse_lformula(std::string_view document);
FPNFormula parse_fpn_formula(std::string_view document);

std::string serialize(const SFormula& f);
std::string serialize(const LFormula& f);
std::string serialize(const FPNFormula& f);

/// Structural checks for L-formulas: call ordering, argument counts and
/// distinctness, clause arities. Empty result means valid.
std::vector<std::string> validate_lformula(const LFormula& f);

}  // namespace sgat
