// sgat: command-line front end for succinct graph specifications.
//
// Exit codes: 0 success, 1 usage, 2 invalid input or unmet precondition,
// 3 budget exceeded, 4 a verified guarantee does not hold.

#include "sgat/errors.hpp"
#include "sgat/expansion.hpp"
#include "sgat/generators.hpp"
#include "sgat/partial.hpp"
#include "sgat/schemes.hpp"
#include "sgat/solution.hpp"
#include "sgat/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

using namespace sgat;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kBudget = 3, kGuarantee = 4 };

struct Config {
  std::string input;
  std::string output;
  std::string problem;
  std::string epsilon;
  int l = 0;
  int k = -1;
  std::string base = "exact";
  int budget_exact = kDefaultExactBudget;
  std::string budget_piece = "20000";
  std::string budget_expand = "1000000";
  std::uint64_t seed = 0;
  bool json = false;
  int threads = 1;
  std::string cap;
  std::vector<std::string> addresses;
  // gen
  std::string family;
  std::vector<std::string> params;
  int cells = 4;
  int vertices = 3;
  double density = 0.4;
  std::string m = "10";
};

using Document = std::variant<LSpec, FPNSpec, LFormula, FPNFormula, SFormula>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// The kind is given by the first keyword of the document.
Document load(const std::string& path) {
  const std::string doc = read_file(path);
  const auto lines = text::tokenize(doc);
  if (lines.empty()) throw ParseError("empty document", 1);
  const std::string& kw = lines.front().tokens.front().text;
  if (kw == "lspec" || kw == "solution") return parse_lspec(doc);
  if (kw == "fpn") return parse_fpn(doc);
  if (kw == "fpncnf") return parse_fpn_formula(doc);
  if (kw == "sformula") return parse_sformula(doc);
  if (kw == "lformula" || kw == "relation" || kw == "fcell") return parse_lformula(doc);
  throw ParseError("unknown document kind '" + kw + "'", lines.front().number, 1);
}

BigInt big(const std::string& s, const char* flag) {
  BigInt v;
  if (!parse_natural(s, v)) throw CLI::ValidationError(flag, "expected a non-negative integer");
  return v;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw Error("cannot write " + cfg.output);
  out << text;
}

SchemeOptions scheme_options(const Config& cfg, Problem p) {
  SchemeOptions o;
  if (!cfg.epsilon.empty()) {
    o.l = epsilon_to_l(parse_ratio(cfg.epsilon), epsilon_kind(p));
  } else if (cfg.l > 0) {
    o.l = cfg.l;
  }
  if (cfg.k >= 0) o.k = cfg.k;
  o.base = cfg.base;
  o.exact_budget = cfg.budget_exact;
  o.piece_budget = big(cfg.budget_piece, "--budget-piece");
  o.threads = cfg.threads;
  return o;
}

ApproxSolution run_scheme(const Config& cfg, const Document& doc) {
  const Problem p = parse_problem(cfg.problem);
  const SchemeOptions o = scheme_options(cfg, p);
  if (p == Problem::MaxSat) {
    if (auto* f = std::get_if<LFormula>(&doc)) return h_maxsat(*f, o);
    if (auto* f = std::get_if<FPNFormula>(&doc)) return fpn_maxsat(*f, o);
    throw PreconditionError("maxsat needs an lformula or fpncnf document");
  }
  if (auto* s = std::get_if<LSpec>(&doc)) {
    if (s->solution) throw PreconditionError("input is a solution document, not a specification");
    return p == Problem::MIS ? h_mis(*s, o) : p == Problem::VC ? h_vc(*s, o) : h_maxcut(*s, o);
  }
  if (auto* s = std::get_if<FPNSpec>(&doc))
    return p == Problem::MIS ? fpn_mis(*s, o) : p == Problem::VC ? fpn_vc(*s, o) : fpn_maxcut(*s, o);
  throw PreconditionError(cfg.problem + " needs an lspec or fpn document");
}

// --- validate, expand, stats, pieces ---------------------------------------

int cmd_validate(const Config& cfg) {
  const Document doc = load(cfg.input);
  std::vector<std::string> problems;
  if (auto* s = std::get_if<LSpec>(&doc)) {
    for (const auto& v : validate_lspec(*s).violations)
      problems.push_back(v.kind + " (" + v.location + "): " + v.detail);
  } else if (auto* f = std::get_if<LFormula>(&doc)) {
    problems = validate_lformula(*f);
  }
  for (const auto& p : problems) std::cerr << p << "\n";
  if (!problems.empty()) return kInvalid;
  std::cout << "ok\n";
  return kOk;
}

int cmd_expand(const Config& cfg) {
  const Document doc = load(cfg.input);
  const BigInt budget = big(cfg.budget_expand, "--budget-expand");
  std::string out;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, LSpec>) out = serialize(expand(d, budget));
        else if constexpr (std::is_same_v<T, FPNSpec>) out = serialize(expand_fpn(d, budget));
        else if constexpr (std::is_same_v<T, LFormula>) out = serialize(expand_formula(d, budget));
        else if constexpr (std::is_same_v<T, FPNFormula>) out = serialize(expand_fpn_formula(d, budget));
        else out = serialize(d);
      },
      doc);
  emit(cfg, out);
  return kOk;
}

int cmd_stats(const Config& cfg) {
  const Document doc = load(cfg.input);
  json j;
  if (auto* s = std::get_if<LSpec>(&doc)) {
    require_valid(*s);
    const auto counts = count_expansion(*s);
    const Hierarchy h = Hierarchy::from_lspec(*s);
    j = {{"kind", "lspec"},
         {"name", s->name},
         {"cells", s->cells.size()},
         {"N", s->vertex_number()},
         {"M", s->edge_number()},
         {"size", s->size()},
         {"expanded_vertices", to_string(counts.total_vertices())},
         {"expanded_edges", to_string(counts.total_edges())},
         {"level_restriction", level_restriction(*s)},
         {"depth", h.height(h.top())}};
  } else if (auto* s = std::get_if<FPNSpec>(&doc)) {
    j = {{"kind", "fpn"},
         {"static_vertices", s->vertices.size()},
         {"static_edges", s->edges.size()},
         {"m", to_string(s->m)},
         {"expanded_vertices", to_string(BigInt(s->vertices.size()) * (s->m + 1))},
         {"narrowness", fpn_narrowness(*s)}};
  } else if (auto* f = std::get_if<LFormula>(&doc)) {
    if (auto problems = validate_lformula(*f); !problems.empty()) throw PreconditionError(problems.front());
    const Hierarchy h = Hierarchy::from_lformula(*f);
    j = {{"kind", "lformula"},
         {"cells", f->cells.size()},
         {"size", f->size()},
         {"expanded_variables", to_string(h.expanded_locals(h.top()))},
         {"expanded_clauses", to_string(h.expanded_items(h.top()))},
         {"level_restriction", h.level_restriction()},
         {"depth", h.height(h.top())}};
  } else if (auto* f = std::get_if<FPNFormula>(&doc)) {
    j = {{"kind", "fpncnf"},
         {"static_variables", f->variables.size()},
         {"static_clauses", f->clauses.size()},
         {"m", to_string(f->m)},
         {"narrowness", f->narrowness()}};
  } else {
    const auto& sf = std::get<SFormula>(doc);
    j = {{"kind", "sformula"}, {"variables", sf.variables.size()}, {"clauses", sf.clauses.size()}};
  }
  if (cfg.json) {
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& [key, value] : j.items())
      os << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_pieces(const Config& cfg) {
  const Document doc = load(cfg.input);
  const int l = cfg.l > 0 ? cfg.l : 1;
  json j = json::array();
  if (auto* s = std::get_if<LSpec>(&doc)) {
    require_valid(*s);
    const int k = cfg.k >= 0 ? cfg.k : level_restriction(*s);
    const int band = std::max(k, 1), period = band * (l + 1);
    const int top = static_cast<int>(s->cells.size()) - 1;
    for (int i = 0; i < period; ++i) {
      const auto pe = partial_expand(*s, top, i, Boundary::Delete, band, big(cfg.budget_piece, "--budget-piece"));
      json frontier = json::array();
      for (const auto& [cell, mult] : pe.frontier) frontier.push_back({{"cell", s->cells[cell].name}, {"copies", to_string(mult)}});
      j.push_back({{"offset", i},
                   {"top_vertices", pe.explicit_graph.size()},
                   {"deleted", to_string(pe.deleted_level_count)},
                   {"frontier", frontier}});
    }
  } else if (auto* s = std::get_if<FPNSpec>(&doc)) {
    const int band = std::max(cfg.k >= 0 ? cfg.k : fpn_narrowness(*s), 1);
    for (int i = 0; i < band * (l + 1); ++i) {
      const auto slabs = fpn_slabs(s->m, i, l, band);
      json list = json::array();
      for (const auto& slab : slabs.slabs)
        list.push_back({{"role", slab.role},
                        {"lo", to_string(slab.lo)},
                        {"hi", to_string(slab.hi)},
                        {"multiplicity", to_string(slab.multiplicity)}});
      j.push_back({{"offset", i}, {"t", to_string(slabs.t)}, {"slabs", list}});
    }
  } else if (auto* f = std::get_if<LFormula>(&doc)) {
    const int k = cfg.k >= 0 ? cfg.k : Hierarchy::from_lformula(*f).level_restriction();
    for (int i : formula_offsets(l, k)) {
      const auto fp = formula_pieces(*f, l, i, k, big(cfg.budget_piece, "--budget-piece"));
      json list = json::array();
      for (const auto& piece : fp.pieces)
        list.push_back({{"role", piece.role},
                        {"cell", f->cells[piece.cell].name},
                        {"clauses", piece.formula.clauses.size()},
                        {"multiplicity", to_string(piece.multiplicity)}});
      j.push_back({{"offset", i}, {"deleted_clauses", to_string(fp.deleted_clauses)}, {"pieces", list}});
    }
  } else {
    throw PreconditionError("pieces needs an lspec, fpn or lformula document");
  }
  if (cfg.json) {
    emit(cfg, j.dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  for (const auto& row : j) {
    os << "offset=" << row["offset"].get<int>();
    for (const auto& [key, value] : row.items()) {
      if (key == "offset") continue;
      if (value.is_array()) {
        os << "\n";
        for (const auto& item : value) {
          os << " ";
          for (const auto& [k2, v2] : item.items())
            os << " " << k2 << "=" << (v2.is_string() ? v2.get<std::string>() : v2.dump());
          os << "\n";
        }
      } else {
        os << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
    if (os.str().back() != '\n') os << "\n";
  }
  emit(cfg, os.str());
  return kOk;
}

// --- schemes and their solutions --------------------------------------------

json solution_json(const ApproxSolution& sol) {
  json values = json::array();
  for (const auto& v : sol.offset_values) values.push_back(to_string(v));
  return {{"problem", std::string(problem_name(sol.problem))},
          {"value", to_string(sol.total_value)},
          {"offset", sol.best_offset},
          {"guarantee", to_string(sol.guarantee)},
          {"l", sol.l},
          {"k", sol.k},
          {"period", sol.period},
          {"base", sol.base},
          {"rho", to_string(sol.rho)},
          {"offsets", sol.offsets},
          {"offset_values", values}};
}

int cmd_approx(const Config& cfg) {
  const ApproxSolution sol = run_scheme(cfg, load(cfg.input));
  if (cfg.json) {
    emit(cfg, solution_json(sol).dump(2) + "\n");
    return kOk;
  }
  std::ostringstream os;
  os << "value=" << sol.total_value << " offset=" << sol.best_offset << " guarantee=" << to_string(sol.guarantee)
     << "\n";
  os << "l=" << sol.l << " k=" << sol.k << " period=" << sol.period << " base=" << sol.base << "\n";
  emit(cfg, os.str());
  return kOk;
}

int cmd_query(const Config& cfg) {
  const ApproxSolution sol = run_scheme(cfg, load(cfg.input));
  json j = json::object();
  std::ostringstream os;
  for (const auto& a : cfg.addresses) {
    const bool in = query(sol, std::string_view(a));
    j[a] = in;
    os << a << " " << (in ? 1 : 0) << "\n";
  }
  emit(cfg, cfg.json ? j.dump(2) + "\n" : os.str());
  return kOk;
}

int cmd_stream(const Config& cfg) {
  const ApproxSolution sol = run_scheme(cfg, load(cfg.input));
  std::optional<BigInt> cap;
  if (!cfg.cap.empty()) cap = big(cfg.cap, "--cap");
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::binary);
    if (!file) throw Error("cannot write " + cfg.output);
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;
  const BigInt n = stream_solution(sol, [&](const std::string& a) { out << a << "\n"; }, cap);
  std::cerr << "emitted=" << n << " size=" << solution_size(sol) << "\n";
  return kOk;
}

int cmd_emit(const Config& cfg) {
  const ApproxSolution sol = run_scheme(cfg, load(cfg.input));
  emit(cfg, serialize(emit_solution_lspec(sol)));
  return kOk;
}

// Exact optimum of the expanded instance.
struct Exact {
  BigInt value;
  ExpandedGraph graph;
  SFormula formula;
};

Exact exact_optimum(const Config& cfg, const Document& doc, Problem p) {
  const BigInt budget = big(cfg.budget_expand, "--budget-expand");
  Exact out;
  if (p == Problem::MaxSat) {
    if (auto* f = std::get_if<LFormula>(&doc)) out.formula = expand_formula(*f, budget);
    else if (auto* f = std::get_if<FPNFormula>(&doc)) out.formula = expand_fpn_formula(*f, budget);
    else if (auto* f = std::get_if<SFormula>(&doc)) out.formula = *f;
    else throw PreconditionError("maxsat needs a formula document");
    const int limit = std::max<int>(cfg.budget_exact, static_cast<int>(out.formula.variables.size()));
    out.value = exact_maxsat(out.formula, limit).satisfied;
    return out;
  }
  if (auto* s = std::get_if<LSpec>(&doc)) out.graph = expand(*s, budget);
  else if (auto* s = std::get_if<FPNSpec>(&doc)) out.graph = expand_fpn(*s, budget);
  else throw PreconditionError(cfg.problem + " needs an lspec or fpn document");
  const Graph& g = out.graph.graph();
  const int limit = std::max(cfg.budget_exact, g.n);
  switch (p) {
    case Problem::MIS: out.value = exact_mis_size(g, limit); break;
    case Problem::VC: out.value = g.n - exact_mis_size(g, limit); break;
    default: out.value = cut_value(g, exact_maxcut(g, limit)); break;
  }
  return out;
}

int cmd_oracle(const Config& cfg) {
  const Problem p = parse_problem(cfg.problem);
  const Exact ex = exact_optimum(cfg, load(cfg.input), p);
  if (cfg.json) emit(cfg, json{{"problem", cfg.problem}, {"opt", to_string(ex.value)}}.dump(2) + "\n");
  else emit(cfg, "opt=" + to_string(ex.value) + "\n");
  return kOk;
}

// Runs the scheme and the exact oracle, then checks feasibility of the
// streamed solution and the guarantee.
int cmd_verify(const Config& cfg) {
  const Document doc = load(cfg.input);
  const Problem p = parse_problem(cfg.problem);
  const ApproxSolution sol = run_scheme(cfg, doc);
  const Exact ex = exact_optimum(cfg, doc, p);

  std::vector<std::string> members;
  stream_solution(sol, [&](const std::string& a) { members.push_back(a); });
  BigInt recount = 0;
  bool feasible = true;
  if (p == Problem::MaxSat) {
    std::vector<bool> truth(ex.formula.variables.size(), false);
    for (const auto& a : members) {
      const int v = ex.formula.find_variable(a);
      if (v < 0) throw Error("streamed variable not in the expansion: " + a);
      truth[v] = true;
    }
    recount = ex.formula.count_satisfied(truth);
  } else {
    const Graph& g = ex.graph.graph();
    std::vector<char> in(g.n, 0);
    std::vector<int> set;
    for (const auto& a : members) {
      const int v = ex.graph.find(a);
      if (v < 0) throw Error("streamed vertex not in the expansion: " + a);
      in[v] = 1;
      set.push_back(v);
    }
    if (p == Problem::MIS) feasible = is_independent(g, set);
    if (p == Problem::VC) feasible = is_vertex_cover(g, set);
    recount = p == Problem::MaxCut ? BigInt(cut_value(g, in)) : BigInt(set.size());
  }
  const bool consistent = recount == sol.total_value;
  const bool holds = is_minimization(p) ? at_most(sol.total_value, sol.guarantee, ex.value)
                                        : at_least(sol.total_value, sol.guarantee, ex.value);
  const bool ok = feasible && consistent && holds;
  if (cfg.json) {
    json j = solution_json(sol);
    j["opt"] = to_string(ex.value);
    j["feasible"] = feasible;
    j["recount"] = to_string(recount);
    j["guarantee_holds"] = holds;
    j["ok"] = ok;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "value=" << sol.total_value << " opt=" << ex.value << " guarantee=" << to_string(sol.guarantee)
       << " l=" << sol.l << "\n"
       << "feasible=" << feasible << " recount=" << recount << " " << (ok ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str());
  }
  return ok ? kOk : kGuarantee;
}

// --- generators --------------------------------------------------------------

int cmd_gen(const Config& cfg) {
  auto param = [&](std::size_t i, const char* what) -> const std::string& {
    if (i >= cfg.params.size()) throw CLI::ValidationError("gen " + cfg.family, std::string("missing ") + what);
    return cfg.params[i];
  };
  auto small = [&](std::size_t i, const char* what) {
    const BigInt v = big(param(i, what), what);
    if (v > 100000) throw CLI::ValidationError("gen " + cfg.family, std::string(what) + " too large");
    return static_cast<int>(v);
  };
  std::string out;
  const auto& f = cfg.family;
  if (f == "bintree") out = serialize(gen::bintree(small(0, "n")));
  else if (f == "tri") out = serialize(gen::tri());
  else if (f == "rand1level") {
    gen::RandSpecOptions o;
    o.cells = cfg.cells;
    out = serialize(gen::rand_lspec(o, cfg.seed));
  } else if (f == "fpnpath") out = serialize(gen::fpnpath(big(param(0, "m"), "m")));
  else if (f == "fpnladder") out = serialize(gen::fpnladder(big(param(0, "m"), "m")));
  else if (f == "randfpn") {
    gen::RandFpnOptions o;
    o.vertices = cfg.vertices;
    o.density = cfg.density;
    o.k = cfg.k >= 0 ? cfg.k : 1;
    o.m = big(cfg.m, "--m");
    out = serialize(gen::randfpn(o, cfg.seed));
  } else if (f == "nested") out = serialize(gen::nested_formula());
  else if (f == "randformula") {
    gen::RandFormulaOptions o;
    o.cells = cfg.cells;
    out = serialize(gen::rand_lformula(o, cfg.seed));
  } else if (f == "contradiction") out = serialize(gen::contradiction_formula(small(0, "copies")));
  else throw CLI::ValidationError("gen", "unknown family '" + f + "'");
  emit(cfg, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation on succinctly specified graphs and formulas"};
  app.require_subcommand(1);
  Config cfg;

  auto input = [&](CLI::App* sub) { sub->add_option("input", cfg.input, "input document")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", cfg.output, "write to this file"); };
  auto problem = [&](CLI::App* sub) {
    sub->add_option("problem", cfg.problem, "mis | vc | maxcut | maxsat")
        ->required()
        ->check(CLI::IsMember({"mis", "vc", "maxcut", "maxsat"}));
  };
  auto scheme = [&](CLI::App* sub) {
    auto* eps = sub->add_option("--epsilon", cfg.epsilon, "target error, e.g. 0.2 or 1/5");
    sub->add_option("--l", cfg.l, "shifting parameter")->check(CLI::PositiveNumber)->excludes(eps);
    sub->add_option("--k", cfg.k, "level bound or narrowness (default: measured)")->check(CLI::NonNegativeNumber);
    sub->add_option("--base", cfg.base, "piece solver")->check(CLI::IsMember({"exact", "baker"}));
    sub->add_option("--budget-exact", cfg.budget_exact, "exact solver vertex limit")->check(CLI::PositiveNumber);
    sub->add_option("--budget-piece", cfg.budget_piece, "piece vertex limit");
    sub->add_option("--budget-expand", cfg.budget_expand, "expansion vertex limit");
    sub->add_option("--threads", cfg.threads, "offsets solved in parallel")->check(CLI::PositiveNumber);
  };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", cfg.json, "machine-readable output"); };

  auto* validate = app.add_subcommand("validate", "check a document");
  input(validate);
  auto* expand_cmd = app.add_subcommand("expand", "write the full expansion");
  input(expand_cmd);
  output(expand_cmd);
  expand_cmd->add_option("--budget-expand", cfg.budget_expand, "expansion vertex limit");
  auto* stats = app.add_subcommand("stats", "sizes, counts and structural parameters");
  input(stats);
  output(stats);
  json_flag(stats);
  auto* pieces = app.add_subcommand("pieces", "decomposition per offset");
  input(pieces);
  output(pieces);
  json_flag(pieces);
  pieces->add_option("--l", cfg.l, "shifting parameter")->check(CLI::PositiveNumber);
  pieces->add_option("--k", cfg.k, "level bound or narrowness")->check(CLI::NonNegativeNumber);
  pieces->add_option("--budget-piece", cfg.budget_piece, "piece vertex limit");

  std::vector<std::pair<CLI::App*, int (*)(const Config&)>> solving;
  auto solver_cmd = [&](const char* name, const char* help, int (*fn)(const Config&)) {
    auto* sub = app.add_subcommand(name, help);
    problem(sub);
    input(sub);
    output(sub);
    scheme(sub);
    json_flag(sub);
    solving.emplace_back(sub, fn);
    return sub;
  };
  solver_cmd("approx", "run the approximation scheme", cmd_approx);
  auto* query_cmd = solver_cmd("query", "membership of vertices in the scheme solution", cmd_query);
  query_cmd->add_option("addresses", cfg.addresses, "vertex addresses")->required();
  auto* stream_cmd = solver_cmd("stream", "list solution members", cmd_stream);
  stream_cmd->add_option("--cap", cfg.cap, "stop after this many members");
  solver_cmd("emit", "write the solution as a specification", cmd_emit);
  auto* oracle = app.add_subcommand("oracle", "exact optimum of the expansion");
  problem(oracle);
  input(oracle);
  output(oracle);
  json_flag(oracle);
  oracle->add_option("--budget-exact", cfg.budget_exact, "exact solver vertex limit")->check(CLI::PositiveNumber);
  oracle->add_option("--budget-expand", cfg.budget_expand, "expansion vertex limit");
  solver_cmd("verify", "scheme against the exact optimum", cmd_verify);

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("family", cfg.family,
                      "bintree N | tri | rand1level | fpnpath M | fpnladder M | randfpn | nested | randformula | "
                      "contradiction N")
      ->required();
  gen_cmd->add_option("params", cfg.params, "family parameters");
  gen_cmd->add_option("--seed", cfg.seed, "generator seed");
  gen_cmd->add_option("--cells", cfg.cells, "cells (rand1level, randformula)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--vertices", cfg.vertices, "static vertices (randfpn)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--density", cfg.density, "edge density (randfpn)")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--k", cfg.k, "narrowness (randfpn)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", cfg.m, "lattice length (randfpn)");
  output(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*expand_cmd) return cmd_expand(cfg);
    if (*stats) return cmd_stats(cfg);
    if (*pieces) return cmd_pieces(cfg);
    if (*oracle) return cmd_oracle(cfg);
    if (*gen_cmd) return cmd_gen(cfg);
    for (const auto& [sub, fn] : solving)
      if (*sub) return fn(cfg);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << cfg.input << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
