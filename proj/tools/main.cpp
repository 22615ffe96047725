// Command line front end: parse, recognize, solve, translate, compare,
// entail, generate and bench, over files in the s-expression grammar.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bench_suites.hpp"
#include "hornnc/calculus.hpp"
#include "hornnc/clausal.hpp"
#include "hornnc/errors.hpp"
#include "hornnc/formula.hpp"
#include "hornnc/lp.hpp"
#include "hornnc/oracle.hpp"
#include "hornnc/recognizer.hpp"
#include "json.hpp"

namespace {

using hornnc::FormulaStore;
using hornnc::NodeId;
using Json = nlohmann::ordered_json;

// Exit codes: 0 success or positive verdict, 1 negative verdict (not-hnf,
// UNSAT, not entailed, not equivalent, refused translation), 2 usage, IO
// or syntax error, 3 internal invariant violation.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// Batch inputs: one formula per line, blank lines and #-lines skipped.
std::vector<std::string> batch_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string literal_text(const FormulaStore& store, hornnc::Literal l) {
  return (l.positive ? "" : "~") + store.var_name(l.var);
}

std::string model_text(const FormulaStore& store,
                       const std::vector<hornnc::VarId>& model) {
  std::string out = "{";
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (i) out += ", ";
    out += store.var_name(model[i]);
  }
  return out + "}";
}

Json model_json(const FormulaStore& store,
                const std::vector<hornnc::VarId>& model) {
  Json arr = Json::array();
  for (hornnc::VarId v : model) arr.push_back(store.var_name(v));
  return arr;
}

Json stats_json(const hornnc::SolveStats& st) {
  return Json{{"unit_resolutions", st.unit_resolutions},
              {"simplifications", st.simplifications},
              {"true_propagations", st.true_propagations},
              {"rounds", st.rounds},
              {"nnf_size", st.nnf_size}};
}

Json trace_json(const FormulaStore& store,
                const std::vector<hornnc::RuleApplication>& trace) {
  Json records = Json::array();
  for (const hornnc::RuleApplication& r : trace) {
    Json rec{{"rule", hornnc::rule_name(r.rule)}};
    rec["unit"] = r.has_unit ? Json(literal_text(store, r.unit)) : Json();
    Json targets = Json::array();
    for (const auto& path : r.targets) targets.push_back(path);
    rec["targets"] = targets;
    rec["before"] = print_formula(store, r.before);
    rec["after"] = print_formula(store, r.after);
    records.push_back(rec);
  }
  return records;
}

// The per-command label naming: whole-formula verdicts for the recognize
// command distinguish the two in-class labels.
const char* verdict_name(hornnc::HnfLabel l) {
  switch (l) {
    case hornnc::HnfLabel::Negative:
      return "negative-hnf";
    case hornnc::HnfLabel::NonNegativeHnf:
      return "hnf";
    case hornnc::HnfLabel::NotHnf:
      return "not-hnf";
  }
  return "?";
}

int cmd_parse(const std::string& file, bool unicode, bool json) {
  FormulaStore store;
  NodeId f = parse_formula(store, read_input(file));
  hornnc::SizeMetrics m = size_metrics(store, f);
  if (json) {
    Json out{{"formula", print_formula(store, f)},
             {"unicode", print_formula_unicode(store, f)},
             {"size", m.size},
             {"dag_size", m.dag_size},
             {"depth", m.depth},
             {"n_vars", m.n_vars}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (unicode ? print_formula_unicode(store, f)
                          : print_formula(store, f))
              << "\n";
  }
  return kExitTrue;
}

int cmd_recognize(const std::string& file, const std::string& trace_path,
                  bool batch, bool json) {
  FormulaStore store;
  std::string text = read_input(file);
  std::vector<std::string> inputs =
      batch ? batch_lines(text) : std::vector<std::string>{text};
  Json results = Json::array();
  bool all_in = true;
  Json trace_doc{{"schema_version", 1}, {"traces", Json::array()}};
  for (const std::string& one : inputs) {
    NodeId f = parse_formula(store, one);
    NodeId nnf = to_nnf(store, f);
    hornnc::HnfLabel label = classify_nnf(store, nnf);
    bool in_class = hornnc::is_hnc(store, f);
    all_in = all_in && in_class;
    if (json) {
      results.push_back(Json{{"label", verdict_name(label)},
                             {"in_class", in_class}});
    } else {
      std::cout << verdict_name(label) << "\n";
    }
    if (!trace_path.empty()) {
      Json entries = Json::array();
      for (const hornnc::ClassifyEntry& e : classify_trace(store, nnf))
        entries.push_back(Json{{"formula", print_formula(store, e.node)},
                               {"label", hornnc::label_name(e.label)},
                               {"case", std::string(1, e.case_tag)}});
      trace_doc["traces"].push_back(
          Json{{"formula", print_formula(store, nnf)}, {"entries", entries}});
    }
  }
  if (json) std::cout << (batch ? results : results[0]).dump(2) << "\n";
  if (!trace_path.empty()) write_file(trace_path, trace_doc.dump(2) + "\n");
  if (batch) return kExitTrue;
  return all_in ? kExitTrue : kExitFalse;
}

int cmd_solve(const std::string& file, const std::string& trace_path,
              bool true_prop, bool batch, bool json) {
  FormulaStore store;
  std::string text = read_input(file);
  std::vector<std::string> inputs =
      batch ? batch_lines(text) : std::vector<std::string>{text};
  hornnc::SolveOptions opts;
  opts.record_trace = !trace_path.empty();
  opts.true_propagation = true_prop;
  Json results = Json::array();
  Json trace_doc{{"schema_version", 1}, {"traces", Json::array()}};
  bool last_sat = true;
  for (const std::string& one : inputs) {
    NodeId f = parse_formula(store, one);
    Json row;
    try {
      hornnc::SolveOutcome out = solve(store, f, opts);
      last_sat = out.sat;
      row = Json{{"sat", out.sat},
                 {"model", model_json(store, out.model)},
                 {"final", print_formula(store, out.final_root)},
                 {"stats", stats_json(out.stats)}};
      if (!json) {
        if (out.sat)
          std::cout << "SAT model: " << model_text(store, out.model) << "\n";
        else
          std::cout << "UNSAT\n";
      }
      if (opts.record_trace)
        trace_doc["traces"].push_back(
            Json{{"formula", print_formula(store, f)},
                 {"result", out.sat ? "sat" : "unsat"},
                 {"records", trace_json(store, out.trace)}});
    } catch (const hornnc::NotHornNcError& e) {
      if (!batch) throw;
      row = Json{{"error", e.what()}};
      if (!json) std::cout << "not-horn-nc\n";
    }
    results.push_back(row);
  }
  if (json) std::cout << (batch ? results : results[0]).dump(2) << "\n";
  if (!trace_path.empty()) write_file(trace_path, trace_doc.dump(2) + "\n");
  if (batch) return kExitTrue;
  return last_sat ? kExitTrue : kExitFalse;
}

int cmd_clausal(const std::string& file, bool star, bool dimacs, bool cleanup,
                std::uint64_t cap, bool json) {
  FormulaStore store;
  NodeId f = parse_formula(store, read_input(file));
  hornnc::ClausalOptions opts;
  opts.clause_cap = cap;
  opts.cleanup = cleanup;
  hornnc::ClausalFormula cf = star ? clausal_form_star(store, f, opts)
                                   : clausal_form(store, f, opts);
  bool horn = is_horn(cf);
  if (json) {
    Json out{{"clause_count", cf.clauses.size()},
             {"horn", horn},
             {"star", star},
             {"text", print_clausal(store, cf)}};
    if (dimacs) out["dimacs"] = to_dimacs(store, cf);
    std::cout << out.dump(2) << "\n";
  } else if (dimacs) {
    std::cout << to_dimacs(store, cf);
  } else {
    std::cout << print_clausal(store, cf) << "\n"
              << "clauses: " << cf.clauses.size() << "\n"
              << "horn: " << (horn ? "yes" : "no") << "\n";
  }
  return kExitTrue;
}

int cmd_eq(const std::string& file_a, const std::string& file_b, bool json) {
  FormulaStore store;
  NodeId a = parse_formula(store, read_input(file_a));
  NodeId b = parse_formula(store, read_input(file_b));
  bool eq = equivalent(store, a, b);
  if (json)
    std::cout << Json{{"equivalent", eq}}.dump(2) << "\n";
  else
    std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
  return eq ? kExitTrue : kExitFalse;
}

// The query argument names a file when one exists, otherwise it is taken
// as formula text.
int cmd_entail(const std::string& program_file, const std::string& query,
               bool json) {
  FormulaStore store;
  hornnc::HnfProgram prog = parse_program(store, read_input(program_file));
  std::string query_text;
  {
    std::ifstream probe(query);
    query_text = probe ? read_input(query) : query;
  }
  NodeId q = parse_formula(store, query_text);
  bool yes = entails(store, prog, q);
  if (json)
    std::cout << Json{{"entailed", yes}}.dump(2) << "\n";
  else
    std::cout << (yes ? "entailed" : "not entailed") << "\n";
  return yes ? kExitTrue : kExitFalse;
}

int cmd_gen(std::uint64_t seed, const std::string& mode, std::size_t n,
            std::uint32_t max_vars, std::uint32_t max_depth,
            std::uint32_t max_arity) {
  hornnc::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_vars = max_vars;
  cfg.max_depth = max_depth;
  cfg.max_arity = max_arity;
  if (mode == "any")
    cfg.mode = hornnc::GenMode::AnyNnf;
  else if (mode == "nc")
    cfg.mode = hornnc::GenMode::AnyNc;
  else if (mode == "hnf")
    cfg.mode = hornnc::GenMode::HnfBiased;
  else if (mode == "hnc")
    cfg.mode = hornnc::GenMode::HncBiased;
  else
    throw CLI::ValidationError("--mode", "expected any, nc, hnf or hnc");
  FormulaStore store;
  for (NodeId f : generate(store, cfg, n))
    std::cout << print_formula(store, f) << "\n";
  return kExitTrue;
}

Json agreement_json(const hornnc::bench::AgreementStats& st) {
  return Json{{"instances", st.instances},
              {"agreements", st.agreements},
              {"agreement", st.instances
                                ? static_cast<double>(st.agreements) /
                                      static_cast<double>(st.instances)
                                : 0.0},
              {"skipped", st.skipped},
              {"seconds", st.seconds}};
}

Json points_json(const std::vector<hornnc::bench::ScalingPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts)
    arr.push_back(Json{{"size", p.size}, {"seconds", p.seconds}});
  return arr;
}

int cmd_bench(const std::string& suite, std::size_t n, std::uint64_t seed,
              int repeats, const std::string& out_path) {
  using namespace hornnc::bench;
  Json report{{"schema_version", 1}, {"suite", suite}, {"seed", seed}};

  auto run_agreement = [&](std::size_t count) {
    Json j = agreement_json(recognition_agreement(seed, count));
    j["n"] = count;
    return j;
  };
  auto run_solver = [&](std::size_t count) {
    SolverAgreementStats st = solver_agreement(seed, count);
    return Json{{"n", count},
                {"instances", st.instances},
                {"agreements", st.agreements},
                {"agreement", st.instances
                                  ? static_cast<double>(st.agreements) /
                                        static_cast<double>(st.instances)
                                  : 0.0},
                {"model_matches", st.model_matches},
                {"work_violations", st.work_violations},
                {"seconds", st.seconds}};
  };
  auto run_soundness = [&](std::size_t count) {
    SoundnessStats st = rule_soundness(seed, count);
    return Json{{"applications", st.applications},
                {"failures", st.failures},
                {"unit", st.unit},
                {"hyper", st.hyper},
                {"local", st.local},
                {"structural", st.structural}};
  };
  auto run_scaling = [&] {
    std::vector<std::size_t> rec_sizes{1000, 10000, 100000};
    auto rec = recognition_scaling(rec_sizes, repeats);
    Json ratios = Json::array();
    for (std::size_t i = 1; i < rec.size(); ++i)
      ratios.push_back(rec[i].seconds / rec[i - 1].seconds);
    SolverScaling sol =
        solver_scaling({1000, 3162, 10000, 31623, 100000}, repeats);
    return Json{{"recognition",
                 Json{{"points", points_json(rec)}, {"decade_ratios", ratios}}},
                {"solver", Json{{"points", points_json(sol.points)},
                                {"fitted_exponent", sol.fitted_exponent}}}};
  };
  auto run_succinctness = [&] {
    Json rows = Json::array();
    for (const SuccinctnessRow& r : succinctness_table())
      rows.push_back(Json{{"k", r.k},
                          {"n", r.n},
                          {"nc_size", r.nc_size},
                          {"clause_count", r.clause_count},
                          {"widest_clause", r.widest_clause},
                          {"horn", r.horn},
                          {"hnc", r.hnc}});
    return rows;
  };
  auto run_lp = [&](std::size_t count) {
    Json j = agreement_json(lp_agreement(seed, count));
    j["n"] = count;
    return j;
  };

  if (suite == "agreement") {
    Json j = run_agreement(n ? n : 10000);
    report.update(j);
  } else if (suite == "solver") {
    report.update(run_solver(n ? n : 2000));
  } else if (suite == "soundness") {
    report.update(run_soundness(n ? n : 2000));
  } else if (suite == "scaling") {
    report.update(run_scaling());
  } else if (suite == "succinctness") {
    report["rows"] = run_succinctness();
  } else if (suite == "lp") {
    report.update(run_lp(n ? n : 200));
  } else if (suite == "all") {
    report["agreement"] = run_agreement(n ? n : 2000);
    report["solver"] = run_solver(n ? n : 1000);
    report["soundness"] = run_soundness(n ? n : 1000);
    report["scaling"] = run_scaling();
    report["succinctness"] = run_succinctness();
    report["lp"] = run_lp(n ? n : 100);
  } else {
    throw CLI::ValidationError(
        "--suite",
        "expected agreement, solver, soundness, scaling, succinctness, lp or "
        "all");
  }

  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horn non-clausal formula toolkit"};
  app.require_subcommand(1);

  std::string in_file, in_file_b, trace_path, out_path;
  std::string mode = "hnf", suite = "all";
  bool unicode = false, json = false, batch = false, true_prop = false;
  bool star = false, dimacs = false, cleanup = false, model_flag = false;
  std::uint64_t cap = 1'000'000, seed = 7;
  std::size_t count = 10;
  std::uint32_t max_vars = 6, max_depth = 4, max_arity = 4;
  int repeats = 3;

  CLI::App* c_parse = app.add_subcommand("parse", "Parse and reprint");
  c_parse->add_option("file", in_file, "formula file, - for stdin")
      ->required();
  c_parse->add_flag("--unicode", unicode, "connective glyphs and overlines");
  c_parse->add_flag("--json", json, "machine-readable output");

  CLI::App* c_rec = app.add_subcommand("recognize", "Class membership");
  c_rec->add_option("file", in_file, "formula file, - for stdin")->required();
  c_rec->add_option("--trace", trace_path, "write the labeling walk as JSON");
  c_rec->add_flag("--batch", batch, "one formula per input line");
  c_rec->add_flag("--json", json, "machine-readable output");

  CLI::App* c_solve = app.add_subcommand("solve", "Satisfiability and model");
  c_solve->add_option("file", in_file, "formula file, - for stdin")
      ->required();
  c_solve->add_option("--trace", trace_path, "write the derivation as JSON");
  c_solve->add_flag("--model", model_flag,
                    "print the least model (always on in text output)");
  c_solve->add_flag("--true-prop", true_prop,
                    "also rewrite satisfied deep copies to truth");
  c_solve->add_flag("--batch", batch, "one formula per input line");
  c_solve->add_flag("--json", json, "machine-readable output");

  CLI::App* c_cl = app.add_subcommand("clausal", "Clausal translation");
  c_cl->add_option("file", in_file, "formula file, - for stdin")->required();
  c_cl->add_flag("--star", star, "normalize first (accepts any formula)");
  c_cl->add_flag("--dimacs", dimacs, "DIMACS CNF output");
  c_cl->add_flag("--cleanup", cleanup, "dedup literals and clauses");
  c_cl->add_option("--cap", cap, "refuse more clauses than this");
  c_cl->add_flag("--json", json, "machine-readable output");

  CLI::App* c_eq = app.add_subcommand("eq", "Truth-table equivalence");
  c_eq->add_option("a", in_file, "first formula file")->required();
  c_eq->add_option("b", in_file_b, "second formula file")->required();
  c_eq->add_flag("--json", json, "machine-readable output");

  CLI::App* c_ent = app.add_subcommand("entail", "Program consequence");
  c_ent->add_option("program", in_file, "program file")->required();
  c_ent->add_option("query", in_file_b, "query file or formula text")
      ->required();
  c_ent->add_flag("--json", json, "machine-readable output");

  CLI::App* c_gen = app.add_subcommand("gen", "Random formulas");
  c_gen->add_option("--seed", seed, "stream seed");
  c_gen->add_option("--mode", mode, "any, nc, hnf or hnc");
  c_gen->add_option("--n", count, "how many");
  c_gen->add_option("--max-vars", max_vars, "variable pool size");
  c_gen->add_option("--max-depth", max_depth, "nesting bound");
  c_gen->add_option("--max-arity", max_arity, "connective arity bound");

  CLI::App* c_bench = app.add_subcommand("bench", "Validation suites");
  c_bench->add_option(
      "--suite", suite,
      "agreement, solver, soundness, scaling, succinctness, lp or all");
  c_bench->add_option("--n", count, "instances (0 = suite default)")
      ->default_val(0);
  c_bench->add_option("--seed", seed, "stream seed");
  c_bench->add_option("--repeats", repeats, "timing repetitions");
  c_bench->add_option("--out", out_path, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  (void)model_flag;
  try {
    if (*c_parse) return cmd_parse(in_file, unicode, json);
    if (*c_rec) return cmd_recognize(in_file, trace_path, batch, json);
    if (*c_solve)
      return cmd_solve(in_file, trace_path, true_prop, batch, json);
    if (*c_cl) return cmd_clausal(in_file, star, dimacs, cleanup, cap, json);
    if (*c_eq) return cmd_eq(in_file, in_file_b, json);
    if (*c_ent) return cmd_entail(in_file, in_file_b, json);
    if (*c_gen)
      return cmd_gen(seed, mode, count, max_vars, max_depth, max_arity);
    if (*c_bench) return cmd_bench(suite, count, seed, repeats, out_path);
  } catch (const hornnc::InternalInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const hornnc::NotHornNcError& e) {
    std::cerr << e.what() << "\n";
    return kExitFalse;
  } catch (const hornnc::BlowupLimitError& e) {
    std::cerr << e.what() << "\n";
    return kExitFalse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
