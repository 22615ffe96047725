#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc {

// Literal occurrences in distribution order. Repeats are kept: the Horn
// check counts positive occurrences, so (or A A) translates to the
// non-Horn clause (A A). Cleanup mode dedups for display.
struct Clause {
  std::vector<Literal> literals;

  bool operator==(const Clause&) const = default;
};

struct ClausalFormula {
  std::vector<Clause> clauses;

  bool operator==(const ClausalFormula&) const = default;
};

struct ClausalOptions {
  // Refuse translations whose clause count exceeds this (BlowupLimitError).
  // The count is computed before any clause is materialized.
  std::uint64_t clause_cap = 1'000'000;
  // Dedup literals within each clause, drop tautological clauses, dedup
  // whole clauses. Off by default: the untouched translation is what
  // recognition agreement and the clause-count growth figures are defined
  // over.
  bool cleanup = false;
};

// Distributes Disj over Conj, left to right: the translation of
// (or a b) is every union of a clause of a with a clause of b, with the
// clauses of a as the outer loop. Conj concatenates child translations in
// order. Constants translate structurally: truth gives no clauses, falsity
// gives the empty clause. Input must be an NNF (Neg raises NotNnfError).
ClausalFormula clausal_form(const FormulaStore& store, NodeId id,
                            const ClausalOptions& opts = {});

// Constant-aware variant for arbitrary formulas: converts to NNF, folds
// constants, then translates. A formula equal to truth yields no clauses;
// one equal to falsity yields just the empty clause.
ClausalFormula clausal_form_star(FormulaStore& store, NodeId id,
                                 const ClausalOptions& opts = {});

// At most one positive literal per clause.
bool is_horn(const Clause& c);
bool is_horn(const ClausalFormula& f);

// Renders as a formula in the same syntax, e.g. "(and (or ~B C) (or A))".
std::string print_clausal(const FormulaStore& store, const ClausalFormula& f);

// DIMACS CNF with a comment block mapping indices to variable names.
// Variables are numbered by name order.
std::string to_dimacs(const FormulaStore& store, const ClausalFormula& f);

}  // namespace hornnc
