#pragma once

#include <string_view>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc {

// One rule: body implies head. The body is an NNF over positive literals
// only (truth stands in for an empty body); the head is any formula the
// recognizer accepts, so heads can be conjunctions, nested implications
// encoded as disjunctions, or falsity for denial rules.
struct HnfRule {
  NodeId body;
  NodeId head;
};

struct HnfProgram {
  std::vector<VarId> facts;
  std::vector<HnfRule> rules;
};

// Conjunction of the facts and, per rule, (or <negated body> <head>).
// Validates every rule and throws InvalidRuleError (carrying the rule's
// index) on a negative literal or Neg in a body, or a head outside the
// accepted class. The result always lies in the accepted class.
NodeId program_to_formula(FormulaStore& store, const HnfProgram& prog);

// Positive-logic consequence: true iff every model of the program
// satisfies query, decided by evaluating query in the program's least
// model. An unsatisfiable program entails everything.
bool entails(FormulaStore& store, const HnfProgram& prog, NodeId query);

// Line-based program text:
//   # comment                 blank lines and #-lines are skipped
//   fact <var>
//   rule <body> => <head>     body and head in formula syntax
// Positions in errors refer to the program text.
HnfProgram parse_program(FormulaStore& store, std::string_view text);

}  // namespace hornnc
