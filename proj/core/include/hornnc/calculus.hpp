#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc {

// A subformula occurrence: the node reached from root by taking the
// path[i]-th child at each step. Paths address the tree unfolding, so one
// shared node can have many occurrences.
struct Occurrence {
  NodeId root;
  std::vector<std::uint32_t> path;
};

// Resolves an occurrence to its node. NotApplicableError on a bad path.
NodeId resolve_occurrence(const FormulaStore& store, const Occurrence& occ);

// Every occurrence of literal l in the tree unfolding of root, in
// lexicographic path order (leftmost outermost first).
std::vector<Occurrence> literal_occurrences(const FormulaStore& store,
                                            NodeId root, Literal l);

enum class RuleKind : std::uint8_t {
  UnitResolution,
  HyperUnitResolution,
  LocalUnitResolution,
  FalsifyDisj,      // a disjunction sheds a false disjunct
  FalsifyConj,      // a conjunction with a false member becomes falsity
  UnwrapSingle,     // a one-child connective becomes its child
  FlattenNested,    // a connective absorbs a nested same-kind child
  TruePropagation,  // optional: a satisfied unit blanks its deeper copies
};

const char* rule_name(RuleKind k);

// One rewrite, enough to replay or audit a derivation. Unit-driven rules
// carry the unit and the list of target paths relative to `before`;
// structural rules carry the rewritten node instead.
struct RuleApplication {
  RuleKind rule;
  bool has_unit = false;
  Literal unit{0, true};
  std::vector<std::vector<std::uint32_t>> targets;
  NodeId target_node = 0;  // structural rules: the node that was rewritten
  NodeId before;
  NodeId after;
};

struct SolveStats {
  std::uint64_t unit_resolutions = 0;   // resolved target occurrences
  std::uint64_t simplifications = 0;    // structural rule firings
  std::uint64_t true_propagations = 0;  // only with the option enabled
  std::uint64_t rounds = 0;             // units taken off the worklist
  std::uint64_t nnf_size = 0;           // tree size of the solved NNF
};

struct SolveOptions {
  bool record_trace = false;
  // Also rewrite deeper same-sign copies of each established unit to truth.
  // Off by default; the core calculus does not need it.
  bool true_propagation = false;
};

struct SolveOutcome {
  bool sat = false;
  // Satisfiable case: the variables that are true in the least model.
  // Everything else is false. Sorted by variable id.
  std::vector<VarId> model;
  NodeId final_root = 0;
  std::vector<RuleApplication> trace;
  SolveStats stats;
};

// Unit resolution: unit must be a literal conjunct of some conjunction N in
// phi, target a complementary literal occurrence inside a different child
// of N. The target is replaced by falsity, which then collapses outward:
// a false disjunct is dropped, a conjunction with a false member becomes
// falsity, and a disjunction left with one disjunct unwraps to it.
// Both occurrences must have root == phi. Returns the rewritten formula.
NodeId apply_ur(FormulaStore& store, NodeId phi, const Occurrence& unit,
                const Occurrence& target);

// Sequential unit resolution of one unit against many targets, in list
// order. Target paths are all relative to the input phi; the rewrite keeps
// track of how earlier steps displace later targets, and targets whose
// subtree a prior step removed are skipped. Each target must independently
// satisfy apply_ur's precondition with some occurrence of unit.
NodeId apply_hur(FormulaStore& store, NodeId phi, Literal unit,
                 const std::vector<Occurrence>& targets);

// Unit resolution confined to a subformula: unit and target are
// occurrences with root == scope, and every occurrence of scope inside phi
// is replaced by the rewritten scope.
NodeId apply_lur(FormulaStore& store, NodeId phi, NodeId scope,
                 const Occurrence& unit, const Occurrence& target);

// One bottom-up structural pass: flatten nested same-kind connectives,
// drop false disjuncts, collapse conjunctions with a false member, unwrap
// one-child connectives. A single pass reaches the fixpoint of these rules.
// Appends a record per firing to trace and adds to stats if given.
NodeId simplify_step(FormulaStore& store, NodeId phi,
                     std::vector<RuleApplication>* trace = nullptr,
                     SolveStats* stats = nullptr);

// Decides satisfiability of a formula in the accepted class and extracts
// the least model, by unit saturation: worklist the top-level unit
// conjuncts, resolve each against all complementary occurrences (leftmost
// first), simplify, repeat with any newly exposed units. Unsatisfiable iff
// the formula collapses to falsity. Throws NotHornNcError outside the
// class. Total structural work is asserted against the size of the input's
// NNF; exceeding it raises InternalInvariantError.
SolveOutcome solve(FormulaStore& store, NodeId phi,
                   const SolveOptions& opts = {});

// Least model of phi if satisfiable (the true variables), else nullopt.
std::optional<std::vector<VarId>> minimal_model(FormulaStore& store,
                                                NodeId phi);

}  // namespace hornnc
