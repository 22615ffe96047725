#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc {

// Total assignment for the variables of a formula.
using Assignment = std::map<VarId, bool>;

// Truth-table operations refuse formulas with more variables than this.
inline constexpr std::uint32_t kOracleVarLimit = 24;

// Distinct variables reachable from id, sorted by variable name.
std::vector<VarId> formula_vars(const FormulaStore& store, NodeId id);

// Standard semantics: Neg flips, Conj is min over children, Disj is max;
// empty Conj is 1, empty Disj is 0. Throws UnassignedVariableError if a
// reachable variable is missing from a.
bool evaluate(const FormulaStore& store, NodeId id, const Assignment& a);

// All satisfying assignments over formula_vars(id), in lexicographic order
// (first variable most significant, false < true). Throws
// TooManyVariablesError above kOracleVarLimit.
std::vector<Assignment> enumerate_models(const FormulaStore& store, NodeId id);

// True iff the two formulas agree on every assignment over the union of
// their variables. Same variable guard as enumerate_models.
bool equivalent(const FormulaStore& store, NodeId a, NodeId b);

enum class GenMode : std::uint8_t {
  AnyNnf,     // unconstrained NNF, constant-free
  AnyNc,      // NNF plus arbitrary Neg nodes
  HnfBiased,  // built from the inductive HNF rules, HNF by construction
  HncBiased,  // HnfBiased output reshaped by De Morgan unpushing
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::uint32_t max_vars = 6;
  std::uint32_t max_depth = 4;
  std::uint32_t max_arity = 4;
  GenMode mode = GenMode::AnyNnf;
};

// n random formulas. Same config (including seed) produces the same
// sequence run-to-run on one build; the exact stream is not portable
// across implementations. Formulas grow top-down: at each level the node
// becomes a literal with a probability that rises toward max_depth, and
// connective arity is drawn with geometric decay capped at max_arity.
std::vector<NodeId> generate(FormulaStore& store, const GenConfig& cfg,
                             std::size_t n);

}  // namespace hornnc
