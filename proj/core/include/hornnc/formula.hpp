#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hornnc/errors.hpp"

namespace hornnc {

using VarId = std::uint32_t;
using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { True, False, Lit, Neg, Conj, Disj };

// A variable together with a sign. Positive A prints as "A", negative as "~A".
struct Literal {
  VarId var;
  bool positive;

  Literal negate() const { return Literal{var, !positive}; }
  bool operator==(const Literal& o) const {
    return var == o.var && positive == o.positive;
  }
  bool operator<(const Literal& o) const {
    return var != o.var ? var < o.var : positive < o.positive;
  }
};

struct SizeMetrics {
  std::uint64_t size;      // symbol count of the tree unfolding (saturating)
  std::uint64_t dag_size;  // distinct reachable nodes
  std::uint32_t depth;     // literal/constant = 0
  std::uint32_t n_vars;    // distinct variables
};

// Append-only, hash-consed arena of formula nodes. Building a node shape
// that already exists returns the existing NodeId, so structural equality
// of formulas built in one store is NodeId equality. Children always
// reference earlier-created nodes; the store is acyclic by construction.
//
// Node ids 0 and 1 are the constants T and F. An empty conjunction "(and)"
// and the constant T are distinct nodes with the same semantics, likewise
// "(or)" and F.
class FormulaStore {
public:
  FormulaStore();
  FormulaStore(const FormulaStore&) = delete;
  FormulaStore& operator=(const FormulaStore&) = delete;

  NodeId truth() const { return 0; }
  NodeId falsity() const { return 1; }

  VarId var(std::string_view name);
  const std::string& var_name(VarId v) const { return var_names_[v]; }
  std::size_t var_count() const { return var_names_.size(); }

  NodeId lit(Literal l);
  NodeId lit(std::string_view name, bool positive);
  NodeId neg(NodeId child);
  NodeId conj(std::span<const NodeId> children);
  NodeId disj(std::span<const NodeId> children);
  NodeId conj(std::initializer_list<NodeId> children);
  NodeId disj(std::initializer_list<NodeId> children);
  // kind must be Conj or Disj.
  NodeId connective(NodeKind kind, std::span<const NodeId> children);

  NodeKind kind(NodeId id) const { return nodes_[id].kind; }
  // Valid for Conj/Disj (possibly empty) and Neg (one element).
  std::span<const NodeId> children(NodeId id) const;
  // Valid only for Lit nodes.
  Literal literal(NodeId id) const;
  std::size_t node_count() const { return nodes_.size(); }

private:
  struct Node {
    NodeKind kind;
    std::uint32_t a;      // Lit: (var << 1) | positive; Neg: child id
    std::uint32_t first;  // Conj/Disj: offset into child_pool_
    std::uint32_t count;  // Conj/Disj: child count
  };

  struct NodeHash {
    const FormulaStore* s;
    std::size_t operator()(NodeId id) const;
  };
  struct NodeEq {
    const FormulaStore* s;
    bool operator()(NodeId a, NodeId b) const;
  };

  NodeId intern_pending();

  std::vector<Node> nodes_;
  std::vector<NodeId> child_pool_;
  std::unordered_set<NodeId, NodeHash, NodeEq> cons_table_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::string, VarId, std::hash<std::string>> var_ids_;

  friend struct NodeHash;
  friend struct NodeEq;
};

// Parses the text grammar
//   Formula := Lit | "T" | "F" | "(or" Formula* ")" | "(and" Formula* ")"
//            | "(not" Formula ")"
//   Lit     := Ident | "~" Ident
// Identifiers are [A-Za-z][A-Za-z0-9_]*. "T", "F", "or", "and" and "not"
// are reserved and cannot name variables. Throws ParseError with 1-based
// line/column on malformed or empty input, or trailing garbage.
NodeId parse_formula(FormulaStore& store, std::string_view text);

// Canonical rendering in the same grammar; parse(print(x)) == x.
// Arity 0/1 connectives are preserved: Disj[] prints as "(or)".
std::string print_formula(const FormulaStore& store, NodeId id);

// Display-only rendering with unicode connectives: {∧ ...}, (∨ ...), ¬,
// and overlined negative literals. Not parseable back.
std::string print_formula_unicode(const FormulaStore& store, NodeId id);

// Removes truth constants: any False under Conj / True under Disj absorbs
// the connective, constant children are dropped otherwise, and a connective
// left with a single child is replaced by that child. Empty Conj/Disj
// count as constants. The result is constant-free, or exactly T / F when
// the whole formula reduces. Equivalence-preserving.
NodeId simplify_constants(FormulaStore& store, NodeId id);

// Pushes negations down to literals (De Morgan, double negation, constant
// flip). The result has no Neg nodes; a node shared under both polarities
// yields two copies, so the output dag_size is at most twice the input's.
// Constants are kept, not simplified.
NodeId to_nnf(FormulaStore& store, NodeId id);

SizeMetrics size_metrics(const FormulaStore& store, NodeId id);

}  // namespace hornnc
