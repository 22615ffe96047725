#pragma once

#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc::detail {

// Calls fn(id) for every node reachable from root, children before parents,
// each distinct node once. Iterative; safe on very deep formulas. fn may
// append new nodes to the store; they are not visited.
template <typename Fn>
void postorder(const FormulaStore& store, NodeId root, Fn&& fn) {
  struct Item {
    NodeId id;
    bool expand;
  };
  std::vector<char> seen(store.node_count(), 0);
  std::vector<Item> stack;
  stack.push_back({root, true});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (!it.expand) {
      fn(it.id);
      continue;
    }
    if (seen[it.id]) continue;
    seen[it.id] = 1;
    stack.push_back({it.id, false});
    for (NodeId c : store.children(it.id)) stack.push_back({c, true});
  }
}

// True and the empty conjunction denote truth; False and the empty
// disjunction denote falsity.
inline bool is_true_const(const FormulaStore& s, NodeId id) {
  return s.kind(id) == NodeKind::True ||
         (s.kind(id) == NodeKind::Conj && s.children(id).empty());
}

inline bool is_false_const(const FormulaStore& s, NodeId id) {
  return s.kind(id) == NodeKind::False ||
         (s.kind(id) == NodeKind::Disj && s.children(id).empty());
}

}  // namespace hornnc::detail
