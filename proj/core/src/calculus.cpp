#include "hornnc/calculus.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hornnc/errors.hpp"
#include "hornnc/oracle.hpp"
#include "hornnc/recognizer.hpp"
#include "walk.hpp"

namespace hornnc {

const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::UnitResolution:
      return "unit-resolution";
    case RuleKind::HyperUnitResolution:
      return "hyper-unit-resolution";
    case RuleKind::LocalUnitResolution:
      return "local-unit-resolution";
    case RuleKind::FalsifyDisj:
      return "drop-false-disjunct";
    case RuleKind::FalsifyConj:
      return "collapse-false-conjunction";
    case RuleKind::UnwrapSingle:
      return "unwrap-singleton";
    case RuleKind::FlattenNested:
      return "flatten-nested";
    case RuleKind::TruePropagation:
      return "true-propagation";
  }
  return "?";
}

NodeId resolve_occurrence(const FormulaStore& store, const Occurrence& occ) {
  NodeId cur = occ.root;
  for (std::uint32_t step : occ.path) {
    auto cs = store.children(cur);
    if (step >= cs.size())
      throw NotApplicableError("occurrence path leaves the formula");
    cur = cs[step];
  }
  return cur;
}

std::vector<Occurrence> literal_occurrences(const FormulaStore& store,
                                            NodeId root, Literal l) {
  std::vector<Occurrence> occs;
  // Tree-unfolding walk: shared nodes are reported once per path.
  struct Frame {
    NodeId id;
    std::uint32_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  std::vector<std::uint32_t> path;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == 0 && store.kind(f.id) == NodeKind::Lit &&
        store.literal(f.id) == l)
      occs.push_back(Occurrence{root, path});
    auto cs = store.children(f.id);
    if (f.next < cs.size()) {
      NodeId child = cs[f.next];
      path.push_back(f.next);
      ++f.next;
      stack.push_back({child, 0});
    } else {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
  }
  return occs;
}

// ---------------------------------------------------------------------------
// The falsification cascade shared by all unit-resolution entry points.

namespace {

std::uint64_t lit_key(Literal l) {
  return (static_cast<std::uint64_t>(l.var) << 1) |
         static_cast<std::uint64_t>(l.positive);
}

// Result of replacing the subformula at `path` with falsity and letting it
// collapse outward.
struct Cascade {
  NodeId new_root = 0;
  bool collapsed = false;  // the whole formula became falsity
  // Valid when !collapsed: path of the disjunction that absorbed the loss.
  std::vector<std::uint32_t> stop_path;
  std::uint32_t dropped_index = 0;
  // The stop disjunction was left with one disjunct and unwrapped into it.
  bool unwrapped = false;
};

std::vector<NodeId> path_nodes(const FormulaStore& store, NodeId root,
                               std::span<const std::uint32_t> path) {
  std::vector<NodeId> nodes;
  nodes.reserve(path.size() + 1);
  nodes.push_back(root);
  NodeId cur = root;
  for (std::uint32_t step : path) {
    auto cs = store.children(cur);
    if (step >= cs.size())
      throw NotApplicableError("occurrence path leaves the formula");
    cur = cs[step];
    nodes.push_back(cur);
  }
  return nodes;
}

Cascade falsify(FormulaStore& store, NodeId root,
                std::span<const std::uint32_t> path) {
  assert(!path.empty());
  std::vector<NodeId> nodes = path_nodes(store, root, path);
  for (std::size_t up = path.size(); up-- > 0;) {
    NodeId parent = nodes[up];
    std::uint32_t slot = path[up];
    switch (store.kind(parent)) {
      case NodeKind::Conj:
        continue;  // a false member falsifies the whole conjunction
      case NodeKind::Disj: {
        auto cs = store.children(parent);
        if (cs.size() == 1) continue;  // losing the only disjunct: falsity
        std::vector<NodeId> keep;
        keep.reserve(cs.size() - 1);
        for (std::uint32_t j = 0; j < cs.size(); ++j)
          if (j != slot) keep.push_back(cs[j]);
        Cascade c;
        c.stop_path.assign(path.begin(), path.begin() + up);
        c.dropped_index = slot;
        c.unwrapped = keep.size() == 1;
        NodeId repl = c.unwrapped ? keep[0] : store.disj(keep);
        for (std::size_t j = up; j-- > 0;) {
          auto pcs = store.children(nodes[j]);
          std::vector<NodeId> rebuilt(pcs.begin(), pcs.end());
          rebuilt[path[j]] = repl;
          repl = store.connective(store.kind(nodes[j]), rebuilt);
        }
        c.new_root = repl;
        return c;
      }
      default:
        throw NotApplicableError("occurrence path crosses a non-connective");
    }
  }
  Cascade c;
  c.new_root = store.disj({});
  c.collapsed = true;
  return c;
}

// Rewrites a path through `c`'s rewrite. nullopt when the addressed
// subtree was removed.
std::optional<std::vector<std::uint32_t>> remap_path(
    const Cascade& c, const std::vector<std::uint32_t>& r) {
  if (c.collapsed) return std::nullopt;
  std::size_t m = c.stop_path.size();
  if (r.size() <= m) return r;  // cannot descend through the stop node
  for (std::size_t i = 0; i < m; ++i)
    if (r[i] != c.stop_path[i]) return r;  // untouched branch
  std::uint32_t e = r[m];
  if (e == c.dropped_index) return std::nullopt;
  std::vector<std::uint32_t> mapped(c.stop_path);
  std::uint32_t shifted = e > c.dropped_index ? e - 1 : e;
  if (c.unwrapped) {
    // The stop disjunction vanished; its surviving child took its place.
    assert(shifted == 0);
  } else {
    mapped.push_back(shifted);
  }
  mapped.insert(mapped.end(), r.begin() + static_cast<std::ptrdiff_t>(m) + 1,
                r.end());
  return mapped;
}

struct HurOutcome {
  NodeId root;
  std::uint64_t resolved = 0;
  bool collapsed = false;
  std::set<std::uint32_t> touched;  // root child slots that were rebuilt
};

// Applies the cascade for each path in order, displacing later paths as
// earlier rewrites shift them. Paths are relative to the input root.
HurOutcome hur_sequential(FormulaStore& store, NodeId root, Literal unit,
                          std::vector<std::vector<std::uint32_t>> paths) {
  HurOutcome h;
  h.root = root;
  Literal comp = unit.negate();
  std::vector<bool> gone(paths.size(), false);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (gone[i]) continue;
    Occurrence occ{h.root, paths[i]};
    NodeId target = resolve_occurrence(store, occ);
    if (store.kind(target) != NodeKind::Lit ||
        !(store.literal(target) == comp))
      throw InternalInvariantError(
          "displaced resolution target no longer holds the complement");
    Cascade c = falsify(store, h.root, paths[i]);
    ++h.resolved;
    h.root = c.new_root;
    if (c.collapsed) {
      h.collapsed = true;
      break;
    }
    if (!paths[i].empty()) h.touched.insert(paths[i][0]);
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (gone[j]) continue;
      auto mapped = remap_path(c, paths[j]);
      if (!mapped)
        gone[j] = true;
      else
        paths[j] = std::move(*mapped);
    }
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public unit-resolution entry points.

NodeId apply_ur(FormulaStore& store, NodeId phi, const Occurrence& unit,
                const Occurrence& target) {
  if (unit.root != phi || target.root != phi)
    throw NotApplicableError("occurrences must be rooted at the formula");
  NodeId un = resolve_occurrence(store, unit);
  if (store.kind(un) != NodeKind::Lit)
    throw NotApplicableError("unit occurrence is not a literal");
  if (unit.path.empty())
    throw NotApplicableError("unit must be a conjunct, not the whole formula");
  Literal ul = store.literal(un);
  std::vector<NodeId> unodes = path_nodes(store, phi, unit.path);
  std::size_t p = unit.path.size() - 1;
  if (store.kind(unodes[p]) != NodeKind::Conj)
    throw NotApplicableError("unit is not a conjunct of a conjunction");
  NodeId tn = resolve_occurrence(store, target);
  if (store.kind(tn) != NodeKind::Lit ||
      !(store.literal(tn) == ul.negate()))
    throw NotApplicableError("target is not the unit's complement");
  if (target.path.size() <= p ||
      !std::equal(unit.path.begin(),
                  unit.path.begin() + static_cast<std::ptrdiff_t>(p),
                  target.path.begin()))
    throw NotApplicableError(
        "target does not sit inside the unit's conjunction");
  if (target.path[p] == unit.path[p])
    throw NotApplicableError("target sits inside the unit conjunct itself");
  return falsify(store, phi, target.path).new_root;
}

NodeId apply_hur(FormulaStore& store, NodeId phi, Literal unit,
                 const std::vector<Occurrence>& targets) {
  Literal comp = unit.negate();
  std::vector<std::vector<std::uint32_t>> paths;
  paths.reserve(targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Occurrence& t = targets[k];
    std::string where = "target " + std::to_string(k);
    if (t.root != phi)
      throw NotApplicableError(where + " is not rooted at the formula");
    NodeId tn = resolve_occurrence(store, t);
    if (store.kind(tn) != NodeKind::Lit || !(store.literal(tn) == comp))
      throw NotApplicableError(where + " is not the unit's complement");
    // Some conjunction strictly above the target must carry the unit as a
    // literal conjunct outside the target's branch.
    std::vector<NodeId> nodes = path_nodes(store, phi, t.path);
    bool ok = false;
    for (std::size_t i = 0; i < t.path.size() && !ok; ++i) {
      if (store.kind(nodes[i]) != NodeKind::Conj) continue;
      auto cs = store.children(nodes[i]);
      for (std::uint32_t j = 0; j < cs.size(); ++j) {
        if (j == t.path[i]) continue;
        if (store.kind(cs[j]) == NodeKind::Lit &&
            store.literal(cs[j]) == unit) {
          ok = true;
          break;
        }
      }
    }
    if (!ok)
      throw NotApplicableError(where +
                               " has no matching unit conjunct above it");
    paths.push_back(t.path);
  }
  return hur_sequential(store, phi, unit, std::move(paths)).root;
}

NodeId apply_lur(FormulaStore& store, NodeId phi, NodeId scope,
                 const Occurrence& unit, const Occurrence& target) {
  if (unit.root != scope || target.root != scope)
    throw NotApplicableError("occurrences must be rooted at the scope");
  NodeId new_scope = apply_ur(store, scope, unit, target);
  if (scope == phi) return new_scope;
  // Swap the rewritten scope in for every occurrence of the old one.
  std::unordered_map<NodeId, NodeId> memo;
  memo.emplace(scope, new_scope);
  detail::postorder(store, phi, [&](NodeId n) {
    if (memo.count(n)) return;
    switch (store.kind(n)) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Lit:
        memo.emplace(n, n);
        break;
      case NodeKind::Neg:
        memo.emplace(n, store.neg(memo.at(store.children(n)[0])));
        break;
      case NodeKind::Conj:
      case NodeKind::Disj: {
        auto cs = store.children(n);
        std::vector<NodeId> rebuilt(cs.begin(), cs.end());
        for (NodeId& c : rebuilt) c = memo.at(c);
        memo.emplace(n, store.connective(store.kind(n), rebuilt));
        break;
      }
    }
  });
  NodeId out = memo.at(phi);
  if (out == phi)
    throw NotApplicableError("scope does not occur in the formula");
  return out;
}

// ---------------------------------------------------------------------------
// Structural simplification.

namespace {

// One bottom-up pass over nodes not already in memo. The memo can persist
// across calls: a node's simplified form never changes.
NodeId simplify_cached(FormulaStore& store, NodeId phi,
                       std::unordered_map<NodeId, NodeId>& memo,
                       std::vector<RuleApplication>* trace,
                       SolveStats* stats) {
  auto note = [&](RuleKind k, NodeId before, NodeId after,
                  std::uint64_t times) {
    if (stats) stats->simplifications += times;
    if (trace)
      for (std::uint64_t i = 0; i < times; ++i) {
        RuleApplication app;
        app.rule = k;
        app.target_node = before;
        app.before = before;
        app.after = after;
        trace->push_back(app);
      }
  };

  struct Item {
    NodeId id;
    bool expand;
  };
  std::vector<Item> stack{{phi, true}};
  std::vector<NodeId> out;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (memo.count(it.id)) continue;
    if (it.expand) {
      stack.push_back({it.id, false});
      for (NodeId c : store.children(it.id)) stack.push_back({c, true});
      continue;
    }
    switch (store.kind(it.id)) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Lit:
        memo.emplace(it.id, it.id);
        break;
      case NodeKind::Neg:
        memo.emplace(it.id, store.neg(memo.at(store.children(it.id)[0])));
        break;
      case NodeKind::Conj: {
        std::vector<NodeId> cs(store.children(it.id).begin(),
                               store.children(it.id).end());
        out.clear();
        bool falsified = false;
        std::uint64_t flattened = 0;
        for (NodeId raw : cs) {
          NodeId c = memo.at(raw);
          if (store.kind(c) == NodeKind::Disj && store.children(c).empty()) {
            falsified = true;
            break;
          }
          if (store.kind(c) == NodeKind::Conj) {
            ++flattened;
            auto gs = store.children(c);
            out.insert(out.end(), gs.begin(), gs.end());
          } else {
            out.push_back(c);
          }
        }
        NodeId result;
        if (falsified) {
          result = store.disj({});
          note(RuleKind::FalsifyConj, it.id, result, 1);
        } else if (out.size() == 1) {
          result = out[0];
          if (flattened) note(RuleKind::FlattenNested, it.id, result, flattened);
          note(RuleKind::UnwrapSingle, it.id, result, 1);
        } else {
          result = store.conj(out);
          if (flattened) note(RuleKind::FlattenNested, it.id, result, flattened);
        }
        memo.emplace(it.id, result);
        break;
      }
      case NodeKind::Disj: {
        std::vector<NodeId> cs(store.children(it.id).begin(),
                               store.children(it.id).end());
        out.clear();
        std::uint64_t dropped = 0, flattened = 0;
        for (NodeId raw : cs) {
          NodeId c = memo.at(raw);
          if (store.kind(c) == NodeKind::Disj) {
            auto gs = store.children(c);
            if (gs.empty())
              ++dropped;
            else {
              ++flattened;
              out.insert(out.end(), gs.begin(), gs.end());
            }
          } else {
            out.push_back(c);
          }
        }
        NodeId result;
        if (out.size() == 1)
          result = out[0];
        else
          result = store.disj(out);
        if (dropped) note(RuleKind::FalsifyDisj, it.id, result, dropped);
        if (flattened) note(RuleKind::FlattenNested, it.id, result, flattened);
        if (out.size() == 1) note(RuleKind::UnwrapSingle, it.id, result, 1);
        memo.emplace(it.id, result);
        break;
      }
    }
  }
  return memo.at(phi);
}

}  // namespace

NodeId simplify_step(FormulaStore& store, NodeId phi,
                     std::vector<RuleApplication>* trace, SolveStats* stats) {
  std::unordered_map<NodeId, NodeId> memo;
  return simplify_cached(store, phi, memo, trace, stats);
}

// ---------------------------------------------------------------------------
// Satisfiability by unit saturation.

namespace {

// Dual of falsify: the subformula at `path` became true. A disjunction
// with a true disjunct is true; a conjunction sheds the true member and
// unwraps if one member remains.
Cascade truthify(FormulaStore& store, NodeId root,
                 std::span<const std::uint32_t> path) {
  assert(!path.empty());
  std::vector<NodeId> nodes = path_nodes(store, root, path);
  for (std::size_t up = path.size(); up-- > 0;) {
    NodeId parent = nodes[up];
    std::uint32_t slot = path[up];
    switch (store.kind(parent)) {
      case NodeKind::Disj:
        continue;  // a true disjunct satisfies the whole disjunction
      case NodeKind::Conj: {
        auto cs = store.children(parent);
        if (cs.size() == 1) continue;
        std::vector<NodeId> keep;
        keep.reserve(cs.size() - 1);
        for (std::uint32_t j = 0; j < cs.size(); ++j)
          if (j != slot) keep.push_back(cs[j]);
        Cascade c;
        c.stop_path.assign(path.begin(), path.begin() + up);
        c.dropped_index = slot;
        c.unwrapped = keep.size() == 1;
        NodeId repl = c.unwrapped ? keep[0] : store.conj(keep);
        for (std::size_t j = up; j-- > 0;) {
          auto pcs = store.children(nodes[j]);
          std::vector<NodeId> rebuilt(pcs.begin(), pcs.end());
          rebuilt[path[j]] = repl;
          repl = store.connective(store.kind(nodes[j]), rebuilt);
        }
        c.new_root = repl;
        return c;
      }
      default:
        throw InternalInvariantError("true propagation crossed a leaf");
    }
  }
  Cascade c;
  c.new_root = store.conj({});
  c.collapsed = true;  // the whole formula became truth
  return c;
}

// Lexicographic paths of every occurrence of `want` inside child `slot`
// of `root`, prefixed with slot. min_depth filters on total path length.
void collect_occurrences(const FormulaStore& store, NodeId root,
                         std::uint32_t slot, Literal want,
                         std::size_t min_depth,
                         std::vector<std::vector<std::uint32_t>>& out_paths) {
  struct Frame {
    NodeId id;
    std::uint32_t next;
  };
  std::vector<Frame> stack{{store.children(root)[slot], 0}};
  std::vector<std::uint32_t> path{slot};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == 0 && store.kind(f.id) == NodeKind::Lit &&
        store.literal(f.id) == want && path.size() >= min_depth)
      out_paths.push_back(path);
    auto cs = store.children(f.id);
    if (f.next < cs.size()) {
      NodeId child = cs[f.next];
      path.push_back(f.next);
      ++f.next;
      stack.push_back({child, 0});
    } else {
      stack.pop_back();
      path.pop_back();
    }
  }
}

// Literal keys occurring under each root child, for occurrence discovery
// without a full rescan per unit. Entries can go stale as rewrites remove
// literals; a fruitless scan erases them lazily.
using HintMap = std::unordered_map<std::uint64_t, std::set<std::uint32_t>>;

void build_hints(const FormulaStore& store, NodeId root, HintMap& hints) {
  hints.clear();
  auto cs = store.children(root);
  for (std::uint32_t j = 0; j < cs.size(); ++j) {
    // Fresh visited set per child: a node shared across children must
    // register hints for both slots.
    std::unordered_set<NodeId> seen;
    std::vector<NodeId> stack{cs[j]};
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      if (!seen.insert(n).second) continue;
      if (store.kind(n) == NodeKind::Lit)
        hints[lit_key(store.literal(n))].insert(j);
      for (NodeId c : store.children(n)) stack.push_back(c);
    }
  }
}

}  // namespace

SolveOutcome solve(FormulaStore& store, NodeId phi, const SolveOptions& opts) {
  SolveOutcome out;
  std::vector<RuleApplication>* trace =
      opts.record_trace ? &out.trace : nullptr;

  NodeId w = simplify_constants(store, to_nnf(store, phi));
  out.stats.nnf_size = size_metrics(store, w).size;

  if (!detail::is_true_const(store, w) && !detail::is_false_const(store, w) &&
      classify_nnf(store, w) == HnfLabel::NotHnf)
    throw NotHornNcError("formula is outside the solvable class");

  std::unordered_map<NodeId, NodeId> simp_cache;
  w = simplify_cached(store, w, simp_cache, trace, &out.stats);

  std::set<VarId> positives;
  std::unordered_set<std::uint64_t> enqueued;
  std::deque<Literal> queue;
  HintMap hints;
  bool hints_valid = false;

  auto maybe_enqueue = [&](Literal l) {
    if (!enqueued.insert(lit_key(l)).second) return;
    queue.push_back(l);
    if (l.positive) positives.insert(l.var);
  };

  auto check_work_bound = [&]() {
    std::uint64_t work = out.stats.unit_resolutions +
                         out.stats.simplifications +
                         out.stats.true_propagations;
    if (work > out.stats.nnf_size)
      throw InternalInvariantError("structural work exceeded the input size");
  };

  auto finish_sat = [&]() {
    out.sat = true;
    out.model.assign(positives.begin(), positives.end());
    out.final_root = w;
    Assignment a;
    for (VarId v : formula_vars(store, phi)) a[v] = positives.count(v) > 0;
    if (!evaluate(store, phi, a))
      throw InternalInvariantError("computed model fails the input formula");
    check_work_bound();
    return out;
  };

  while (true) {
    if (detail::is_true_const(store, w)) return finish_sat();
    if (detail::is_false_const(store, w)) {
      out.sat = false;
      out.final_root = w;
      check_work_bound();
      return out;
    }
    NodeKind rk = store.kind(w);
    if (rk == NodeKind::Lit) {
      Literal l = store.literal(w);
      if (l.positive) positives.insert(l.var);
      return finish_sat();
    }
    if (rk == NodeKind::Disj) {
      // Two or more disjuncts, at most one of which is non-negative: the
      // all-false assignment satisfies a negative disjunct outright.
      return finish_sat();
    }
    if (rk != NodeKind::Conj)
      throw InternalInvariantError("unexpected connective at the root");

    if (!hints_valid) {
      build_hints(store, w, hints);
      auto cs = store.children(w);
      for (NodeId c : cs)
        if (store.kind(c) == NodeKind::Lit) maybe_enqueue(store.literal(c));
      hints_valid = true;
    }

    if (queue.empty()) return finish_sat();
    Literal unit = queue.front();
    queue.pop_front();
    ++out.stats.rounds;

    // Root arity at the start of the round. Resolution rewrites root
    // children in place; only true propagation (a root-level drop) or a
    // splice during simplification can move them, and both invalidate the
    // positional bookkeeping below.
    std::size_t arity_before = store.children(w).size();
    std::set<std::uint32_t> touched;
    bool structure_changed = false;

    // Resolve every complement occurrence under the root, leftmost first.
    Literal comp = unit.negate();
    std::vector<std::vector<std::uint32_t>> paths;
    auto hit = hints.find(lit_key(comp));
    if (hit != hints.end()) {
      std::vector<std::uint32_t> slots(hit->second.begin(),
                                       hit->second.end());
      for (std::uint32_t j : slots) {
        std::size_t before_count = paths.size();
        collect_occurrences(store, w, j, comp, 1, paths);
        if (paths.size() == before_count) hit->second.erase(j);
      }
    }
    if (!paths.empty()) {
      NodeId before = w;
      HurOutcome h = hur_sequential(store, w, unit, paths);
      out.stats.unit_resolutions += h.resolved;
      if (trace) {
        RuleApplication app;
        app.rule = h.resolved > 1 ? RuleKind::HyperUnitResolution
                                  : RuleKind::UnitResolution;
        app.has_unit = true;
        app.unit = unit;
        app.targets = paths;
        app.before = before;
        app.after = h.root;
        trace->push_back(app);
      }
      w = h.root;
      if (h.collapsed) continue;
      touched.insert(h.touched.begin(), h.touched.end());
      structure_changed = true;
    }

    if (opts.true_propagation && store.kind(w) == NodeKind::Conj) {
      // Blank deeper same-sign copies of the unit: with the unit given,
      // they are true. Copies that are root conjuncts stay.
      std::vector<std::vector<std::uint32_t>> tpaths;
      auto uhit = hints.find(lit_key(unit));
      if (uhit != hints.end()) {
        std::vector<std::uint32_t> slots(uhit->second.begin(),
                                         uhit->second.end());
        for (std::uint32_t j : slots) {
          std::size_t before_count = tpaths.size();
          collect_occurrences(store, w, j, unit, 2, tpaths);
          if (tpaths.size() == before_count) uhit->second.erase(j);
        }
      }
      if (!tpaths.empty()) {
        NodeId before = w;
        NodeId cur = w;
        std::vector<bool> gone(tpaths.size(), false);
        bool to_true = false;
        for (std::size_t i = 0; i < tpaths.size() && !to_true; ++i) {
          if (gone[i]) continue;
          Cascade c = truthify(store, cur, tpaths[i]);
          ++out.stats.true_propagations;
          cur = c.new_root;
          if (c.collapsed) {
            to_true = true;
            break;
          }
          if (!tpaths[i].empty()) touched.insert(tpaths[i][0]);
          for (std::size_t j = i + 1; j < tpaths.size(); ++j) {
            if (gone[j]) continue;
            auto mapped = remap_path(c, tpaths[j]);
            if (!mapped)
              gone[j] = true;
            else
              tpaths[j] = std::move(*mapped);
          }
        }
        if (trace) {
          RuleApplication app;
          app.rule = RuleKind::TruePropagation;
          app.has_unit = true;
          app.unit = unit;
          app.targets = tpaths;
          app.before = before;
          app.after = cur;
          trace->push_back(app);
        }
        w = cur;
        structure_changed = true;
        if (to_true) continue;
      }
    }

    if (!structure_changed) continue;
    if (store.kind(w) != NodeKind::Conj) continue;

    NodeId w2 = simplify_cached(store, w, simp_cache, trace, &out.stats);
    bool in_place = store.kind(w2) == NodeKind::Conj &&
                    store.children(w2).size() == arity_before;
    w = w2;
    if (!in_place) {
      // Rebuilding the hint index rescans every root child for units.
      hints_valid = false;
      continue;
    }
    // Positional update: only the slots this round rewrote can have
    // exposed a new unit conjunct.
    auto cs = store.children(w);
    for (std::uint32_t j : touched)
      if (j < cs.size() && store.kind(cs[j]) == NodeKind::Lit)
        maybe_enqueue(store.literal(cs[j]));
  }
}

std::optional<std::vector<VarId>> minimal_model(FormulaStore& store,
                                                NodeId phi) {
  SolveOutcome out = solve(store, phi);
  if (!out.sat) return std::nullopt;
  return out.model;
}

}  // namespace hornnc
