#include "hornnc/clausal.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <unordered_map>

#include "hornnc/errors.hpp"
#include "walk.hpp"

namespace hornnc {

namespace {

constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (kCountMax - a < b) ? kCountMax : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return (a > kCountMax / b) ? kCountMax : a * b;
}

// Raw distribution concatenates literal occurrences; repeats must survive,
// or the Horn test would miss positive literals that the recognizer counts.
// (or A A) distributes to the non-Horn clause (A A), matching its not-hnf
// classification; deduplicating first would falsely yield the Horn (A).
void merge_into(Clause& acc, const Clause& c) {
  acc.literals.insert(acc.literals.end(), c.literals.begin(),
                      c.literals.end());
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    for (std::size_t j = i + 1; j < c.literals.size(); ++j)
      if (c.literals[i].var == c.literals[j].var &&
          c.literals[i].positive != c.literals[j].positive)
        return true;
  return false;
}

}  // namespace

ClausalFormula clausal_form(const FormulaStore& store, NodeId id,
                            const ClausalOptions& opts) {
  // Pass 1: clause counts, so oversized translations are refused before
  // anything is built. Every node is capped, not just the root: a sibling
  // of truth can be larger than the whole result.
  std::unordered_map<NodeId, std::uint64_t> count;
  detail::postorder(store, id, [&](NodeId n) {
    std::uint64_t c = 0;
    switch (store.kind(n)) {
      case NodeKind::True:
        c = 0;
        break;
      case NodeKind::False:
        c = 1;
        break;
      case NodeKind::Lit:
        c = 1;
        break;
      case NodeKind::Neg:
        throw NotNnfError("clausal translation requires an NNF input");
      case NodeKind::Conj:
        c = 0;
        for (NodeId ch : store.children(n)) c = sat_add(c, count.at(ch));
        break;
      case NodeKind::Disj:
        c = 1;
        for (NodeId ch : store.children(n)) c = sat_mul(c, count.at(ch));
        break;
    }
    if (c > opts.clause_cap)
      throw BlowupLimitError("clausal translation exceeds the clause cap of " +
                             std::to_string(opts.clause_cap));
    count.emplace(n, c);
  });

  // Pass 2: materialize.
  std::unordered_map<NodeId, ClausalFormula> memo;
  detail::postorder(store, id, [&](NodeId n) {
    ClausalFormula f;
    switch (store.kind(n)) {
      case NodeKind::True:
        break;
      case NodeKind::False:
        f.clauses.push_back(Clause{});
        break;
      case NodeKind::Lit:
        f.clauses.push_back(Clause{{store.literal(n)}});
        break;
      case NodeKind::Neg:
        break;  // unreachable, rejected in pass 1
      case NodeKind::Conj:
        for (NodeId ch : store.children(n)) {
          const ClausalFormula& part = memo.at(ch);
          f.clauses.insert(f.clauses.end(), part.clauses.begin(),
                           part.clauses.end());
        }
        break;
      case NodeKind::Disj: {
        f.clauses.push_back(Clause{});
        for (NodeId ch : store.children(n)) {
          const ClausalFormula& part = memo.at(ch);
          ClausalFormula next;
          next.clauses.reserve(f.clauses.size() * part.clauses.size());
          for (const Clause& a : f.clauses)
            for (const Clause& b : part.clauses) {
              Clause u = a;
              merge_into(u, b);
              next.clauses.push_back(std::move(u));
            }
          f = std::move(next);
        }
        break;
      }
    }
    memo.emplace(n, std::move(f));
  });

  ClausalFormula result = std::move(memo.at(id));
  if (opts.cleanup) {
    ClausalFormula kept;
    std::set<std::vector<std::pair<VarId, bool>>> seen;
    for (Clause& c : result.clauses) {
      if (is_tautology(c)) continue;
      Clause unique;
      for (Literal l : c.literals) {
        bool present = false;
        for (Literal have : unique.literals)
          if (have == l) {
            present = true;
            break;
          }
        if (!present) unique.literals.push_back(l);
      }
      std::vector<std::pair<VarId, bool>> key;
      key.reserve(unique.literals.size());
      for (Literal l : unique.literals) key.emplace_back(l.var, l.positive);
      std::sort(key.begin(), key.end());
      if (seen.insert(std::move(key)).second)
        kept.clauses.push_back(std::move(unique));
    }
    result = std::move(kept);
  }
  return result;
}

ClausalFormula clausal_form_star(FormulaStore& store, NodeId id,
                                 const ClausalOptions& opts) {
  NodeId nnf = to_nnf(store, id);
  NodeId folded = simplify_constants(store, nnf);
  return clausal_form(store, folded, opts);
}

bool is_horn(const Clause& c) {
  int positives = 0;
  for (Literal l : c.literals)
    if (l.positive && ++positives > 1) return false;
  return true;
}

bool is_horn(const ClausalFormula& f) {
  for (const Clause& c : f.clauses)
    if (!is_horn(c)) return false;
  return true;
}

std::string print_clausal(const FormulaStore& store, const ClausalFormula& f) {
  std::string outs = "(and";
  for (const Clause& c : f.clauses) {
    outs += " (or";
    for (Literal l : c.literals) {
      outs += ' ';
      if (!l.positive) outs += '~';
      outs += store.var_name(l.var);
    }
    outs += ')';
  }
  outs += ')';
  return outs;
}

std::string to_dimacs(const FormulaStore& store, const ClausalFormula& f) {
  std::vector<VarId> vars;
  {
    std::set<VarId> seen;
    for (const Clause& c : f.clauses)
      for (Literal l : c.literals) seen.insert(l.var);
    vars.assign(seen.begin(), seen.end());
    std::sort(vars.begin(), vars.end(), [&](VarId a, VarId b) {
      return store.var_name(a) < store.var_name(b);
    });
  }
  std::vector<int> index(store.var_count(), 0);
  std::string outs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    index[vars[i]] = static_cast<int>(i) + 1;
    outs += "c " + std::to_string(i + 1) + " = " + store.var_name(vars[i]) +
            "\n";
  }
  outs += "p cnf " + std::to_string(vars.size()) + " " +
          std::to_string(f.clauses.size()) + "\n";
  for (const Clause& c : f.clauses) {
    for (Literal l : c.literals) {
      int v = index[l.var];
      outs += std::to_string(l.positive ? v : -v);
      outs += ' ';
    }
    outs += "0\n";
  }
  return outs;
}

}  // namespace hornnc
