#include "hornnc/oracle.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "hornnc/errors.hpp"
#include "walk.hpp"

namespace hornnc {

std::vector<VarId> formula_vars(const FormulaStore& store, NodeId id) {
  std::vector<VarId> vars;
  std::vector<char> seen(store.var_count(), 0);
  detail::postorder(store, id, [&](NodeId n) {
    if (store.kind(n) != NodeKind::Lit) return;
    VarId v = store.literal(n).var;
    if (!seen[v]) {
      seen[v] = 1;
      vars.push_back(v);
    }
  });
  std::sort(vars.begin(), vars.end(), [&](VarId a, VarId b) {
    return store.var_name(a) < store.var_name(b);
  });
  return vars;
}

namespace {

// Postorder evaluation schedule, built once per formula so a truth-table
// sweep does not re-walk the DAG for every assignment.
class EvalPlan {
 public:
  EvalPlan(const FormulaStore& store, NodeId root) : store_(store) {
    detail::postorder(store, root, [&](NodeId n) {
      slot_.emplace(n, static_cast<std::uint32_t>(order_.size()));
      order_.push_back(n);
    });
    values_.resize(order_.size());
  }

  // var_value(v) -> bool; must cover every variable in the formula.
  template <typename VarValue>
  bool run(VarValue&& var_value) {
    for (std::size_t i = 0; i < order_.size(); ++i) {
      NodeId n = order_[i];
      bool v = false;
      switch (store_.kind(n)) {
        case NodeKind::True:
          v = true;
          break;
        case NodeKind::False:
          v = false;
          break;
        case NodeKind::Lit: {
          Literal l = store_.literal(n);
          bool raw = var_value(l.var);
          v = l.positive ? raw : !raw;
          break;
        }
        case NodeKind::Neg:
          v = !values_[slot_.at(store_.children(n)[0])];
          break;
        case NodeKind::Conj: {
          v = true;
          for (NodeId c : store_.children(n))
            if (!values_[slot_.at(c)]) {
              v = false;
              break;
            }
          break;
        }
        case NodeKind::Disj: {
          v = false;
          for (NodeId c : store_.children(n))
            if (values_[slot_.at(c)]) {
              v = true;
              break;
            }
          break;
        }
      }
      values_[i] = v;
    }
    return values_.empty() ? false : values_.back() != 0;
  }

 private:
  const FormulaStore& store_;
  std::vector<NodeId> order_;
  std::unordered_map<NodeId, std::uint32_t> slot_;
  std::vector<char> values_;
};

void check_var_limit(std::size_t n_vars) {
  if (n_vars > kOracleVarLimit)
    throw TooManyVariablesError(
        "formula has " + std::to_string(n_vars) +
        " variables; truth-table operations support at most " +
        std::to_string(kOracleVarLimit));
}

}  // namespace

bool evaluate(const FormulaStore& store, NodeId id, const Assignment& a) {
  EvalPlan plan(store, id);
  return plan.run([&](VarId v) {
    auto it = a.find(v);
    if (it == a.end())
      throw UnassignedVariableError("variable '" + store.var_name(v) +
                                    "' has no assigned value");
    return it->second;
  });
}

std::vector<Assignment> enumerate_models(const FormulaStore& store,
                                         NodeId id) {
  std::vector<VarId> vars = formula_vars(store, id);
  check_var_limit(vars.size());
  std::vector<std::uint32_t> pos(store.var_count(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i)
    pos[vars[i]] = static_cast<std::uint32_t>(i);

  EvalPlan plan(store, id);
  std::vector<Assignment> models;
  std::size_t n = vars.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    // First variable (alphabetically) is the most significant bit, so
    // models come out in lexicographic order with false < true.
    bool sat = plan.run(
        [&](VarId v) { return ((mask >> (n - 1 - pos[v])) & 1) != 0; });
    if (sat) {
      Assignment a;
      for (std::size_t i = 0; i < n; ++i)
        a[vars[i]] = ((mask >> (n - 1 - i)) & 1) != 0;
      models.push_back(std::move(a));
    }
  }
  return models;
}

bool equivalent(const FormulaStore& store, NodeId a, NodeId b) {
  std::vector<VarId> va = formula_vars(store, a);
  std::vector<VarId> vb = formula_vars(store, b);
  std::vector<VarId> vars;
  vars.reserve(va.size() + vb.size());
  std::merge(va.begin(), va.end(), vb.begin(), vb.end(),
             std::back_inserter(vars), [&](VarId x, VarId y) {
               return store.var_name(x) < store.var_name(y);
             });
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  check_var_limit(vars.size());
  std::vector<std::uint32_t> pos(store.var_count(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i)
    pos[vars[i]] = static_cast<std::uint32_t>(i);

  EvalPlan pa(store, a), pb(store, b);
  std::size_t n = vars.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto value = [&](VarId v) { return ((mask >> (n - 1 - pos[v])) & 1) != 0; };
    if (pa.run(value) != pb.run(value)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t below(std::uint64_t k) { return eng() % k; }
  bool coin(double p) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53 < p;
  }
};

struct Gen {
  FormulaStore& s;
  Rng& r;
  const std::vector<VarId>& vars;
  std::uint32_t max_arity;

  VarId rand_var() { return vars[r.below(vars.size())]; }

  std::uint32_t arity() {
    std::uint32_t k = 1;
    while (k < max_arity && r.coin(0.6)) ++k;
    return k;
  }

  NodeId literal(bool force_negative = false) {
    bool positive = force_negative ? false : r.coin(0.5);
    return s.lit(Literal{rand_var(), positive});
  }

  // Unconstrained NNF; with allow_neg, arbitrary Neg nodes may appear.
  NodeId any(std::uint32_t depth, bool allow_neg) {
    if (depth == 0 || r.coin(0.25)) return literal();
    if (allow_neg && r.coin(0.2)) return s.neg(any(depth - 1, allow_neg));
    std::uint32_t k = arity();
    std::vector<NodeId> cs;
    cs.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i)
      cs.push_back(any(depth - 1, allow_neg));
    return r.coin(0.5) ? s.conj(cs) : s.disj(cs);
  }

  // NNF whose literals are all negative.
  NodeId negative(std::uint32_t depth) {
    if (depth == 0 || r.coin(0.35)) return literal(true);
    std::uint32_t k = arity();
    std::vector<NodeId> cs;
    cs.reserve(k);
    for (std::uint32_t i = 0; i < k; ++i) cs.push_back(negative(depth - 1));
    return r.coin(0.5) ? s.conj(cs) : s.disj(cs);
  }

  // Built from the closure rules of the class: a literal, a conjunction of
  // members, or a disjunction with at most one non-negative disjunct.
  NodeId hnf(std::uint32_t depth) {
    if (depth == 0 || r.coin(0.25)) return literal();
    std::uint32_t k = arity();
    std::vector<NodeId> cs;
    cs.reserve(k);
    if (r.coin(0.5)) {
      for (std::uint32_t i = 0; i < k; ++i) cs.push_back(hnf(depth - 1));
      return s.conj(cs);
    }
    std::uint64_t special = r.below(k);
    for (std::uint32_t i = 0; i < k; ++i)
      cs.push_back(i == special ? hnf(depth - 1) : negative(depth - 1));
    return s.disj(cs);
  }

  // Reshape an NNF with truth-preserving De Morgan unpushing so explicit
  // negation reappears; the NNF of the result is the input again.
  NodeId unpush(NodeId id) {
    switch (s.kind(id)) {
      case NodeKind::Lit: {
        Literal l = s.literal(id);
        if (!l.positive && r.coin(0.3)) return s.neg(s.lit(l.negate()));
        return id;
      }
      case NodeKind::Conj:
      case NodeKind::Disj: {
        bool is_conj = s.kind(id) == NodeKind::Conj;
        // Copy first: building nodes below invalidates the children span.
        std::vector<NodeId> cs(s.children(id).begin(), s.children(id).end());
        for (NodeId& c : cs) c = unpush(c);
        if (!cs.empty() && r.coin(0.3)) {
          for (NodeId& c : cs) c = s.neg(c);
          NodeId dual = is_conj ? s.disj(cs) : s.conj(cs);
          return s.neg(dual);
        }
        return is_conj ? s.conj(cs) : s.disj(cs);
      }
      default:
        return id;
    }
  }
};

}  // namespace

std::vector<NodeId> generate(FormulaStore& store, const GenConfig& cfg,
                             std::size_t n) {
  if (cfg.max_vars == 0 || cfg.max_arity == 0)
    throw Error("generator requires max_vars >= 1 and max_arity >= 1");
  if (cfg.max_depth > 10000)
    throw Error("generator limit exceeded: max_depth must be <= 10000");

  // Single letters minus the reserved constants T and F, so every
  // generated formula survives a print/parse round trip.
  static constexpr std::string_view kLetters = "ABCDEGHIJKLMNOPQRSUVWXYZ";
  std::vector<VarId> vars;
  vars.reserve(cfg.max_vars);
  for (std::uint32_t i = 0; i < cfg.max_vars; ++i) {
    std::string name = i < kLetters.size() ? std::string(1, kLetters[i])
                                           : "V" + std::to_string(i);
    vars.push_back(store.var(name));
  }

  Rng rng(cfg.seed);
  Gen gen{store, rng, vars, cfg.max_arity};
  std::vector<NodeId> outs;
  outs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t depth =
        static_cast<std::uint32_t>(rng.below(cfg.max_depth + 1));
    switch (cfg.mode) {
      case GenMode::AnyNnf:
        outs.push_back(gen.any(depth, false));
        break;
      case GenMode::AnyNc:
        outs.push_back(gen.any(depth, true));
        break;
      case GenMode::HnfBiased:
        outs.push_back(gen.hnf(depth));
        break;
      case GenMode::HncBiased:
        outs.push_back(gen.unpush(gen.hnf(depth)));
        break;
    }
  }
  return outs;
}

}  // namespace hornnc
