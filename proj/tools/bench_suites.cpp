#include "bench_suites.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "hornnc/calculus.hpp"
#include "hornnc/clausal.hpp"
#include "hornnc/errors.hpp"
#include "hornnc/lp.hpp"
#include "hornnc/oracle.hpp"
#include "hornnc/recognizer.hpp"

namespace hornnc::bench {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

NodeId fresh_neg(FormulaStore& store, std::size_t& idx) {
  return store.lit(Literal{store.var("n" + std::to_string(idx++)), false});
}

}  // namespace

NodeId chain_formula(FormulaStore& store, std::size_t size) {
  std::size_t idx = store.var_count();
  if (size < 2)
    return store.lit(Literal{store.var("c" + std::to_string(idx)), true});
  // Flat implication chain c0, (or ~c0 c1), (or ~c1 c2), ...: the seed
  // unit plus 3 symbols per link, padded to the exact symbol count with
  // inert negative literals.
  std::size_t links = (size - 2) / 3, pad = (size - 2) % 3;
  std::vector<NodeId> heads;
  for (std::size_t i = 0; i <= links; ++i)
    heads.push_back(
        store.lit(Literal{store.var("c" + std::to_string(idx + i)), true}));
  idx += links + 1;
  std::vector<NodeId> parts{heads[0]};
  for (std::size_t i = 1; i <= links; ++i)
    parts.push_back(store.disj(
        {store.lit(store.literal(heads[i - 1]).negate()), heads[i]}));
  for (std::size_t p = 0; p < pad; ++p) parts.push_back(fresh_neg(store, idx));
  return store.conj(parts);
}

NodeId solver_family(FormulaStore& store, std::size_t size) {
  std::size_t idx = store.var_count();
  if (size < 2)
    return store.lit(Literal{store.var("c" + std::to_string(idx)), true});
  // Chain length grows with size but is capped so the padding, not the
  // chain, dominates very large instances.
  std::size_t chain =
      std::min<std::size_t>(2000, std::max<std::size_t>(8, size / 32));
  while (chain > 1 && 2 + 3 * (chain - 1) > size) --chain;
  std::vector<NodeId> heads;
  for (std::size_t i = 0; i < chain; ++i)
    heads.push_back(
        store.lit(Literal{store.var("c" + std::to_string(idx + i)), true}));
  idx += chain;
  std::vector<NodeId> parts{heads[0]};
  for (std::size_t i = 1; i < chain; ++i)
    parts.push_back(store.disj(
        {store.lit(store.literal(heads[i - 1]).negate()), heads[i]}));
  for (std::size_t have = 2 + 3 * (chain - 1); have < size; ++have)
    parts.push_back(fresh_neg(store, idx));
  return store.conj(parts);
}

std::vector<ScalingPoint> recognition_scaling(
    const std::vector<std::size_t>& sizes, int repeats) {
  std::vector<ScalingPoint> out;
  for (std::size_t n : sizes) {
    double best = 1e300;
    for (int r = 0; r < std::max(1, repeats); ++r) {
      FormulaStore store;
      NodeId f = chain_formula(store, n);
      // One untimed pass first: the growth claim is about the walk, not
      // about first-touch page faults in freshly mapped scratch arrays.
      if (classify_nnf(store, f) == HnfLabel::NotHnf)
        throw InternalInvariantError("scaling workload left the class");
      auto t0 = Clock::now();
      HnfLabel label = classify_nnf(store, f);
      double t = since(t0);
      if (label == HnfLabel::NotHnf)
        throw InternalInvariantError("scaling workload left the class");
      best = std::min(best, t);
    }
    out.push_back({n, best});
  }
  return out;
}

SolverScaling solver_scaling(const std::vector<std::size_t>& sizes,
                             int repeats) {
  SolverScaling out;
  out.fitted_exponent = 0;
  for (std::size_t n : sizes) {
    double best = 1e300;
    for (int r = 0; r < std::max(1, repeats); ++r) {
      FormulaStore store;
      NodeId f = solver_family(store, n);
      auto t0 = Clock::now();
      SolveOutcome res = solve(store, f);
      double t = since(t0);
      if (!res.sat)
        throw InternalInvariantError("scaling workload should be satisfiable");
      best = std::min(best, t);
    }
    out.points.push_back({n, best});
  }
  if (out.points.size() < 2) return out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = static_cast<double>(out.points.size());
  for (const ScalingPoint& p : out.points) {
    double x = std::log(static_cast<double>(p.size));
    double y = std::log(std::max(p.seconds, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

std::vector<SuccinctnessRow> succinctness_table() {
  std::vector<SuccinctnessRow> rows;
  for (int k = 2; k <= 3; ++k) {
    for (int n = 2; n <= 6; ++n) {
      FormulaStore store;
      std::size_t idx = 0;
      std::vector<NodeId> blocks;
      for (int b = 0; b < k; ++b) {
        std::vector<NodeId> lits;
        for (int j = 0; j < n; ++j)
          lits.push_back(store.lit(
              Literal{store.var("x" + std::to_string(idx++)), b == 0}));
        blocks.push_back(store.conj(lits));
      }
      NodeId f = store.disj(blocks);
      SizeMetrics sm = size_metrics(store, f);
      ClausalFormula cf = clausal_form(store, f);
      std::size_t widest = 0;
      for (const Clause& c : cf.clauses)
        widest = std::max(widest, c.literals.size());
      rows.push_back({k, n, sm.size, cf.clauses.size(), widest, is_horn(cf),
                      is_hnc(store, f)});
    }
  }
  return rows;
}

AgreementStats recognition_agreement(std::uint64_t seed,
                                     std::size_t instances) {
  AgreementStats st;
  auto t0 = Clock::now();
  FormulaStore store;
  GenConfig cfg;
  cfg.max_vars = 6;
  cfg.max_depth = 5;
  cfg.mode = GenMode::AnyNnf;
  ClausalOptions copts;
  copts.clause_cap = 100000;
  std::size_t batch_no = 0;
  while (st.instances < instances) {
    cfg.seed = seed + 0x9e3779b9u * ++batch_no;
    std::size_t want = instances - st.instances;
    for (NodeId f : generate(store, cfg, want + want / 8 + 8)) {
      if (st.instances >= instances) break;
      bool in_class = classify_nnf(store, f) != HnfLabel::NotHnf;
      bool horn;
      try {
        horn = is_horn(clausal_form(store, f, copts));
      } catch (const BlowupLimitError&) {
        ++st.skipped;
        continue;
      }
      ++st.instances;
      if (in_class == horn) ++st.agreements;
    }
  }
  st.seconds = since(t0);
  return st;
}

namespace {

// Exhaustive evaluation over the given variables, visiting assignments in
// Gray-code order so each step flips a single bit.
template <typename Fn>
void for_each_assignment(std::vector<VarId> vars, Fn&& fn) {
  if (vars.size() > 20)
    throw TooManyVariablesError("exhaustive evaluation above 20 variables");
  Assignment a;
  for (VarId v : vars) a[v] = false;
  std::vector<Assignment::iterator> slot;
  for (VarId v : vars) slot.push_back(a.find(v));
  std::uint32_t total = 1u << vars.size();
  for (std::uint32_t step = 0;; ++step) {
    if (!fn(a)) return;
    if (step + 1 == total) break;
    slot[std::countr_zero(step + 1)]->second ^= true;
  }
}

struct Census {
  bool sat = false;
  std::vector<VarId> always_true;  // sorted by variable id
};

Census model_census(const FormulaStore& store, NodeId f) {
  Census c;
  std::vector<VarId> vars = formula_vars(store, f);
  std::set<VarId> inter;
  for_each_assignment(vars, [&](const Assignment& a) {
    if (!evaluate(store, f, a)) return true;
    if (!c.sat) {
      c.sat = true;
      for (const auto& [v, val] : a)
        if (val) inter.insert(v);
    } else {
      for (auto it = inter.begin(); it != inter.end();)
        it = a.at(*it) ? std::next(it) : inter.erase(it);
    }
    return true;
  });
  c.always_true.assign(inter.begin(), inter.end());
  return c;
}

bool enumeration_entails(const FormulaStore& store, NodeId f, NodeId query) {
  std::vector<VarId> vars = formula_vars(store, f);
  for (VarId v : formula_vars(store, query))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      vars.push_back(v);
  bool holds = true;
  for_each_assignment(vars, [&](const Assignment& a) {
    if (evaluate(store, f, a) && !evaluate(store, query, a)) {
      holds = false;
      return false;
    }
    return true;
  });
  return holds;
}

}  // namespace

SolverAgreementStats solver_agreement(std::uint64_t seed,
                                      std::size_t instances) {
  SolverAgreementStats st;
  auto t0 = Clock::now();
  FormulaStore store;
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_vars = 10;
  cfg.max_depth = 5;
  cfg.mode = GenMode::HncBiased;
  for (NodeId f : generate(store, cfg, instances)) {
    ++st.instances;
    SolveOutcome out = solve(store, f);
    std::uint64_t work = out.stats.unit_resolutions +
                         out.stats.simplifications +
                         out.stats.true_propagations;
    if (work > out.stats.nnf_size) ++st.work_violations;
    Census c = model_census(store, f);
    if (c.sat == out.sat) ++st.agreements;
    if (c.always_true == out.model) ++st.model_matches;
  }
  st.seconds = since(t0);
  return st;
}

AgreementStats lp_agreement(std::uint64_t seed, std::size_t programs) {
  AgreementStats st;
  auto t0 = Clock::now();
  FormulaStore store;
  std::mt19937_64 rng(seed);
  GenConfig cfg;
  cfg.seed = seed * 31 + 7;
  cfg.max_vars = 6;
  cfg.max_depth = 4;
  cfg.mode = GenMode::HnfBiased;
  std::vector<NodeId> heads = generate(store, cfg, programs + 64);
  std::vector<VarId> pool;
  for (char c : {'A', 'B', 'C', 'D', 'E', 'G'})  // F names the constant
    pool.push_back(store.var(std::string(1, c)));
  std::uniform_int_distribution<int> pv(0, 5), coin(0, 1), small(0, 2);
  std::size_t hi = 0;
  for (std::size_t it = 0; it < programs; ++it) {
    HnfProgram prog;
    for (int i = 0, nf = small(rng); i < nf; ++i)
      prog.facts.push_back(pool[pv(rng)]);
    int nr = 1 + small(rng);
    for (int r = 0; r < nr; ++r) {
      std::vector<NodeId> lits;
      for (int b = 0, nb = 1 + coin(rng); b < nb; ++b)
        lits.push_back(store.lit(Literal{pool[pv(rng)], true}));
      NodeId body = coin(rng) ? store.conj(lits) : store.disj(lits);
      prog.rules.push_back(HnfRule{body, heads[hi++ % heads.size()]});
    }
    NodeId query = store.lit(Literal{pool[pv(rng)], true});
    bool got = entails(store, prog, query);
    NodeId f = program_to_formula(store, prog);
    ++st.instances;
    if (got == enumeration_entails(store, f, query)) ++st.agreements;
  }
  st.seconds = since(t0);
  return st;
}

namespace {

std::vector<NodeId> collect_conjunctions(const FormulaStore& store,
                                         NodeId root) {
  std::vector<NodeId> out, stack{root};
  std::set<NodeId> seen;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    NodeKind k = store.kind(n);
    if (k == NodeKind::Conj || k == NodeKind::Disj || k == NodeKind::Neg) {
      auto cs = store.children(n);
      stack.insert(stack.end(), cs.begin(), cs.end());
      if (k == NodeKind::Conj) out.push_back(n);
    }
  }
  return out;
}

}  // namespace

SoundnessStats rule_soundness(std::uint64_t seed,
                              std::size_t target_applications) {
  SoundnessStats st;
  FormulaStore store;
  GenConfig cfg;
  cfg.max_vars = 5;
  cfg.max_depth = 5;
  cfg.mode = GenMode::HnfBiased;
  std::size_t batch_no = 0;
  auto check = [&](NodeId before, NodeId after, std::size_t& bucket,
                   std::size_t weight = 1) {
    st.applications += weight;
    bucket += weight;
    if (!equivalent(store, before, after)) ++st.failures;
  };
  // The structural rules fire on nearly every formula while resolution
  // needs a unit with a live complement, so a bare total would be met
  // almost entirely by structural checks; floor each rule family.
  constexpr std::size_t kPerRuleFloor = 50;
  auto done = [&] {
    return st.applications >= target_applications &&
           st.unit >= kPerRuleFloor && st.hyper >= kPerRuleFloor &&
           st.local >= kPerRuleFloor && st.structural >= kPerRuleFloor;
  };
  while (!done() && batch_no < 1024) {
    cfg.seed = seed + 0x9e3779b9u * ++batch_no;
    for (NodeId f : generate(store, cfg, 256)) {
      if (done()) break;

      if (store.kind(f) == NodeKind::Conj) {
        auto span = store.children(f);
        std::vector<NodeId> cs(span.begin(), span.end());
        for (std::uint32_t i = 0; i < cs.size(); ++i) {
          if (store.kind(cs[i]) != NodeKind::Lit) continue;
          Literal u = store.literal(cs[i]);
          auto occs = literal_occurrences(store, f, u.negate());
          const Occurrence* pick = nullptr;
          for (const Occurrence& o : occs)
            if (o.path[0] != i) {
              pick = &o;
              break;
            }
          if (pick) check(f, apply_ur(store, f, {f, {i}}, *pick), st.unit);
          if (pick) check(f, apply_hur(store, f, u, occs), st.hyper);
          if (pick) break;
        }
      }

      // A rule local to some inner conjunction, rewriting every occurrence.
      for (NodeId s : collect_conjunctions(store, f)) {
        auto span = store.children(s);
        std::vector<NodeId> cs(span.begin(), span.end());
        bool done = false;
        for (std::uint32_t i = 0; i < cs.size() && !done; ++i) {
          if (store.kind(cs[i]) != NodeKind::Lit) continue;
          Literal u = store.literal(cs[i]);
          for (const Occurrence& o :
               literal_occurrences(store, s, u.negate())) {
            if (o.path[0] == i) continue;
            check(f, apply_lur(store, f, s, {s, {i}}, o), st.local);
            done = true;
            break;
          }
        }
        if (done) break;
      }

      // Structural rules, provoked by wrapping and by planting falsity.
      std::vector<RuleApplication> tr;
      NodeId nested = store.conj({store.conj({f})});
      NodeId s1 = simplify_step(store, nested, &tr);
      check(nested, s1, st.structural, std::max<std::size_t>(tr.size(), 1));
      tr.clear();
      NodeId planted = store.disj({f, store.disj({})});
      NodeId s2 = simplify_step(store, planted, &tr);
      check(planted, s2, st.structural, std::max<std::size_t>(tr.size(), 1));
    }
  }
  return st;
}

}  // namespace hornnc::bench
