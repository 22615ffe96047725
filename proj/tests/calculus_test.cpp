#include <gtest/gtest.h>

#include <algorithm>

#include "hornnc/calculus.hpp"
#include "hornnc/errors.hpp"
#include "hornnc/formula.hpp"
#include "hornnc/oracle.hpp"

namespace hornnc {
namespace {

using Path = std::vector<std::uint32_t>;

class CalculusTest : public ::testing::Test {
 protected:
  FormulaStore store;

  NodeId parse(std::string_view text) { return parse_formula(store, text); }
  std::string print(NodeId id) { return print_formula(store, id); }
  Literal lit(std::string_view name, bool positive = true) {
    return Literal{store.var(std::string(name)), positive};
  }
  std::vector<std::string> model_names(const std::vector<VarId>& m) {
    std::vector<std::string> names;
    for (VarId v : m) names.push_back(store.var_name(v));
    std::sort(names.begin(), names.end());
    return names;
  }
};

TEST_F(CalculusTest, RuleNames) {
  EXPECT_STREQ("unit-resolution", rule_name(RuleKind::UnitResolution));
  EXPECT_STREQ("hyper-unit-resolution",
               rule_name(RuleKind::HyperUnitResolution));
  EXPECT_STREQ("local-unit-resolution",
               rule_name(RuleKind::LocalUnitResolution));
  EXPECT_STREQ("drop-false-disjunct", rule_name(RuleKind::FalsifyDisj));
  EXPECT_STREQ("collapse-false-conjunction",
               rule_name(RuleKind::FalsifyConj));
  EXPECT_STREQ("unwrap-singleton", rule_name(RuleKind::UnwrapSingle));
  EXPECT_STREQ("flatten-nested", rule_name(RuleKind::FlattenNested));
  EXPECT_STREQ("true-propagation", rule_name(RuleKind::TruePropagation));
}

TEST_F(CalculusTest, ResolveOccurrenceFollowsPaths) {
  NodeId f = parse("(and A (or ~C (and ~A (or E ~D)) p1))");
  EXPECT_EQ(f, resolve_occurrence(store, {f, {}}));
  EXPECT_EQ(parse("A"), resolve_occurrence(store, {f, {0}}));
  EXPECT_EQ(parse("~A"), resolve_occurrence(store, {f, {1, 1, 0}}));
  EXPECT_THROW(resolve_occurrence(store, {f, {5}}), NotApplicableError);
  EXPECT_THROW(resolve_occurrence(store, {f, {0, 0}}), NotApplicableError);
}

TEST_F(CalculusTest, LiteralOccurrencesInLeftToRightOrder) {
  NodeId f =
      parse("(and A (or ~C (and ~A (or E ~D)) p1) (or D (and p2 ~A)) p3)");
  auto occs = literal_occurrences(store, f, lit("A", false));
  ASSERT_EQ(2u, occs.size());
  EXPECT_EQ(Path({1, 1, 0}), occs[0].path);
  EXPECT_EQ(Path({2, 1, 1}), occs[1].path);

  occs = literal_occurrences(store, f, lit("A"));
  ASSERT_EQ(1u, occs.size());
  EXPECT_EQ(Path({0}), occs[0].path);

  EXPECT_TRUE(literal_occurrences(store, f, lit("Z")).empty());
}

TEST_F(CalculusTest, SharedSubtermsReportOnePathEach) {
  NodeId f = parse("(and (or A ~B) (or A ~B))");
  auto occs = literal_occurrences(store, f, lit("A"));
  ASSERT_EQ(2u, occs.size());
  EXPECT_EQ(Path({0, 0}), occs[0].path);
  EXPECT_EQ(Path({1, 0}), occs[1].path);
}

TEST_F(CalculusTest, UnitResolutionDropsTheFalsifiedBranch) {
  NodeId f =
      parse("(and A (or ~C (and ~A (or E ~D)) p1) (or D (and p2 ~A)) p3)");
  NodeId g = apply_ur(store, f, {f, {0}}, {f, {1, 1, 0}});
  EXPECT_EQ("(and A (or ~C p1) (or D (and p2 ~A)) p3)", print(g));
  EXPECT_TRUE(equivalent(store, f, g));
}

TEST_F(CalculusTest, UnitResolutionDerivesTheEmptyDisjunction) {
  NodeId f = parse("(and A ~A)");
  NodeId g = apply_ur(store, f, {f, {0}}, {f, {1}});
  EXPECT_EQ("(or)", print(g));
}

TEST_F(CalculusTest, UnitResolutionUnwrapsTheLoneSurvivor) {
  NodeId f = parse("(and A (or ~A B))");
  NodeId g = apply_ur(store, f, {f, {0}}, {f, {1, 0}});
  EXPECT_EQ("(and A B)", print(g));
}

TEST_F(CalculusTest, UnitResolutionInsideANestedConjunction) {
  // The governing conjunction need not be the root.
  NodeId f = parse("(or ~X (and A (or ~A B)))");
  NodeId g = apply_ur(store, f, {f, {1, 0}}, {f, {1, 1, 0}});
  EXPECT_EQ("(or ~X (and A B))", print(g));
  EXPECT_TRUE(equivalent(store, f, g));
}

TEST_F(CalculusTest, UnitResolutionPreconditions) {
  NodeId f = parse("(and A (or ~A B) (or C ~A))");
  NodeId other = parse("(and A ~A)");

  EXPECT_THROW(apply_ur(store, f, {other, {0}}, {f, {1, 0}}),
               NotApplicableError);
  // The whole formula is not a conjunct.
  EXPECT_THROW(apply_ur(store, f, {f, {}}, {f, {1, 0}}), NotApplicableError);
  // Unit must be a literal.
  EXPECT_THROW(apply_ur(store, f, {f, {1}}, {f, {2, 1}}), NotApplicableError);
  // Target must be the complement.
  EXPECT_THROW(apply_ur(store, f, {f, {0}}, {f, {1, 1}}), NotApplicableError);
  EXPECT_THROW(apply_ur(store, f, {f, {0}}, {f, {2, 0}}), NotApplicableError);
  EXPECT_THROW(apply_ur(store, f, {f, {0}}, {f, {0}}), NotApplicableError);

  NodeId g = parse("(or (and A ~A) (and B ~A))");
  // Complement in a sibling of the unit's conjunction, not inside it.
  EXPECT_THROW(apply_ur(store, g, {g, {0, 0}}, {g, {1, 1}}),
               NotApplicableError);
  // Inside the same conjunction it applies; the emptied branch collapses
  // and the lone remaining disjunct unwraps.
  EXPECT_EQ("(and B ~A)",
            print(apply_ur(store, g, {g, {0, 0}}, {g, {0, 1}})));
}

TEST_F(CalculusTest, HyperResolutionResolvesAllComplements) {
  NodeId f = parse(
      "(and (or C p1) (or ~A (and (or ~A ~C) (or p2 (and ~B ~A)) C)) A)");
  auto occs = literal_occurrences(store, f, lit("A", false));
  ASSERT_EQ(3u, occs.size());
  EXPECT_EQ(Path({1, 0}), occs[0].path);
  EXPECT_EQ(Path({1, 1, 0, 0}), occs[1].path);
  EXPECT_EQ(Path({1, 1, 1, 1, 1}), occs[2].path);

  NodeId g = apply_hur(store, f, lit("A"), occs);
  EXPECT_EQ("(and (or C p1) (and ~C p2 C) A)", print(g));
  EXPECT_TRUE(equivalent(store, f, g));

  NodeId s = simplify_step(store, g);
  EXPECT_EQ("(and (or C p1) ~C p2 C A)", print(s));
}

TEST_F(CalculusTest, SingleTargetHyperEqualsPlainResolution) {
  NodeId f =
      parse("(and A (or ~C (and ~A (or E ~D)) p1) (or D (and p2 ~A)) p3)");
  NodeId via_ur = apply_ur(store, f, {f, {0}}, {f, {1, 1, 0}});
  NodeId via_hur = apply_hur(store, f, lit("A"), {{f, {1, 1, 0}}});
  EXPECT_EQ(via_ur, via_hur);
}

TEST_F(CalculusTest, HyperResolutionSkipsTargetsRemovedEarlier) {
  // The second complement sits in the branch the first step removes.
  NodeId f = parse("(and A (or (and ~A ~A) B))");
  NodeId g = apply_hur(store, f, lit("A"), {{f, {1, 0, 0}}, {f, {1, 0, 1}}});
  EXPECT_EQ("(and A B)", print(g));
}

TEST_F(CalculusTest, HyperResolutionFollowsDisplacedTargets) {
  // Resolving the first copy unwraps the disjunction; the second target's
  // path shifts into the survivor and still resolves.
  NodeId f = parse("(and A (or ~A (and ~A B)))");
  NodeId g = apply_hur(store, f, lit("A"), {{f, {1, 0}}, {f, {1, 1, 0}}});
  EXPECT_EQ("(or)", print(g));
  EXPECT_TRUE(equivalent(store, f, g));
}

TEST_F(CalculusTest, HyperResolutionPreconditions) {
  NodeId f = parse("(and A (or ~A B) C)");
  try {
    apply_hur(store, f, lit("A"), {{f, {1, 1}}});
    FAIL();
  } catch (const NotApplicableError& e) {
    EXPECT_EQ("target 0 is not the unit's complement", std::string(e.what()));
  }
  // No conjunction above the target carries the unit.
  NodeId g = parse("(or ~A B)");
  try {
    apply_hur(store, g, lit("A"), {{g, {0}}});
    FAIL();
  } catch (const NotApplicableError& e) {
    EXPECT_EQ("target 0 has no matching unit conjunct above it",
              std::string(e.what()));
  }
}

TEST_F(CalculusTest, LocalResolutionRewritesEveryScopeOccurrence) {
  NodeId scope = parse("(and (or ~A ~C) (or p2 (and ~B ~A)) C)");
  NodeId x = parse("X");
  NodeId f = store.disj({store.conj({x, scope}), scope});

  NodeId g = apply_lur(store, f, scope, {scope, {2}}, {scope, {0, 1}});
  EXPECT_EQ(
      "(or (and X (and ~A (or p2 (and ~B ~A)) C))"
      " (and ~A (or p2 (and ~B ~A)) C))",
      print(g));
  EXPECT_TRUE(equivalent(store, f, g));
}

TEST_F(CalculusTest, LocalResolutionAtTheRootEqualsPlainResolution) {
  NodeId scope = parse("(and (or ~A ~C) (or p2 (and ~B ~A)) C)");
  NodeId via_lur =
      apply_lur(store, scope, scope, {scope, {2}}, {scope, {0, 1}});
  NodeId via_ur = apply_ur(store, scope, {scope, {2}}, {scope, {0, 1}});
  EXPECT_EQ(via_ur, via_lur);
  EXPECT_EQ("(and ~A (or p2 (and ~B ~A)) C)", print(via_lur));
}

TEST_F(CalculusTest, LocalResolutionPreconditions) {
  NodeId scope = parse("(and C (or ~C D))");
  NodeId f = parse("(and A B)");
  // Occurrences must be rooted at the scope.
  EXPECT_THROW(apply_lur(store, f, scope, {f, {0}}, {scope, {1, 0}}),
               NotApplicableError);
  // The scope has to occur in the formula.
  try {
    apply_lur(store, f, scope, {scope, {0}}, {scope, {1, 0}});
    FAIL();
  } catch (const NotApplicableError& e) {
    EXPECT_EQ("scope does not occur in the formula", std::string(e.what()));
  }
}

TEST_F(CalculusTest, SimplifyFlattensAndUnwraps) {
  struct Case {
    const char* in;
    const char* out;
  } cases[] = {
      {"(and A (and B C) D)", "(and A B C D)"},
      {"(or X (or Y Z))", "(or X Y Z)"},
      {"(and X (or))", "(or)"},
      {"(or X (or))", "X"},
      {"(or (or) (or))", "(or)"},
      {"(and (and A))", "A"},
      {"(or (and A B))", "(and A B)"},
      {"(and (or (and X)))", "X"},
      {"(and A (or B (and C (and D E))))", "(and A (or B (and C D E)))"},
      // Conjunction under disjunction and vice versa stay put.
      {"(or (and A B) C)", "(or (and A B) C)"},
      {"(and (or A B) C)", "(and (or A B) C)"},
      // Truth-constant folding is not this pass's job.
      {"(and T A)", "(and T A)"},
  };
  for (const auto& c : cases)
    EXPECT_EQ(c.out, print(simplify_step(store, parse(c.in)))) << c.in;
}

TEST_F(CalculusTest, SimplifyRecordsEachFiring) {
  std::vector<RuleApplication> trace;
  SolveStats stats;
  simplify_step(store, parse("(and X (or))"), &trace, &stats);
  ASSERT_EQ(1u, trace.size());
  EXPECT_EQ(RuleKind::FalsifyConj, trace[0].rule);
  EXPECT_EQ(parse("(and X (or))"), trace[0].before);
  EXPECT_EQ(parse("(or)"), trace[0].after);
  EXPECT_EQ(1u, stats.simplifications);

  trace.clear();
  simplify_step(store, parse("(or X (or))"), &trace);
  ASSERT_EQ(2u, trace.size());
  EXPECT_EQ(RuleKind::FalsifyDisj, trace[0].rule);
  EXPECT_EQ(RuleKind::UnwrapSingle, trace[1].rule);
}

TEST_F(CalculusTest, SimplifyReachesItsFixpointInOnePass) {
  GenConfig cfg;
  cfg.seed = 61;
  cfg.max_vars = 4;
  cfg.mode = GenMode::AnyNnf;
  for (NodeId f : generate(store, cfg, 400)) {
    NodeId once = simplify_step(store, f);
    EXPECT_EQ(once, simplify_step(store, once)) << print(f);
    EXPECT_TRUE(equivalent(store, f, once));
  }
}

TEST_F(CalculusTest, SolveUnitChain) {
  SolveOutcome out = solve(store, parse("(and A (or ~A B))"));
  EXPECT_TRUE(out.sat);
  EXPECT_EQ((std::vector<std::string>{"A", "B"}), model_names(out.model));
  EXPECT_EQ("(and A B)", print(out.final_root));
  EXPECT_EQ(1u, out.stats.unit_resolutions);
  EXPECT_EQ(2u, out.stats.rounds);
}

TEST_F(CalculusTest, SolveContradictionPair) {
  SolveOutcome out = solve(store, parse("(and A ~A)"));
  EXPECT_FALSE(out.sat);
  EXPECT_EQ("(or)", print(out.final_root));
  EXPECT_EQ(1u, out.stats.unit_resolutions);
  EXPECT_EQ(3u, out.stats.nnf_size);
}

TEST_F(CalculusTest, SolveRefutationTraceEndsInTheEmptyDisjunction) {
  NodeId f = parse(
      "(and (or C ~D) (or ~A (and (or ~A ~C) (or ~E (and ~B ~A)) C)) A)");
  SolveOptions opts;
  opts.record_trace = true;
  SolveOutcome out = solve(store, f, opts);

  EXPECT_FALSE(out.sat);
  EXPECT_EQ("(or)", print(out.final_root));
  EXPECT_EQ(5u, out.stats.unit_resolutions);
  EXPECT_EQ(1u, out.stats.simplifications);
  EXPECT_EQ(0u, out.stats.true_propagations);
  EXPECT_EQ(2u, out.stats.rounds);
  EXPECT_EQ(17u, out.stats.nnf_size);

  ASSERT_EQ(3u, out.trace.size());
  EXPECT_EQ(RuleKind::HyperUnitResolution, out.trace[0].rule);
  EXPECT_TRUE(out.trace[0].has_unit);
  EXPECT_EQ(lit("A"), out.trace[0].unit);
  ASSERT_EQ(3u, out.trace[0].targets.size());
  EXPECT_EQ(Path({1, 0}), out.trace[0].targets[0]);
  EXPECT_EQ(Path({1, 1, 0, 0}), out.trace[0].targets[1]);
  EXPECT_EQ(Path({1, 1, 1, 1, 1}), out.trace[0].targets[2]);
  EXPECT_EQ(f, out.trace[0].before);

  EXPECT_EQ(RuleKind::FlattenNested, out.trace[1].rule);

  EXPECT_EQ(RuleKind::HyperUnitResolution, out.trace[2].rule);
  EXPECT_EQ(lit("C", false), out.trace[2].unit);
  ASSERT_EQ(2u, out.trace[2].targets.size());
  EXPECT_EQ(Path({0, 0}), out.trace[2].targets[0]);
  EXPECT_EQ(Path({3}), out.trace[2].targets[1]);
  EXPECT_EQ("(or)", print(out.trace[2].after));
}

TEST_F(CalculusTest, SolveDisjunctionRootSatisfiedAllFalse) {
  SolveOutcome out = solve(store, parse("(or (and ~B ~D) (and C A))"));
  EXPECT_TRUE(out.sat);
  EXPECT_TRUE(out.model.empty());
  EXPECT_EQ(0u, out.stats.rounds);
  EXPECT_EQ(0u, out.stats.unit_resolutions);
}

TEST_F(CalculusTest, SolveLeafRoots) {
  EXPECT_TRUE(solve(store, parse("A")).sat);
  EXPECT_EQ((std::vector<std::string>{"A"}),
            model_names(solve(store, parse("A")).model));
  EXPECT_TRUE(solve(store, parse("~A")).sat);
  EXPECT_TRUE(solve(store, parse("~A")).model.empty());
  EXPECT_TRUE(solve(store, parse("T")).sat);
  EXPECT_FALSE(solve(store, parse("F")).sat);
  EXPECT_TRUE(solve(store, parse("(and T ~X)")).sat);
  EXPECT_FALSE(solve(store, parse("(or (and A ~A) F)")).sat);
}

TEST_F(CalculusTest, SolveHandlesExplicitNegationInput) {
  SolveOutcome out =
      solve(store, parse("(and D (not (or (and ~A B) F (or A C))))"));
  EXPECT_TRUE(out.sat);
  EXPECT_EQ((std::vector<std::string>{"D"}), model_names(out.model));
  EXPECT_EQ("(and D ~B ~A ~C)", print(out.final_root));
  EXPECT_EQ(1u, out.stats.unit_resolutions);
  EXPECT_EQ(2u, out.stats.simplifications);
  EXPECT_EQ(4u, out.stats.rounds);
}

TEST_F(CalculusTest, SolveRejectsFormulasOutsideTheClass) {
  EXPECT_THROW(solve(store, parse("(or A B)")), NotHornNcError);
  EXPECT_THROW(solve(store, parse("(and (or A B) C)")), NotHornNcError);
  EXPECT_THROW(solve(store, parse("(not (and ~A ~B))")), NotHornNcError);
}

TEST_F(CalculusTest, MinimalModelMatchesModelIntersection) {
  auto m = minimal_model(store, parse("(and A (or ~A B))"));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ((std::vector<std::string>{"A", "B"}), model_names(*m));
  EXPECT_FALSE(minimal_model(store, parse("(and A ~A)")).has_value());

  GenConfig cfg;
  cfg.seed = 67;
  cfg.max_vars = 6;
  cfg.mode = GenMode::HncBiased;
  for (NodeId f : generate(store, cfg, 200)) {
    auto got = minimal_model(store, f);
    auto models = enumerate_models(store, f);
    if (!got.has_value()) {
      EXPECT_TRUE(models.empty()) << print(f);
      continue;
    }
    ASSERT_FALSE(models.empty()) << print(f);
    // The least model sets exactly the variables true in every model.
    std::vector<VarId> inter;
    for (const auto& [v, val] : models[0]) {
      bool in_all = val;
      for (const Assignment& a : models)
        if (!a.at(v)) {
          in_all = false;
          break;
        }
      if (in_all) inter.push_back(v);
    }
    std::sort(inter.begin(), inter.end());
    EXPECT_EQ(inter, *got) << print(f);
  }
}

TEST_F(CalculusTest, SolveDecisionMatchesEnumeration) {
  GenConfig cfg;
  cfg.seed = 71;
  cfg.max_vars = 8;
  cfg.max_depth = 5;
  cfg.mode = GenMode::HncBiased;
  for (NodeId f : generate(store, cfg, 500)) {
    SolveOutcome out = solve(store, f);
    EXPECT_EQ(!enumerate_models(store, f).empty(), out.sat) << print(f);
    std::uint64_t work = out.stats.unit_resolutions +
                         out.stats.simplifications +
                         out.stats.true_propagations;
    EXPECT_LE(work, out.stats.nnf_size) << print(f);
  }
}

TEST_F(CalculusTest, TruePropagationBlanksDeepCopies) {
  const char* text = "(and A (or ~B (and A C)) (or ~A D))";
  SolveOptions plain;
  SolveOutcome base = solve(store, parse(text), plain);
  EXPECT_TRUE(base.sat);
  EXPECT_EQ((std::vector<std::string>{"A", "D"}), model_names(base.model));
  EXPECT_EQ("(and A (or ~B (and A C)) D)", print(base.final_root));
  EXPECT_EQ(0u, base.stats.true_propagations);

  SolveOptions opts;
  opts.true_propagation = true;
  opts.record_trace = true;
  SolveOutcome out = solve(store, parse(text), opts);
  EXPECT_TRUE(out.sat);
  EXPECT_EQ((std::vector<std::string>{"A", "D"}), model_names(out.model));
  EXPECT_EQ("(and A (or ~B C) D)", print(out.final_root));
  EXPECT_EQ(1u, out.stats.true_propagations);
  bool saw = false;
  for (const RuleApplication& r : out.trace)
    if (r.rule == RuleKind::TruePropagation) {
      saw = true;
      EXPECT_EQ(lit("A"), r.unit);
    }
  EXPECT_TRUE(saw);
}

TEST_F(CalculusTest, TruePropagationKeepsAnswersIdentical) {
  GenConfig cfg;
  cfg.seed = 73;
  cfg.max_vars = 6;
  cfg.mode = GenMode::HncBiased;
  SolveOptions opts;
  opts.true_propagation = true;
  for (NodeId f : generate(store, cfg, 300)) {
    SolveOutcome a = solve(store, f);
    SolveOutcome b = solve(store, f, opts);
    EXPECT_EQ(a.sat, b.sat) << print(f);
    EXPECT_EQ(a.model, b.model) << print(f);
  }
}

TEST_F(CalculusTest, VeryDeepNestingIsSafe) {
  std::string text;
  for (int i = 0; i < 30000; ++i) text += "(and ~x (or ~y ";
  text += "~z";
  for (int i = 0; i < 30000; ++i) text += "))";
  SolveOutcome out = solve(store, parse(text));
  EXPECT_TRUE(out.sat);
  EXPECT_TRUE(out.model.empty());  // all-negative: the least model is empty
}

TEST_F(CalculusTest, ResolutionPreservesEquivalenceOnRandomInputs) {
  GenConfig cfg;
  cfg.seed = 79;
  cfg.max_vars = 5;
  cfg.mode = GenMode::HnfBiased;
  int applied = 0;
  for (NodeId f : generate(store, cfg, 1500)) {
    if (store.kind(f) != NodeKind::Conj) continue;
    // Unit = first literal conjunct; resolve its leftmost complement.
    auto cs = store.children(f);
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
      if (!pick) continue;
      NodeId g = apply_ur(store, f, {f, {i}}, *pick);
      EXPECT_TRUE(equivalent(store, f, g)) << print(f);
      ++applied;
      break;
    }
  }
  EXPECT_GT(applied, 30);
}

}  // namespace
}  // namespace hornnc
