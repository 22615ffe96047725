#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc::bench {

// Flat implication chain with tree size exactly `size`. Classification
// has to visit every node, so timing it across growing sizes exposes the
// recognizer's growth rate.
NodeId chain_formula(FormulaStore& store, std::size_t size);

// Satisfiable implication chain padded with unconstrained negative
// literals to tree size exactly `size`. Solving derives the whole chain.
NodeId solver_family(FormulaStore& store, std::size_t size);

struct ScalingPoint {
  std::size_t size;
  double seconds;
};

// Seconds to classify chain_formula(size), best of `repeats` fresh builds.
std::vector<ScalingPoint> recognition_scaling(
    const std::vector<std::size_t>& sizes, int repeats);

struct SolverScaling {
  std::vector<ScalingPoint> points;
  double fitted_exponent;  // least-squares slope of log time over log size
};

SolverScaling solver_scaling(const std::vector<std::size_t>& sizes,
                             int repeats);

struct SuccinctnessRow {
  int k;                       // disjuncts
  int n;                       // literals per disjunct
  std::uint64_t nc_size;       // expected k*n + k + 1
  std::uint64_t clause_count;  // expected n^k
  std::size_t widest_clause;   // expected k
  bool horn;
  bool hnc;
};

// (or P N2 ... Nk) with one positive and k-1 negative blocks of n fresh
// literals each: linear as a formula, n^k clauses once distributed.
std::vector<SuccinctnessRow> succinctness_table();

struct AgreementStats {
  std::size_t instances = 0;
  std::size_t agreements = 0;
  std::size_t skipped = 0;  // translations over the clause cap
  double seconds = 0;
};

// Class membership of random NNFs against Horn-ness of their raw clausal
// translation. Skipped (capped) translations are replaced by fresh draws.
AgreementStats recognition_agreement(std::uint64_t seed,
                                     std::size_t instances);

struct SolverAgreementStats {
  std::size_t instances = 0;
  std::size_t agreements = 0;       // sat/unsat matches enumeration
  std::size_t model_matches = 0;    // least model == what holds everywhere
  std::size_t work_violations = 0;  // structural work above the input size
  double seconds = 0;
};

SolverAgreementStats solver_agreement(std::uint64_t seed,
                                      std::size_t instances);

// Random positive programs decided twice: least-model evaluation against
// exhaustive evaluation of the program formula.
AgreementStats lp_agreement(std::uint64_t seed, std::size_t programs);

struct SoundnessStats {
  std::size_t applications = 0;
  std::size_t failures = 0;
  std::size_t unit = 0;
  std::size_t hyper = 0;
  std::size_t local = 0;
  std::size_t structural = 0;
};

// Applies calculus rules to random in-class formulas and checks every
// rewrite against the input by truth table.
SoundnessStats rule_soundness(std::uint64_t seed,
                              std::size_t target_applications);

}  // namespace hornnc::bench
