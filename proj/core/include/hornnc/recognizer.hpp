#pragma once

#include <cstdint>
#include <vector>

#include "hornnc/formula.hpp"

namespace hornnc {

// Verdict for one NNF node.
//  Negative       all literals below are negative
//  NonNegativeHnf in the class, with at least one positive literal below
//  NotHnf         outside the class
enum class HnfLabel : std::uint8_t { Negative, NonNegativeHnf, NotHnf };

const char* label_name(HnfLabel l);  // "negative", "hnf", "not-hnf"

// One row of the recognition walk, in postorder.
// Case tags mirror the rules the label algebra applies:
//  a  disjunction with two or more non-negative disjuncts (or one that
//     inherited NotHnf from a child)
//  b  disjunction with exactly one non-negative disjunct; also positive
//     literals
//  c  disjunction with none; also negative literals and falsity
//  d  conjunction with a non-negative (or NotHnf) child
//  e  conjunction of all-negative children; also truth
struct ClassifyEntry {
  NodeId node;
  HnfLabel label;
  char case_tag;
  bool empty_connective;  // constant-like: truth, falsity, (and), (or)
};

// Labels an NNF bottom-up in one pass over distinct nodes: a disjunction is
// in the class iff at most one disjunct is non-negative; a conjunction iff
// every child is. Neg anywhere raises NotNnfError. Constants and empty
// connectives carry no literals, so they label Negative.
HnfLabel classify_nnf(const FormulaStore& store, NodeId id);

// Same walk, returning every node's verdict for inspection.
std::vector<ClassifyEntry> classify_trace(const FormulaStore& store,
                                          NodeId id);

// Whole-class membership for arbitrary formulas: convert to NNF, fold
// constants, accept if the result is a constant or labels inside the class.
bool is_hnc(FormulaStore& store, NodeId id);

}  // namespace hornnc
