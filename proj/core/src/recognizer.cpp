#include "hornnc/recognizer.hpp"

#include "hornnc/errors.hpp"
#include "walk.hpp"

namespace hornnc {

const char* label_name(HnfLabel l) {
  switch (l) {
    case HnfLabel::Negative:
      return "negative";
    case HnfLabel::NonNegativeHnf:
      return "hnf";
    case HnfLabel::NotHnf:
      return "not-hnf";
  }
  return "?";
}

namespace {

// Shared walk; emit is called once per distinct node with its entry.
template <typename Emit>
HnfLabel classify_impl(const FormulaStore& store, NodeId id, Emit&& emit) {
  // Dense memo: recognition must stay linear even on very wide inputs.
  std::vector<std::uint8_t> label(store.node_count(), 0);
  detail::postorder(store, id, [&](NodeId n) {
    ClassifyEntry e{n, HnfLabel::Negative, '?', false};
    switch (store.kind(n)) {
      case NodeKind::Neg:
        throw NotNnfError("recognition requires an NNF input");
      case NodeKind::Lit:
        if (store.literal(n).positive) {
          e.label = HnfLabel::NonNegativeHnf;
          e.case_tag = 'b';
        } else {
          e.label = HnfLabel::Negative;
          e.case_tag = 'c';
        }
        break;
      case NodeKind::True:
        e.label = HnfLabel::Negative;
        e.case_tag = 'e';
        e.empty_connective = true;
        break;
      case NodeKind::False:
        e.label = HnfLabel::Negative;
        e.case_tag = 'c';
        e.empty_connective = true;
        break;
      case NodeKind::Disj: {
        auto cs = store.children(n);
        std::uint32_t non_negative = 0;
        bool bad = false;
        for (NodeId c : cs) {
          HnfLabel cl = static_cast<HnfLabel>(label[c]);
          if (cl == HnfLabel::NotHnf) bad = true;
          if (cl == HnfLabel::NonNegativeHnf) ++non_negative;
        }
        if (bad || non_negative >= 2) {
          e.label = HnfLabel::NotHnf;
          e.case_tag = 'a';
        } else if (non_negative == 1) {
          e.label = HnfLabel::NonNegativeHnf;
          e.case_tag = 'b';
        } else {
          e.label = HnfLabel::Negative;
          e.case_tag = 'c';
        }
        e.empty_connective = cs.empty();
        break;
      }
      case NodeKind::Conj: {
        auto cs = store.children(n);
        bool bad = false, non_negative = false;
        for (NodeId c : cs) {
          HnfLabel cl = static_cast<HnfLabel>(label[c]);
          if (cl == HnfLabel::NotHnf) bad = true;
          if (cl == HnfLabel::NonNegativeHnf) non_negative = true;
        }
        if (bad) {
          e.label = HnfLabel::NotHnf;
          e.case_tag = 'd';
        } else if (non_negative) {
          e.label = HnfLabel::NonNegativeHnf;
          e.case_tag = 'd';
        } else {
          e.label = HnfLabel::Negative;
          e.case_tag = 'e';
        }
        e.empty_connective = cs.empty();
        break;
      }
    }
    label[n] = static_cast<std::uint8_t>(e.label);
    emit(e);
  });
  return static_cast<HnfLabel>(label[id]);
}

}  // namespace

HnfLabel classify_nnf(const FormulaStore& store, NodeId id) {
  return classify_impl(store, id, [](const ClassifyEntry&) {});
}

std::vector<ClassifyEntry> classify_trace(const FormulaStore& store,
                                          NodeId id) {
  std::vector<ClassifyEntry> rows;
  classify_impl(store, id, [&](const ClassifyEntry& e) { rows.push_back(e); });
  return rows;
}

bool is_hnc(FormulaStore& store, NodeId id) {
  NodeId nnf = to_nnf(store, id);
  NodeId folded = simplify_constants(store, nnf);
  if (detail::is_true_const(store, folded) ||
      detail::is_false_const(store, folded))
    return true;
  return classify_nnf(store, folded) != HnfLabel::NotHnf;
}

}  // namespace hornnc
