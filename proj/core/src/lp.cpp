#include "hornnc/lp.hpp"

#include <string>

#include "hornnc/calculus.hpp"
#include "hornnc/errors.hpp"
#include "hornnc/oracle.hpp"
#include "hornnc/recognizer.hpp"
#include "walk.hpp"

namespace hornnc {

namespace {

void check_body(const FormulaStore& store, NodeId body, std::size_t index) {
  detail::postorder(store, body, [&](NodeId n) {
    switch (store.kind(n)) {
      case NodeKind::True:
      case NodeKind::Conj:
      case NodeKind::Disj:
        return;
      case NodeKind::Lit:
        if (store.literal(n).positive) return;
        throw InvalidRuleError("rule body contains a negative literal",
                               index);
      case NodeKind::Neg:
        throw InvalidRuleError("rule body contains negation", index);
      case NodeKind::False:
        throw InvalidRuleError("rule body contains falsity", index);
    }
  });
}

void check_head(FormulaStore& store, NodeId head, std::size_t index) {
  if (!is_hnc(store, head))
    throw InvalidRuleError("rule head is outside the accepted class", index);
}

}  // namespace

NodeId program_to_formula(FormulaStore& store, const HnfProgram& prog) {
  std::vector<NodeId> parts;
  parts.reserve(prog.facts.size() + prog.rules.size());
  for (VarId v : prog.facts) parts.push_back(store.lit(Literal{v, true}));
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    const HnfRule& r = prog.rules[i];
    check_body(store, r.body, i);
    check_head(store, r.head, i);
    NodeId impl = store.disj({store.neg(r.body), r.head});
    parts.push_back(to_nnf(store, impl));
  }
  return store.conj(parts);
}

bool entails(FormulaStore& store, const HnfProgram& prog, NodeId query) {
  NodeId f = program_to_formula(store, prog);
  SolveOutcome out = solve(store, f);
  if (!out.sat) return true;  // an inconsistent program entails everything
  Assignment a;
  for (VarId v : formula_vars(store, f)) a[v] = false;
  for (VarId v : formula_vars(store, query)) a[v] = false;
  for (VarId v : out.model) a[v] = true;
  return evaluate(store, query, a);
}

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return s.substr(b, e - b);
}

bool valid_ident(std::string_view w) {
  if (w.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
  };
  if (!alpha(w[0])) return false;
  for (char c : w.substr(1))
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '_') return false;
  return w != "or" && w != "and" && w != "not" && w != "T" && w != "F";
}

// Re-raise a formula syntax error with positions in the program text.
// Fragments are single-line, so the inner line is always 1 and the inner
// column offsets from where the fragment starts.
NodeId parse_fragment(FormulaStore& store, std::string_view frag,
                      std::size_t line, std::size_t start_col) {
  try {
    return parse_formula(store, frag);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    std::size_t cut = msg.rfind(" at line ");
    if (cut != std::string::npos) msg.resize(cut);
    throw ParseError(msg, line, start_col + e.column - 1);
  }
}

}  // namespace

HnfProgram parse_program(FormulaStore& store, std::string_view text) {
  HnfProgram prog;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    std::string_view line = trim(raw);
    if (!line.empty() && line[0] != '#') {
      // Column of the first non-blank character, for error positions.
      std::size_t first = raw.find_first_not_of(" \t\r");
      std::size_t base_col = (first == std::string_view::npos ? 0 : first) + 1;
      if (line.substr(0, 5) == "fact " || line == "fact") {
        std::string_view name = trim(line.size() > 5 ? line.substr(5)
                                                     : std::string_view{});
        if (!valid_ident(name))
          throw ParseError("'fact' expects a variable name", line_no,
                           base_col);
        prog.facts.push_back(store.var(name));
      } else if (line.substr(0, 5) == "rule " || line == "rule") {
        std::string_view rest =
            line.size() > 5 ? line.substr(5) : std::string_view{};
        std::size_t arrow = rest.find("=>");
        if (arrow == std::string_view::npos)
          throw ParseError("'rule' expects '<body> => <head>'", line_no,
                           base_col);
        std::string_view body_text = trim(rest.substr(0, arrow));
        std::string_view head_text = trim(rest.substr(arrow + 2));
        if (body_text.empty() || head_text.empty())
          throw ParseError("'rule' expects '<body> => <head>'", line_no,
                           base_col);
        std::size_t body_col = base_col + 5 + rest.find(body_text);
        std::size_t head_col =
            base_col + 5 + arrow + 2 + rest.substr(arrow + 2).find(head_text);
        NodeId body = parse_fragment(store, body_text, line_no, body_col);
        NodeId head = parse_fragment(store, head_text, line_no, head_col);
        prog.rules.push_back(HnfRule{body, head});
      } else {
        throw ParseError("expected 'fact', 'rule' or '#'", line_no, base_col);
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return prog;
}

}  // namespace hornnc
