#include "hornnc/formula.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

#include "walk.hpp"

namespace hornnc {

namespace {

constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();

std::uint64_t fnv_step(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  return h * 0x100000001b3ULL;
}

}  // namespace

std::size_t FormulaStore::NodeHash::operator()(NodeId id) const {
  const Node& n = s->nodes_[id];
  std::uint64_t h = fnv_step(0xcbf29ce484222325ULL,
                             static_cast<std::uint64_t>(n.kind));
  switch (n.kind) {
    case NodeKind::True:
    case NodeKind::False:
      break;
    case NodeKind::Lit:
    case NodeKind::Neg:
      h = fnv_step(h, n.a);
      break;
    case NodeKind::Conj:
    case NodeKind::Disj:
      h = fnv_step(h, n.count);
      for (std::uint32_t i = 0; i < n.count; ++i)
        h = fnv_step(h, s->child_pool_[n.first + i]);
      break;
  }
  return static_cast<std::size_t>(h);
}

bool FormulaStore::NodeEq::operator()(NodeId a, NodeId b) const {
  const Node& x = s->nodes_[a];
  const Node& y = s->nodes_[b];
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::True:
    case NodeKind::False:
      return true;
    case NodeKind::Lit:
    case NodeKind::Neg:
      return x.a == y.a;
    case NodeKind::Conj:
    case NodeKind::Disj: {
      if (x.count != y.count) return false;
      const NodeId* px = s->child_pool_.data() + x.first;
      const NodeId* py = s->child_pool_.data() + y.first;
      return std::equal(px, px + x.count, py);
    }
  }
  return false;
}

FormulaStore::FormulaStore() : cons_table_(64, NodeHash{this}, NodeEq{this}) {
  nodes_.push_back(Node{NodeKind::True, 0, 0, 0});
  nodes_.push_back(Node{NodeKind::False, 0, 0, 0});
}

VarId FormulaStore::var(std::string_view name) {
  auto it = var_ids_.find(std::string(name));
  if (it != var_ids_.end()) return it->second;
  VarId v = static_cast<VarId>(var_names_.size());
  var_names_.emplace_back(name);
  var_ids_.emplace(var_names_.back(), v);
  return v;
}

NodeId FormulaStore::intern_pending() {
  NodeId id = static_cast<NodeId>(nodes_.size() - 1);
  auto [it, inserted] = cons_table_.insert(id);
  if (inserted) return id;
  const Node& n = nodes_.back();
  if (n.kind == NodeKind::Conj || n.kind == NodeKind::Disj)
    child_pool_.resize(n.first);
  nodes_.pop_back();
  return *it;
}

NodeId FormulaStore::lit(Literal l) {
  nodes_.push_back(Node{NodeKind::Lit,
                        (l.var << 1) | static_cast<std::uint32_t>(l.positive),
                        0, 0});
  return intern_pending();
}

NodeId FormulaStore::lit(std::string_view name, bool positive) {
  return lit(Literal{var(name), positive});
}

NodeId FormulaStore::neg(NodeId child) {
  assert(child < nodes_.size());
  nodes_.push_back(Node{NodeKind::Neg, child, 0, 0});
  return intern_pending();
}

NodeId FormulaStore::connective(NodeKind k, std::span<const NodeId> cs) {
  assert(k == NodeKind::Conj || k == NodeKind::Disj);
  std::uint32_t first = static_cast<std::uint32_t>(child_pool_.size());
  if (child_pool_.capacity() - child_pool_.size() < cs.size()) {
    // The span may alias child_pool_; copy before growing the pool.
    std::vector<NodeId> tmp(cs.begin(), cs.end());
    child_pool_.insert(child_pool_.end(), tmp.begin(), tmp.end());
  } else {
    child_pool_.insert(child_pool_.end(), cs.begin(), cs.end());
  }
  nodes_.push_back(Node{k, 0, first, static_cast<std::uint32_t>(cs.size())});
  return intern_pending();
}

NodeId FormulaStore::conj(std::span<const NodeId> cs) {
  return connective(NodeKind::Conj, cs);
}
NodeId FormulaStore::disj(std::span<const NodeId> cs) {
  return connective(NodeKind::Disj, cs);
}
NodeId FormulaStore::conj(std::initializer_list<NodeId> cs) {
  return connective(NodeKind::Conj, std::span<const NodeId>(cs.begin(), cs.size()));
}
NodeId FormulaStore::disj(std::initializer_list<NodeId> cs) {
  return connective(NodeKind::Disj, std::span<const NodeId>(cs.begin(), cs.size()));
}

std::span<const NodeId> FormulaStore::children(NodeId id) const {
  const Node& n = nodes_[id];
  switch (n.kind) {
    case NodeKind::Conj:
    case NodeKind::Disj:
      return {child_pool_.data() + n.first, n.count};
    case NodeKind::Neg:
      // Neg stores its child inline; expose it as a one-element span.
      return {&n.a, 1};
    default:
      return {};
  }
}

Literal FormulaStore::literal(NodeId id) const {
  const Node& n = nodes_[id];
  assert(n.kind == NodeKind::Lit);
  return Literal{n.a >> 1, (n.a & 1) != 0};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                      peek() == '\n'))
      advance();
  }
};

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
}

std::string_view read_ident(Cursor& c) {
  std::size_t start = c.pos;
  while (!c.eof() && ident_char(c.peek())) c.advance();
  return c.text.substr(start, c.pos - start);
}

bool reserved_word(std::string_view w) {
  return w == "or" || w == "and" || w == "not" || w == "T" || w == "F";
}

}  // namespace

NodeId parse_formula(FormulaStore& store, std::string_view text) {
  Cursor c{text};
  struct Frame {
    NodeKind kind;
    std::size_t children_start;
    std::size_t line, col;
  };
  std::vector<Frame> frames;
  std::vector<NodeId> out;

  auto push_value = [&](NodeId id, std::size_t line, std::size_t col) {
    if (frames.empty() && !out.empty())
      throw ParseError("expected end of input", line, col);
    out.push_back(id);
  };

  while (true) {
    c.skip_ws();
    if (c.eof()) break;
    std::size_t line = c.line, col = c.col;
    char ch = c.peek();
    if (ch == '(') {
      c.advance();
      c.skip_ws();
      if (c.eof() || !ident_start(c.peek()))
        throw ParseError("expected 'or', 'and' or 'not' after '('", c.line,
                         c.col);
      std::string_view w = read_ident(c);
      NodeKind k;
      if (w == "or")
        k = NodeKind::Disj;
      else if (w == "and")
        k = NodeKind::Conj;
      else if (w == "not")
        k = NodeKind::Neg;
      else
        throw ParseError("expected 'or', 'and' or 'not' after '('", line, col);
      if (frames.empty() && !out.empty())
        throw ParseError("expected end of input", line, col);
      frames.push_back(Frame{k, out.size(), line, col});
    } else if (ch == ')') {
      if (frames.empty())
        throw ParseError("unmatched ')'", line, col);
      c.advance();
      Frame f = frames.back();
      frames.pop_back();
      std::span<const NodeId> cs(out.data() + f.children_start,
                                 out.size() - f.children_start);
      NodeId id;
      if (f.kind == NodeKind::Neg) {
        if (cs.size() != 1)
          throw ParseError("'not' takes exactly one argument", f.line, f.col);
        id = store.neg(cs[0]);
      } else {
        id = store.connective(f.kind, cs);
      }
      out.resize(f.children_start);
      push_value(id, f.line, f.col);
    } else if (ch == '~') {
      c.advance();
      c.skip_ws();
      if (c.eof() || !ident_start(c.peek()))
        throw ParseError("expected identifier after '~'", c.line, c.col);
      std::size_t iline = c.line, icol = c.col;
      std::string_view w = read_ident(c);
      if (reserved_word(w))
        throw ParseError("'" + std::string(w) + "' is reserved", iline, icol);
      push_value(store.lit(w, false), line, col);
    } else if (ident_start(ch)) {
      std::string_view w = read_ident(c);
      if (w == "T")
        push_value(store.truth(), line, col);
      else if (w == "F")
        push_value(store.falsity(), line, col);
      else if (reserved_word(w))
        throw ParseError("'" + std::string(w) + "' is reserved", line, col);
      else
        push_value(store.lit(w, true), line, col);
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line,
                       col);
    }
  }
  if (!frames.empty())
    throw ParseError("unexpected end of input: unclosed '('", c.line, c.col);
  if (out.empty()) throw ParseError("empty input", c.line, c.col);
  return out[0];
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// One walk serves both renderings; the style only changes the tokens.
struct PrintStyle {
  const char* conj_open;
  const char* conj_close;
  const char* disj_open;
  const char* disj_close;
  const char* neg_open;
  const char* neg_close;
  bool overline_negative;
};

constexpr PrintStyle kAscii{"(and", ")", "(or", ")", "(not ", ")", false};
constexpr PrintStyle kUnicode{"{∧", "}", "(∨", ")", "¬", "",
                              true};

void append_literal(std::string& outs, const FormulaStore& store, Literal l,
                    const PrintStyle& st) {
  const std::string& name = store.var_name(l.var);
  if (l.positive) {
    outs += name;
  } else if (st.overline_negative) {
    for (char ch : name) {
      outs += ch;
      outs += "̅";
    }
  } else {
    outs += '~';
    outs += name;
  }
}

std::string print_impl(const FormulaStore& store, NodeId root,
                       const PrintStyle& st) {
  std::string outs;
  struct Item {
    NodeId id;
    std::uint32_t next;  // next child to emit
  };
  std::vector<Item> stack{{root, 0}};
  while (!stack.empty()) {
    Item& it = stack.back();
    NodeKind k = store.kind(it.id);
    switch (k) {
      case NodeKind::True:
        outs += 'T';
        stack.pop_back();
        break;
      case NodeKind::False:
        outs += 'F';
        stack.pop_back();
        break;
      case NodeKind::Lit:
        append_literal(outs, store, store.literal(it.id), st);
        stack.pop_back();
        break;
      case NodeKind::Neg: {
        if (it.next == 0) {
          outs += st.neg_open;
          NodeId child = store.children(it.id)[0];
          it.next = 1;
          stack.push_back({child, 0});
        } else {
          outs += st.neg_close;
          stack.pop_back();
        }
        break;
      }
      case NodeKind::Conj:
      case NodeKind::Disj: {
        auto cs = store.children(it.id);
        if (it.next == 0)
          outs += (k == NodeKind::Conj) ? st.conj_open : st.disj_open;
        if (it.next < cs.size()) {
          outs += ' ';
          NodeId child = cs[it.next];
          ++it.next;
          stack.push_back({child, 0});
        } else {
          outs += (k == NodeKind::Conj) ? st.conj_close : st.disj_close;
          stack.pop_back();
        }
        break;
      }
    }
  }
  return outs;
}

}  // namespace

std::string print_formula(const FormulaStore& store, NodeId id) {
  return print_impl(store, id, kAscii);
}

std::string print_formula_unicode(const FormulaStore& store, NodeId id) {
  return print_impl(store, id, kUnicode);
}

// ---------------------------------------------------------------------------
// Constant simplification

NodeId simplify_constants(FormulaStore& store, NodeId id) {
  using detail::is_false_const;
  using detail::is_true_const;
  std::vector<NodeId> memo(store.node_count(), kInvalidNode);
  std::vector<NodeId> buf;
  detail::postorder(store, id, [&](NodeId n) {
    switch (store.kind(n)) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Lit:
        memo[n] = n;
        break;
      case NodeKind::Neg: {
        NodeId c = memo[store.children(n)[0]];
        if (is_true_const(store, c))
          memo[n] = store.falsity();
        else if (is_false_const(store, c))
          memo[n] = store.truth();
        else
          memo[n] = store.neg(c);
        break;
      }
      case NodeKind::Conj:
      case NodeKind::Disj: {
        bool is_conj = store.kind(n) == NodeKind::Conj;
        NodeId absorber = is_conj ? store.falsity() : store.truth();
        bool absorbed = false;
        bool dropped = false;
        buf.clear();
        for (NodeId raw : store.children(n)) {
          NodeId c = memo[raw];
          bool t = is_true_const(store, c), f = is_false_const(store, c);
          if ((is_conj && f) || (!is_conj && t)) {
            absorbed = true;
            break;
          }
          if (t || f) {
            dropped = true;  // the connective's neutral constant
            continue;
          }
          buf.push_back(c);
        }
        if (absorbed)
          memo[n] = absorber;
        else if (buf.empty())
          memo[n] = is_conj ? store.truth() : store.falsity();
        else if (buf.size() == 1 && dropped)
          memo[n] = buf[0];
        else
          memo[n] = store.connective(store.kind(n), buf);
        break;
      }
    }
  });
  return memo[id];
}

// ---------------------------------------------------------------------------
// NNF conversion

NodeId to_nnf(FormulaStore& store, NodeId id) {
  // Two memo slots per input node, one per polarity.
  std::size_t n_in = store.node_count();
  std::vector<NodeId> memo(2 * n_in, kInvalidNode);
  auto slot = [&](NodeId n, bool positive) -> NodeId& {
    return memo[2 * static_cast<std::size_t>(n) + (positive ? 1 : 0)];
  };

  struct Item {
    NodeId id;
    bool positive;
    bool expand;
  };
  std::vector<Item> stack{{id, true, true}};
  std::vector<NodeId> buf;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (slot(it.id, it.positive) != kInvalidNode) continue;
    NodeKind k = store.kind(it.id);
    if (it.expand) {
      switch (k) {
        case NodeKind::True:
          slot(it.id, it.positive) =
              it.positive ? store.truth() : store.falsity();
          break;
        case NodeKind::False:
          slot(it.id, it.positive) =
              it.positive ? store.falsity() : store.truth();
          break;
        case NodeKind::Lit: {
          Literal l = store.literal(it.id);
          slot(it.id, it.positive) = store.lit(it.positive ? l : l.negate());
          break;
        }
        case NodeKind::Neg:
          stack.push_back({it.id, it.positive, false});
          stack.push_back({store.children(it.id)[0], !it.positive, true});
          break;
        case NodeKind::Conj:
        case NodeKind::Disj:
          stack.push_back({it.id, it.positive, false});
          for (NodeId c : store.children(it.id))
            stack.push_back({c, it.positive, true});
          break;
      }
    } else {
      if (k == NodeKind::Neg) {
        slot(it.id, it.positive) = slot(store.children(it.id)[0], !it.positive);
      } else {
        // Conj stays Conj under positive polarity and dualizes under
        // negative polarity; likewise Disj.
        bool conj_out = (k == NodeKind::Conj) == it.positive;
        buf.clear();
        for (NodeId c : store.children(it.id)) buf.push_back(slot(c, it.positive));
        slot(it.id, it.positive) =
            store.connective(conj_out ? NodeKind::Conj : NodeKind::Disj, buf);
      }
    }
  }
  return slot(id, true);
}

// ---------------------------------------------------------------------------
// Metrics

SizeMetrics size_metrics(const FormulaStore& store, NodeId id) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto sat_add = [](std::uint64_t a, std::uint64_t b) {
    return (kMax - a < b) ? kMax : a + b;
  };
  std::vector<std::uint64_t> size(store.node_count(), 0);
  std::vector<std::uint32_t> depth(store.node_count(), 0);
  std::vector<bool> var_seen(store.var_count(), false);
  SizeMetrics m{0, 0, 0, 0};
  detail::postorder(store, id, [&](NodeId n) {
    ++m.dag_size;
    NodeKind k = store.kind(n);
    if (k == NodeKind::Lit) {
      Literal l = store.literal(n);
      if (!var_seen[l.var]) {
        var_seen[l.var] = true;
        ++m.n_vars;
      }
    }
    std::uint64_t sz = 1;
    std::uint32_t d = 0;
    for (NodeId c : store.children(n)) {
      sz = sat_add(sz, size[c]);
      d = std::max(d, depth[c] + 1);
    }
    size[n] = sz;
    depth[n] = d;
  });
  m.size = size[id];
  m.depth = depth[id];
  return m;
}

}  // namespace hornnc
