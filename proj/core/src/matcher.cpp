#include "cipscan/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace cipscan {

namespace {

// ---- small node predicates -------------------------------------------------

bool is_null_literal(NodeRef n) {
  return n->kind == NodeKind::Literal &&
         static_cast<LiteralKind>(n->flavor) == LiteralKind::Null;
}

// Literal value other than null, allowing a leading sign.
bool is_const_literal(NodeRef n) {
  if (n->kind == NodeKind::Literal) return !is_null_literal(n);
  if (n->kind == NodeKind::UnaryExpr && n->aux == 0 &&
      (n->name == "-" || n->name == "+") && n.child_count() == 1) {
    const NodeRef inner = n.child(0);
    return inner->kind == NodeKind::Literal && !is_null_literal(inner);
  }
  return false;
}

bool is_variable_like(NodeRef n) {
  switch (n->kind) {
    case NodeKind::NameRef:
      return n->name != "this" && n->name != "super";
    case NodeKind::FieldAccess:
    case NodeKind::ArrayAccess:
      return true;
    case NodeKind::MethodCall:
      return !n->is_constructor_call;
    case NodeKind::CastExpr:
      return is_variable_like(n.child(0));
    default:
      return false;
  }
}

std::string token_of(NodeRef n) { return std::string(n.text()); }

// Simple name of an operand: callee/member/identifier, falling back to text.
std::string simple_name_of(NodeRef n) {
  switch (n->kind) {
    case NodeKind::MethodCall:
    case NodeKind::FieldAccess:
    case NodeKind::NameRef:
      return n->name;
    case NodeKind::CastExpr:
      return simple_name_of(n.child(0));
    default:
      return token_of(n);
  }
}

NodeRef strip_not(NodeRef n) {
  while (n->kind == NodeKind::UnaryExpr && n->name == "!" && n.child_count() == 1)
    n = n.child(0);
  return n;
}

// Receiver with trailing utility calls peeled: name.toLowerCase() -> name.
NodeRef receiver_base(NodeRef n) {
  while (n->kind == NodeKind::MethodCall && n->has_receiver) n = n.child(0);
  return n;
}

bool is_comparison_op(const std::string& op) {
  return op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=";
}
bool is_equality_op(const std::string& op) { return op == "==" || op == "!="; }

struct EqualityTest {
  NodeRef node;
  NodeRef lhs;
  NodeRef rhs;
  bool via_equals = false;
};

// ==-comparison or equals()/equalsIgnoreCase() call viewed as an equality.
std::optional<EqualityTest> as_equality(NodeRef n, bool allow_ignore_case) {
  if (n->kind == NodeKind::BinaryExpr && n->name == "==")
    return EqualityTest{n, n.child(0), n.child(1), false};
  if (n->kind == NodeKind::MethodCall && n->has_receiver && n.child_count() == 2 &&
      (n->name == "equals" || (allow_ignore_case && n->name == "equalsIgnoreCase")))
    return EqualityTest{n, n.child(0), n.child(1), true};
  return std::nullopt;
}

// Candidate subject texts of an equality: the variable-like sides.
std::vector<std::string> equality_subjects(const EqualityTest& eq) {
  std::vector<std::string> out;
  if (is_variable_like(eq.lhs)) out.push_back(token_of(eq.lhs));
  if (is_variable_like(eq.rhs)) out.push_back(token_of(eq.rhs));
  return out;
}

// Whether the node (possibly via !/&&/|| wrappers) sits in a condition slot.
bool in_boolean_context(NodeRef n) {
  NodeRef cur = n;
  NodeRef p = cur.parent();
  while (p.valid()) {
    const AstNode& pn = *p;
    if (pn.kind == NodeKind::UnaryExpr && pn.name == "!") {
      cur = p;
      p = cur.parent();
      continue;
    }
    if (pn.kind == NodeKind::BinaryExpr && (pn.name == "&&" || pn.name == "||")) {
      cur = p;
      p = cur.parent();
      continue;
    }
    break;
  }
  if (!p.valid()) return false;
  const AstNode& pn = *p;
  const NodeId cid = cur.id;
  switch (pn.kind) {
    case NodeKind::IfStmt:
    case NodeKind::TernaryExpr:
      return pn.children[0] == cid;
    case NodeKind::LoopStmt: {
      const auto flavor = static_cast<LoopFlavor>(pn.flavor);
      if (flavor == LoopFlavor::While || flavor == LoopFlavor::DoWhile)
        return pn.children[0] == cid;
      if (flavor == LoopFlavor::For) {
        const std::uint32_t n_init = pn.aux >> 16;
        const bool has_cond = (pn.aux >> 15) & 1;
        return has_cond && n_init < pn.children.size() && pn.children[n_init] == cid;
      }
      return false;
    }
    case NodeKind::OtherStmt:
      return pn.name == "assert" && !pn.children.empty() && pn.children[0] == cid;
    default:
      return false;
  }
}

NodeRef find_first(NodeRef root, const std::function<bool(NodeRef)>& pred) {
  if (pred(root)) return root;
  for (std::size_t i = 0; i < root.child_count(); ++i) {
    const NodeRef hit = find_first(root.child(i), pred);
    if (hit.valid()) return hit;
  }
  return NodeRef{};
}

void collect_name_refs(NodeRef root, std::set<std::string>& out) {
  if (root->kind == NodeKind::NameRef) out.insert(root->name);
  for (std::size_t i = 0; i < root.child_count(); ++i) collect_name_refs(root.child(i), out);
}

bool contains_class_literal(NodeRef n) {
  if (n->kind == NodeKind::ClassLiteralAccess) return true;
  for (std::size_t i = 0; i < n.child_count(); ++i)
    if (contains_class_literal(n.child(i))) return true;
  return false;
}

// Following sibling statements of an anchor inside its parent block.
std::vector<NodeRef> following_siblings(NodeRef anchor) {
  std::vector<NodeRef> out;
  const NodeRef parent = anchor.parent();
  if (!parent.valid()) return out;
  if (parent->kind != NodeKind::Block && parent->kind != NodeKind::SwitchCase) return out;
  bool after = false;
  for (NodeId c : parent->children) {
    if (c == anchor.id) {
      after = true;
      continue;
    }
    if (after) out.push_back(NodeRef{anchor.ast, c});
  }
  return out;
}

BoundPart part(PartRole role, std::string tok, NodeRef node = {}) {
  return BoundPart{role, std::move(tok), node};
}

struct MatchResult {
  PartsBinding binding;
  std::vector<NodeId> consumed;
};

using MatchFn = std::optional<MatchResult> (*)(NodeRef, const SymbolTable&);

// ---- per-pattern matchers ----------------------------------------------

std::optional<MatchResult> match_boolean_property(NodeRef n, const SymbolTable& symbols) {
  const NodeKind kind = n->kind;
  if (kind != NodeKind::NameRef && kind != NodeKind::FieldAccess && kind != NodeKind::MethodCall)
    return std::nullopt;
  if (kind == NodeKind::NameRef && (n->name == "this" || n->name == "super"))
    return std::nullopt;
  if (kind == NodeKind::MethodCall) {
    if (n->is_constructor_call) return std::nullopt;
    static const char* kOwnedCallees[] = {"equals", "equalsIgnoreCase", "startsWith",
                                          "endsWith", "valueOf"};
    for (const char* owned : kOwnedCallees)
      if (n->name == owned) return std::nullopt;
  }
  const NodeRef parent = n.parent();
  if (parent.valid()) {
    // Receivers and assignment targets are not checks of the value.
    if ((parent->kind == NodeKind::FieldAccess || parent->kind == NodeKind::MethodCall) &&
        !parent->children.empty() && parent->children[0] == n.id && parent->has_receiver)
      return std::nullopt;
    if (parent->kind == NodeKind::FieldAccess && !parent->children.empty() &&
        parent->children[0] == n.id)
      return std::nullopt;
    if (parent->kind == NodeKind::Assignment && parent->children[0] == n.id)
      return std::nullopt;
  }
  if (!in_boolean_context(n)) return std::nullopt;
  const auto type = declared_type_of(n, symbols);
  if (type && *type != "boolean" && *type != "Boolean") return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, simple_name_of(n), n)}}, {}};
}

std::optional<MatchResult> match_binary_comparison(NodeRef n, const SymbolTable&) {
  NodeRef lhs, rhs;
  std::string op;
  if (n->kind == NodeKind::BinaryExpr && is_comparison_op(n->name)) {
    lhs = n.child(0);
    rhs = n.child(1);
    op = n->name;
  } else if (auto eq = as_equality(n, /*allow_ignore_case=*/false); eq && eq->via_equals) {
    lhs = eq->lhs;
    rhs = eq->rhs;
    op = "==";
  } else {
    return std::nullopt;
  }
  if (is_null_literal(lhs) || is_null_literal(rhs)) return std::nullopt;
  const bool lhs_var = is_variable_like(lhs);
  const bool rhs_var = is_variable_like(rhs);
  if (!lhs_var && !rhs_var) return std::nullopt;
  if (!lhs_var && !is_const_literal(lhs)) return std::nullopt;
  if (!rhs_var && !is_const_literal(rhs)) return std::nullopt;
  PartsBinding b;
  b.parts.push_back(part(PartRole::Variable, token_of(lhs), lhs));
  b.parts.push_back(part(PartRole::Operator, op));
  b.parts.push_back(part(PartRole::Variable, token_of(rhs), rhs));
  return MatchResult{std::move(b), {}};
}

std::optional<MatchResult> match_constant_argument(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::MethodCall) return std::nullopt;
  const std::size_t first_arg = n->has_receiver ? 1 : 0;
  for (std::size_t i = first_arg; i < n.child_count(); ++i) {
    const NodeRef arg = n.child(i);
    if (is_const_literal(arg)) {
      PartsBinding b;
      b.parts.push_back(part(PartRole::Method, n->name, n));
      b.parts.push_back(part(PartRole::Constant, token_of(arg), arg));
      return MatchResult{std::move(b), {}};
    }
  }
  return std::nullopt;
}

std::optional<MatchResult> match_null_check(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::BinaryExpr || !is_equality_op(n->name)) return std::nullopt;
  const NodeRef lhs = n.child(0);
  const NodeRef rhs = n.child(1);
  NodeRef var;
  if (is_null_literal(lhs) && is_variable_like(rhs)) var = rhs;
  else if (is_null_literal(rhs) && is_variable_like(lhs)) var = lhs;
  else return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(var), var)}}, {}};
}

std::optional<MatchResult> match_assign_constant(NodeRef n, const SymbolTable&) {
  if (n->kind == NodeKind::Assignment && n->name == "=") {
    const NodeRef lhs = n.child(0);
    const NodeRef rhs = n.child(1);
    if (!is_variable_like(lhs) || !is_const_literal(rhs)) return std::nullopt;
    PartsBinding b;
    b.parts.push_back(part(PartRole::Variable, token_of(lhs), lhs));
    b.parts.push_back(part(PartRole::Constant, token_of(rhs), rhs));
    return MatchResult{std::move(b), {}};
  }
  if ((n->kind == NodeKind::LocalVarDecl ||
       (n->kind == NodeKind::FieldDecl && !n->is_enum_constant)) &&
      n.child_count() == 1 && is_const_literal(n.child(0))) {
    PartsBinding b;
    b.parts.push_back(part(PartRole::Variable, n->name, n));
    b.parts.push_back(part(PartRole::Constant, token_of(n.child(0)), n.child(0)));
    return MatchResult{std::move(b), {}};
  }
  return std::nullopt;
}

std::optional<MatchResult> match_binary_flag_check(NodeRef n, const SymbolTable&) {
  auto mask_operand = [](NodeRef e) {
    return e->kind == NodeKind::NameRef || e->kind == NodeKind::FieldAccess ||
           (e->kind == NodeKind::Literal && !is_null_literal(e));
  };
  // (flag & MASK) == MASK and the looser (flags & 0x4) != 0 form.
  if (n->kind == NodeKind::BinaryExpr && is_equality_op(n->name)) {
    for (int side = 0; side < 2; ++side) {
      const NodeRef bitop = n.child(side);
      const NodeRef other = n.child(1 - side);
      if (bitop->kind != NodeKind::BinaryExpr || (bitop->name != "&" && bitop->name != "|"))
        continue;
      const NodeRef a = bitop.child(0);
      const NodeRef b = bitop.child(1);
      NodeRef var, mask;
      if (is_variable_like(a) && mask_operand(b)) {
        var = a;
        mask = b;
      } else if (is_variable_like(b) && mask_operand(a)) {
        var = b;
        mask = a;
      } else {
        continue;
      }
      if (!mask_operand(other) && !is_const_literal(other)) continue;
      PartsBinding binding;
      binding.parts.push_back(part(PartRole::Variable, token_of(var), var));
      binding.parts.push_back(part(PartRole::Constant, token_of(mask), mask));
      return MatchResult{std::move(binding), {bitop.id}};
    }
    return std::nullopt;
  }
  // Operator precedence puts `flag & NEW_FILE == NEW_FILE` in this shape:
  // the masked comparison hangs under the bitwise operator.
  if (n->kind == NodeKind::BinaryExpr && (n->name == "&" || n->name == "|")) {
    for (int side = 0; side < 2; ++side) {
      const NodeRef var = n.child(side);
      const NodeRef cmp = n.child(1 - side);
      if (!is_variable_like(var)) continue;
      if (cmp->kind != NodeKind::BinaryExpr || !is_equality_op(cmp->name)) continue;
      const NodeRef m1 = cmp.child(0);
      const NodeRef m2 = cmp.child(1);
      if (!mask_operand(m1) || !mask_operand(m2)) continue;
      if (m1.text() != m2.text()) continue;
      PartsBinding binding;
      binding.parts.push_back(part(PartRole::Variable, token_of(var), var));
      binding.parts.push_back(part(PartRole::Constant, token_of(m1), m1));
      return MatchResult{std::move(binding), {cmp.id}};
    }
  }
  return std::nullopt;
}

// Shared by `if chain` and `if-return chain`: a clause condition that is a
// single equality test, yielding its subject candidates.
struct Clause {
  NodeRef if_node;
  NodeRef cond;
  std::vector<std::string> subjects;
};

std::optional<Clause> as_equality_clause(NodeRef if_node, bool allow_ignore_case) {
  const NodeRef cond = if_node.child(0);
  auto eq = as_equality(cond, allow_ignore_case);
  if (!eq) return std::nullopt;
  auto subjects = equality_subjects(*eq);
  if (subjects.empty()) return std::nullopt;
  return Clause{if_node, cond, std::move(subjects)};
}

std::vector<std::string> intersect_subjects(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const std::string& s : a)
    if (std::find(b.begin(), b.end(), s) != b.end() &&
        std::find(out.begin(), out.end(), s) == out.end())
      out.push_back(s);
  return out;
}

std::optional<MatchResult> match_if_chain(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::IfStmt) return std::nullopt;
  // Anchor at the first clause of an else-if chain: an else-linked node only
  // matches when its parent clause cannot itself belong to the chain.
  const NodeRef parent = n.parent();
  if (parent.valid() && parent->kind == NodeKind::IfStmt && parent->children.size() == 3 &&
      parent->children[2] == n.id &&
      as_equality_clause(parent, /*allow_ignore_case=*/false))
    return std::nullopt;
  std::vector<Clause> clauses;
  NodeRef cur = n;
  while (true) {
    auto clause = as_equality_clause(cur, /*allow_ignore_case=*/false);
    if (!clause) break;
    clauses.push_back(std::move(*clause));
    if (cur->children.size() != 3) break;
    const NodeRef else_branch = cur.child(2);
    if (else_branch->kind != NodeKind::IfStmt) break;
    cur = else_branch;
  }
  if (clauses.size() < 2) return std::nullopt;
  std::vector<std::string> common = clauses[0].subjects;
  for (std::size_t i = 1; i < clauses.size(); ++i)
    common = intersect_subjects(common, clauses[i].subjects);
  if (common.empty()) return std::nullopt;
  std::vector<NodeId> consumed;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    consumed.push_back(clauses[i].cond.id);
    if (i > 0) consumed.push_back(clauses[i].if_node.id);
  }
  return MatchResult{PartsBinding{{part(PartRole::Variable, common[0], clauses[0].cond)}},
                     std::move(consumed)};
}

std::optional<MatchResult> match_if_return_chain(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::IfStmt || n->children.size() != 2) return std::nullopt;
  auto qualifies = [](NodeRef if_node) -> std::optional<Clause> {
    if (if_node->kind != NodeKind::IfStmt || if_node->children.size() != 2)
      return std::nullopt;
    auto clause = as_equality_clause(if_node, /*allow_ignore_case=*/true);
    if (!clause) return std::nullopt;
    NodeRef body = if_node.child(1);
    if (body->kind == NodeKind::Block) {
      if (body->children.size() != 1) return std::nullopt;
      body = body.child(0);
    }
    if (body->kind != NodeKind::ReturnStmt) return std::nullopt;
    return clause;
  };
  auto self = qualifies(n);
  if (!self) return std::nullopt;
  const NodeRef parent = n.parent();
  if (!parent.valid() || parent->kind != NodeKind::Block) return std::nullopt;
  const auto& siblings = parent->children;
  const auto it = std::find(siblings.begin(), siblings.end(), n.id);
  const std::size_t index = static_cast<std::size_t>(it - siblings.begin());

  // Anchor check: the previous sibling must not extend the same run.
  if (index > 0) {
    auto prev = qualifies(NodeRef{n.ast, siblings[index - 1]});
    if (prev && !intersect_subjects(prev->subjects, self->subjects).empty())
      return std::nullopt;
  }
  std::vector<Clause> run{*self};
  std::vector<std::string> common = self->subjects;
  for (std::size_t i = index + 1; i < siblings.size(); ++i) {
    auto next = qualifies(NodeRef{n.ast, siblings[i]});
    if (!next) break;
    auto narrowed = intersect_subjects(common, next->subjects);
    if (narrowed.empty()) break;
    common = std::move(narrowed);
    run.push_back(std::move(*next));
  }
  if (run.size() < 2) return std::nullopt;
  std::vector<NodeId> consumed;
  for (std::size_t i = 0; i < run.size(); ++i) {
    consumed.push_back(run[i].cond.id);
    if (i > 0) consumed.push_back(run[i].if_node.id);
    // The return bodies are constituents of the chain.
    NodeRef body = run[i].if_node.child(1);
    if (body->kind == NodeKind::Block && body->children.size() == 1) body = body.child(0);
    consumed.push_back(body.id);
  }
  return MatchResult{PartsBinding{{part(PartRole::Variable, common[0], run[0].cond)}},
                     std::move(consumed)};
}

std::optional<MatchResult> match_equals_or_chain(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::BinaryExpr || n->name != "||") return std::nullopt;
  const NodeRef parent = n.parent();
  if (parent.valid() && parent->kind == NodeKind::BinaryExpr && parent->name == "||")
    return std::nullopt;  // only the top of the or-tree anchors
  std::vector<EqualityTest> leaves;
  std::function<bool(NodeRef)> collect = [&](NodeRef e) {
    if (e->kind == NodeKind::BinaryExpr && e->name == "||")
      return collect(e.child(0)) && collect(e.child(1));
    auto eq = as_equality(e, /*allow_ignore_case=*/true);
    if (!eq) return false;
    if (is_null_literal(eq->lhs) || is_null_literal(eq->rhs)) return false;
    leaves.push_back(*eq);
    return true;
  };
  if (!collect(n) || leaves.size() < 2) return std::nullopt;
  std::vector<std::string> common = equality_subjects(leaves[0]);
  for (std::size_t i = 1; i < leaves.size(); ++i)
    common = intersect_subjects(common, equality_subjects(leaves[i]));
  if (common.empty()) return std::nullopt;
  std::vector<NodeId> consumed;
  std::function<void(NodeRef)> consume_ors = [&](NodeRef e) {
    if (e->kind == NodeKind::BinaryExpr && e->name == "||" && !(e == n)) consumed.push_back(e.id);
    if (e->kind == NodeKind::BinaryExpr && e->name == "||") {
      consume_ors(e.child(0));
      consume_ors(e.child(1));
    }
  };
  consume_ors(n);
  for (const EqualityTest& leaf : leaves) consumed.push_back(leaf.node.id);
  return MatchResult{PartsBinding{{part(PartRole::Variable, common[0], leaves[0].node)}},
                     std::move(consumed)};
}

// Compound null patterns share the scaffolding: a null check on V combined
// with a second test of V.
struct CompoundNull {
  NodeRef null_node;
  NodeRef other;
  std::string var_text;
};

std::optional<CompoundNull> as_compound_null(NodeRef n) {
  if (n->kind != NodeKind::BinaryExpr || (n->name != "&&" && n->name != "||"))
    return std::nullopt;
  const NodeRef lhs = strip_not(n.child(0));
  const NodeRef rhs = strip_not(n.child(1));
  for (int side = 0; side < 2; ++side) {
    const NodeRef a = side == 0 ? lhs : rhs;
    const NodeRef b = side == 0 ? rhs : lhs;
    if (a->kind != NodeKind::BinaryExpr || !is_equality_op(a->name)) continue;
    const NodeRef l = NodeRef{a.ast, a->children[0]};
    const NodeRef r = NodeRef{a.ast, a->children[1]};
    NodeRef var;
    if (is_null_literal(l) && is_variable_like(r)) var = r;
    else if (is_null_literal(r) && is_variable_like(l)) var = l;
    else continue;
    return CompoundNull{a, b, token_of(var)};
  }
  return std::nullopt;
}

bool is_empty_string_literal(NodeRef n) {
  return n->kind == NodeKind::Literal &&
         static_cast<LiteralKind>(n->flavor) == LiteralKind::String &&
         (n->name == "\"\"" || n->name == "\" \"");
}

std::optional<MatchResult> match_null_empty_check(NodeRef n, const SymbolTable&) {
  auto cn = as_compound_null(n);
  if (!cn) return std::nullopt;
  const NodeRef other = cn->other;
  bool is_empty_test = false;
  if (auto eq = as_equality(other, /*allow_ignore_case=*/true)) {
    const bool lhs_is_var = token_of(eq->lhs) == cn->var_text;
    const bool rhs_is_var = token_of(eq->rhs) == cn->var_text;
    if (lhs_is_var && is_empty_string_literal(eq->rhs)) is_empty_test = true;
    if (rhs_is_var && is_empty_string_literal(eq->lhs)) is_empty_test = true;
  }
  // isEmpty() also counts as the emptiness side.
  if (other->kind == NodeKind::MethodCall && other->name == "isEmpty" &&
      other->has_receiver && token_of(other.child(0)) == cn->var_text)
    is_empty_test = true;
  if (!is_empty_test) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, cn->var_text, cn->null_node)}},
                     {cn->null_node.id, cn->other.id}};
}

std::optional<MatchResult> match_null_zero_check(NodeRef n, const SymbolTable&) {
  auto cn = as_compound_null(n);
  if (!cn) return std::nullopt;
  const NodeRef other = cn->other;
  if (other->kind != NodeKind::BinaryExpr || !is_comparison_op(other->name))
    return std::nullopt;
  const NodeRef lhs = other.child(0);
  const NodeRef rhs = other.child(1);
  auto is_zero = [](NodeRef e) {
    return e->kind == NodeKind::Literal &&
           static_cast<LiteralKind>(e->flavor) == LiteralKind::Int && e->name == "0";
  };
  auto is_property_of_var = [&](NodeRef e) {
    if (e->kind != NodeKind::MethodCall && e->kind != NodeKind::FieldAccess) return false;
    if (!e->children.empty()) {
      const NodeRef recv = NodeRef{e.ast, e->children[0]};
      return token_of(recv) == cn->var_text;
    }
    return false;
  };
  const bool ok = (is_property_of_var(lhs) && is_zero(rhs)) ||
                  (is_property_of_var(rhs) && is_zero(lhs));
  if (!ok) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, cn->var_text, cn->null_node)}},
                     {cn->null_node.id, cn->other.id}};
}

std::optional<MatchResult> match_null_boolean_check(NodeRef n, const SymbolTable& symbols) {
  auto cn = as_compound_null(n);
  if (!cn) return std::nullopt;
  const NodeRef other = cn->other;
  if (other->kind != NodeKind::MethodCall && other->kind != NodeKind::FieldAccess)
    return std::nullopt;
  if (other->children.empty()) return std::nullopt;
  const NodeRef recv = NodeRef{other.ast, other->children[0]};
  if (!(other->has_receiver || other->kind == NodeKind::FieldAccess)) return std::nullopt;
  if (token_of(recv) != cn->var_text) return std::nullopt;
  if (other->kind == NodeKind::MethodCall &&
      (other->name == "equals" || other->name == "equalsIgnoreCase" ||
       other->name == "isEmpty" || other->name == "length" || other->name == "size"))
    return std::nullopt;
  const auto type = declared_type_of(other, symbols);
  if (type && *type != "boolean" && *type != "Boolean") return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, cn->var_text, cn->null_node)}},
                     {cn->null_node.id, cn->other.id}};
}

std::optional<MatchResult> match_return_constant(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::ReturnStmt || n.child_count() != 1) return std::nullopt;
  const NodeRef value = n.child(0);
  if (!is_const_literal(value)) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Constant, token_of(value), value)}}, {}};
}

std::optional<MatchResult> match_switch_len_char(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::SwitchStmt) return std::nullopt;
  const NodeRef selector = n.child(0);
  if (selector->kind != NodeKind::MethodCall || selector->name != "length" ||
      !selector->has_receiver)
    return std::nullopt;
  const NodeRef receiver = selector.child(0);
  const NodeRef char_at = find_first(n, [](NodeRef e) {
    return e->kind == NodeKind::MethodCall && e->name == "charAt";
  });
  if (!char_at.valid()) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(receiver), receiver)}},
                     {}};
}

std::optional<MatchResult> match_switch_case(NodeRef n, const SymbolTable& symbols) {
  if (n->kind != NodeKind::SwitchStmt) return std::nullopt;
  const NodeRef selector = n.child(0);
  if (selector->kind != NodeKind::NameRef && selector->kind != NodeKind::FieldAccess)
    return std::nullopt;
  bool enum_like = false;
  if (auto type = declared_type_of(selector, symbols); type && symbols.is_enum_name(*type))
    enum_like = true;
  if (!enum_like) {
    for (std::size_t i = 1; i < n.child_count(); ++i) {
      const NodeRef case_group = n.child(i);
      const std::uint32_t labels = case_group->aux;
      for (std::uint32_t j = 0; j < labels && j < case_group->children.size(); ++j) {
        const NodeRef label = case_group.child(j);
        if (label->kind == NodeKind::NameRef || label->kind == NodeKind::FieldAccess)
          enum_like = true;
      }
    }
  }
  if (!enum_like) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(selector), selector)}},
                     {}};
}

std::optional<MatchResult> match_self_comparison(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::BinaryExpr || !is_equality_op(n->name)) return std::nullopt;
  const NodeRef lhs = n.child(0);
  const NodeRef rhs = n.child(1);
  const bool both_names =
      (lhs->kind == NodeKind::NameRef || lhs->kind == NodeKind::FieldAccess) &&
      (rhs->kind == NodeKind::NameRef || rhs->kind == NodeKind::FieldAccess);
  if (!both_names) return std::nullopt;
  if (lhs.text() != rhs.text()) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(lhs), lhs)}}, {}};
}

std::optional<MatchResult> match_str_starts(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::MethodCall || n->name != "startsWith" || !n->has_receiver ||
      n.child_count() < 2)
    return std::nullopt;
  const NodeRef base = receiver_base(n.child(0));
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(base), base)}}, {}};
}

std::optional<MatchResult> match_str_ends(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::MethodCall || n->name != "endsWith" || !n->has_receiver ||
      n.child_count() < 2)
    return std::nullopt;
  const NodeRef base = receiver_base(n.child(0));
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(base), base)}}, {}};
}

std::optional<MatchResult> match_setter(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::MethodCall || !n->has_receiver || n->is_constructor_call)
    return std::nullopt;
  const std::string& name = n->name;
  if (name.size() <= 3 || name.compare(0, 3, "set") != 0 || !std::isupper(name[3]))
    return std::nullopt;
  if (n.child_count() != 2) return std::nullopt;  // receiver + one argument
  const NodeRef arg = n.child(1);
  if (is_const_literal(arg) || is_null_literal(arg)) return std::nullopt;
  const std::string method_token = token_of(n.child(0)) + "." + name;
  PartsBinding b;
  b.parts.push_back(part(PartRole::Method, method_token, n));
  b.parts.push_back(part(PartRole::Variable, token_of(arg), arg));
  return MatchResult{std::move(b), {}};
}

std::optional<MatchResult> match_constructor_assign(NodeRef n, const SymbolTable& symbols) {
  if (n->kind != NodeKind::Assignment || n->name != "=") return std::nullopt;
  if (n->method == kNoNode) return std::nullopt;
  const AstNode& method = n.ast->nodes[n->method];
  if (!method.is_constructor_decl) return std::nullopt;
  const NodeRef lhs = n.child(0);
  std::string field_name;
  if (lhs->kind == NodeKind::NameRef) {
    field_name = lhs->name;
  } else if (lhs->kind == NodeKind::FieldAccess && lhs.child_count() == 1 &&
             lhs.child(0)->kind == NodeKind::NameRef && lhs.child(0)->name == "this") {
    field_name = lhs->name;
  } else {
    return std::nullopt;
  }
  const std::string cls = enclosing_class_qname(n);
  if (!symbols.fields.count(cls + "." + field_name)) return std::nullopt;
  const NodeRef rhs = n.child(1);
  if (is_const_literal(rhs) || is_null_literal(rhs)) return std::nullopt;
  if (contains_class_literal(rhs)) return std::nullopt;
  // The initialization must not depend on any constructor parameter.
  std::set<std::string> rhs_names;
  collect_name_refs(rhs, rhs_names);
  for (NodeId c : method.children) {
    const AstNode& p = n.ast->nodes[c];
    if (p.kind == NodeKind::Parameter && rhs_names.count(p.name)) return std::nullopt;
  }
  return MatchResult{PartsBinding{{part(PartRole::Field, field_name, lhs)}}, {}};
}

std::optional<MatchResult> match_delta_check(NodeRef n, const SymbolTable&) {
  std::string target;
  NodeRef diff;
  if (n->kind == NodeKind::LocalVarDecl && n.child_count() == 1) {
    target = n->name;
    diff = n.child(0);
  } else if (n->kind == NodeKind::Assignment && n->name == "=") {
    target = token_of(n.child(0));
    diff = n.child(1);
  } else {
    return std::nullopt;
  }
  if (diff->kind != NodeKind::BinaryExpr || diff->name != "-") return std::nullopt;
  const NodeRef a = diff.child(0);
  const NodeRef b = diff.child(1);
  if (!is_variable_like(a) || !is_variable_like(b)) return std::nullopt;
  // A later statement in the same block must compare the difference to zero.
  for (NodeRef sibling : following_siblings(n)) {
    const NodeRef cmp = find_first(sibling, [&](NodeRef e) {
      if (e->kind != NodeKind::BinaryExpr || !is_comparison_op(e->name)) return false;
      const NodeRef l = NodeRef{e.ast, e->children[0]};
      const NodeRef r = NodeRef{e.ast, e->children[1]};
      auto is_target = [&](NodeRef x) {
        return x->kind == NodeKind::NameRef && x->name == target;
      };
      auto is_zero = [](NodeRef x) {
        return x->kind == NodeKind::Literal && x->name == "0";
      };
      return (is_target(l) && is_zero(r)) || (is_target(r) && is_zero(l));
    });
    if (cmp.valid()) {
      PartsBinding binding;
      binding.parts.push_back(part(PartRole::Variable, simple_name_of(a), a));
      binding.parts.push_back(part(PartRole::Variable, simple_name_of(b), b));
      return MatchResult{std::move(binding), {cmp.id}};
    }
  }
  return std::nullopt;
}

std::optional<MatchResult> match_enum_valueof(NodeRef n, const SymbolTable& symbols) {
  if (n->kind != NodeKind::MethodCall || n->name != "valueOf" || !n->has_receiver ||
      n.child_count() != 2)
    return std::nullopt;
  const std::string recv = token_of(n.child(0));
  const std::size_t dot = recv.rfind('.');
  const std::string last = dot == std::string::npos ? recv : recv.substr(dot + 1);
  if (!symbols.is_enum_name(last)) return std::nullopt;
  const NodeRef arg = n.child(1);
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(arg), arg)}}, {}};
}

std::optional<MatchResult> match_iterate_and_check(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::LoopStmt ||
      static_cast<LoopFlavor>(n->flavor) != LoopFlavor::ForEach)
    return std::nullopt;
  const NodeRef loop_var = n.child(0);
  const NodeRef iterable = n.child(1);
  const NodeRef body = n.child(2);
  const std::string var_name = loop_var->name;
  auto reads_loop_var = [&](NodeRef e) {
    if (e->kind == NodeKind::NameRef) return e->name == var_name;
    if ((e->kind == NodeKind::MethodCall || e->kind == NodeKind::FieldAccess) &&
        !e->children.empty()) {
      const NodeRef base = receiver_base(NodeRef{e.ast, e->children[0]});
      return base->kind == NodeKind::NameRef && base->name == var_name;
    }
    return false;
  };
  NodeRef outer;
  const NodeRef eq_node = find_first(body, [&](NodeRef e) {
    auto eq = as_equality(e, /*allow_ignore_case=*/true);
    if (!eq) return false;
    const bool lhs_loop = reads_loop_var(eq->lhs);
    const bool rhs_loop = reads_loop_var(eq->rhs);
    if (lhs_loop == rhs_loop) return false;
    const NodeRef candidate = lhs_loop ? eq->rhs : eq->lhs;
    if (!is_variable_like(candidate) || reads_loop_var(candidate)) return false;
    outer = candidate;
    return true;
  });
  if (!eq_node.valid()) return std::nullopt;
  PartsBinding b;
  b.parts.push_back(part(PartRole::Variable, token_of(outer), outer));
  b.parts.push_back(part(PartRole::Collection, token_of(iterable), iterable));
  return MatchResult{std::move(b), {eq_node.id}};
}

std::optional<MatchResult> match_mod_op(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::BinaryExpr || n->name != "%") return std::nullopt;
  const NodeRef lhs = n.child(0);
  if (!is_variable_like(lhs)) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(lhs), lhs)}}, {}};
}

std::optional<MatchResult> match_override_value_set(NodeRef n, const SymbolTable& symbols) {
  if (n->kind != NodeKind::MethodDecl || n->is_constructor_decl || n->is_abstract)
    return std::nullopt;
  if (n->cls == kNoNode) return std::nullopt;
  const std::string own_cls = enclosing_class_qname(n);
  std::size_t param_count = 0;
  for (NodeId c : n->children)
    if (n.ast->nodes[c].kind == NodeKind::Parameter) ++param_count;
  // Walk the transitive base chain for an abstract method of the same shape.
  std::vector<std::string> work;
  if (auto it = symbols.class_bases.find(own_cls); it != symbols.class_bases.end())
    work = it->second;
  std::set<std::string> seen;
  while (!work.empty()) {
    auto base = symbols.resolve_class_name(work.back());
    work.pop_back();
    if (!base || !seen.insert(*base).second) continue;
    auto mit = symbols.methods.find(*base + "." + n->name);
    if (mit != symbols.methods.end() && mit->second.is_abstract &&
        mit->second.params.size() == param_count)
      return MatchResult{PartsBinding{{part(PartRole::Method, n->name, n)}}, {}};
    if (auto up = symbols.class_bases.find(*base); up != symbols.class_bases.end())
      work.insert(work.end(), up->second.begin(), up->second.end());
  }
  return std::nullopt;
}

std::optional<MatchResult> match_cast_self_comparison(NodeRef n, const SymbolTable&) {
  // Single-expression form: (int) d == d.
  if (n->kind == NodeKind::BinaryExpr && is_equality_op(n->name)) {
    for (int side = 0; side < 2; ++side) {
      const NodeRef cast = n.child(side);
      const NodeRef other = n.child(1 - side);
      if (cast->kind != NodeKind::CastExpr) continue;
      const NodeRef inner = cast.child(0);
      if (!is_variable_like(inner)) continue;
      if (inner.text() != other.text()) continue;
      return MatchResult{PartsBinding{{part(PartRole::Variable, token_of(inner), inner)}}, {}};
    }
    return std::nullopt;
  }
  // Statement-pair form: T id = (T) d; ... if (id == d).
  if (n->kind != NodeKind::LocalVarDecl || n.child_count() != 1) return std::nullopt;
  const NodeRef init = n.child(0);
  if (init->kind != NodeKind::CastExpr) return std::nullopt;
  const NodeRef original = init.child(0);
  if (!is_variable_like(original)) return std::nullopt;
  const std::string target = n->name;
  const std::string original_text = token_of(original);
  for (NodeRef sibling : following_siblings(n)) {
    const NodeRef cmp = find_first(sibling, [&](NodeRef e) {
      if (e->kind != NodeKind::BinaryExpr || !is_equality_op(e->name)) return false;
      const std::string l = std::string(NodeRef{e.ast, e->children[0]}.text());
      const std::string r = std::string(NodeRef{e.ast, e->children[1]}.text());
      return (l == target && r == original_text) || (r == target && l == original_text);
    });
    if (cmp.valid())
      return MatchResult{
          PartsBinding{{part(PartRole::Variable, original_text, original)}}, {cmp.id}};
  }
  return std::nullopt;
}

std::optional<MatchResult> match_index_loop_find(NodeRef n, const SymbolTable&) {
  if (n->kind != NodeKind::LoopStmt || static_cast<LoopFlavor>(n->flavor) != LoopFlavor::For)
    return std::nullopt;
  const std::uint32_t n_init = n->aux >> 16;
  const bool has_cond = (n->aux >> 15) & 1;
  if (n_init != 1 || !has_cond || n.child_count() < 3) return std::nullopt;
  const NodeRef init = n.child(0);
  if (init->kind != NodeKind::LocalVarDecl) return std::nullopt;
  const std::string index = init->name;
  const NodeRef cond = n.child(1);
  const NodeRef body = n.child(n.child_count() - 1);

  NodeRef collection, needle, return_index;
  const NodeRef eq_node = find_first(body, [&](NodeRef e) {
    auto eq = as_equality(e, /*allow_ignore_case=*/true);
    if (!eq) return false;
    for (int side = 0; side < 2; ++side) {
      const NodeRef elem = side == 0 ? eq->lhs : eq->rhs;
      const NodeRef other = side == 0 ? eq->rhs : eq->lhs;
      if (elem->kind != NodeKind::ArrayAccess) continue;
      const NodeRef idx = NodeRef{elem.ast, elem->children[1]};
      if (idx->kind != NodeKind::NameRef || idx->name != index) continue;
      if (!is_variable_like(other)) continue;
      collection = NodeRef{elem.ast, elem->children[0]};
      needle = other;
      return true;
    }
    return false;
  });
  if (!eq_node.valid()) return std::nullopt;
  return_index = find_first(body, [&](NodeRef e) {
    return e->kind == NodeKind::ReturnStmt && e.child_count() == 1 &&
           e.child(0)->kind == NodeKind::NameRef && e.child(0)->name == index;
  });
  if (!return_index.valid()) return std::nullopt;
  NodeRef sentinel;
  for (NodeRef sibling : following_siblings(n)) {
    if (sibling->kind == NodeKind::ReturnStmt && sibling.child_count() == 1 &&
        is_const_literal(sibling.child(0))) {
      sentinel = sibling;
      break;
    }
  }
  if (!sentinel.valid()) return std::nullopt;
  PartsBinding b;
  b.parts.push_back(part(PartRole::Collection, token_of(collection), collection));
  b.parts.push_back(part(PartRole::Variable, token_of(needle), needle));
  return MatchResult{std::move(b), {cond.id, eq_node.id, return_index.id, sentinel.id}};
}

std::optional<MatchResult> match_assign_class_call(NodeRef n, const SymbolTable&) {
  NodeRef lhs, rhs;
  std::string lhs_token;
  if (n->kind == NodeKind::Assignment && n->name == "=") {
    lhs = n.child(0);
    rhs = n.child(1);
    if (!is_variable_like(lhs)) return std::nullopt;
    lhs_token = token_of(lhs);
  } else if ((n->kind == NodeKind::LocalVarDecl || n->kind == NodeKind::FieldDecl) &&
             n.child_count() == 1) {
    rhs = n.child(0);
    lhs_token = n->name;
    lhs = n;
  } else {
    return std::nullopt;
  }
  if (rhs->kind != NodeKind::MethodCall || !contains_class_literal(rhs)) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Variable, lhs_token, lhs)}}, {}};
}

std::optional<MatchResult> match_polymorphic_method(NodeRef n, const SymbolTable& symbols) {
  if (n->kind != NodeKind::MethodCall || n->is_constructor_call) return std::nullopt;
  auto callee = resolve_callee(n, symbols);
  if (!callee) return std::nullopt;
  auto it = symbols.methods.find(*callee);
  if (it == symbols.methods.end() || !it->second.is_abstract) return std::nullopt;
  return MatchResult{PartsBinding{{part(PartRole::Method, *callee, n)}}, {}};
}

// ---- dispatch and filtering -------------------------------------------

const std::map<std::string, MatchFn>& matcher_table() {
  static const std::map<std::string, MatchFn> table = {
      {"boolean property", match_boolean_property},
      {"binary comparison", match_binary_comparison},
      {"constant argument", match_constant_argument},
      {"null check", match_null_check},
      {"assign constant", match_assign_constant},
      {"binary flag check", match_binary_flag_check},
      {"if chain", match_if_chain},
      {"equals or chain", match_equals_or_chain},
      {"polymorphic method", match_polymorphic_method},
      {"null-empty check", match_null_empty_check},
      {"null-zero check", match_null_zero_check},
      {"return constant", match_return_constant},
      {"switch-len char", match_switch_len_char},
      {"self comparison", match_self_comparison},
      {"str starts", match_str_starts},
      {"null-boolean check", match_null_boolean_check},
      {"setter", match_setter},
      {"constructor assign", match_constructor_assign},
      {"delta check", match_delta_check},
      {"enum valueOf", match_enum_valueof},
      {"iterate-and-check literal", match_iterate_and_check},
      {"mod op", match_mod_op},
      {"str ends", match_str_ends},
      {"switch case", match_switch_case},
      {"override value set", match_override_value_set},
      {"cast self-comparison", match_cast_self_comparison},
      {"index loop find", match_index_loop_find},
      {"assign class call", match_assign_class_call},
      {"if-return chain", match_if_return_chain},
  };
  return table;
}

}  // namespace

int pattern_precedence(const std::string& name) {
  static const std::map<std::string, int> rank = {
      {"null-empty check", 0},
      {"null-zero check", 1},
      {"null-boolean check", 2},
      {"binary flag check", 3},
      {"self comparison", 4},
      {"cast self-comparison", 5},
      {"delta check", 6},
      {"null check", 7},
      {"equals or chain", 8},
      {"if-return chain", 9},
      {"if chain", 10},
      {"switch-len char", 11},
      {"switch case", 12},
      {"index loop find", 13},
      {"iterate-and-check literal", 14},
      {"enum valueOf", 15},
      {"str starts", 16},
      {"str ends", 17},
      {"setter", 18},
      {"boolean property", 19},
      {"override value set", 20},
      {"assign constant", 21},
      {"assign class call", 22},
      {"constructor assign", 23},
      {"return constant", 24},
      {"mod op", 25},
      {"binary comparison", 26},
      {"constant argument", 27},
      {"polymorphic method", 28},
      {"properties file", 29},
  };
  const auto it = rank.find(name);
  return it == rank.end() ? 100 : it->second;
}

std::optional<RawMatch> match_raw(NodeRef node, const CipPattern& pattern,
                                  const SymbolTable& symbols) {
  const auto& table = matcher_table();
  const auto it = table.find(pattern.name);
  if (it == table.end()) return std::nullopt;
  auto result = it->second(node, symbols);
  if (!result) return std::nullopt;
  return RawMatch{&pattern, node, std::move(result->binding), std::move(result->consumed)};
}

std::optional<PartsBinding> match_statement(NodeRef node, const CipPattern& pattern,
                                            const SymbolTable& symbols) {
  auto raw = match_raw(node, pattern, symbols);
  if (!raw) return std::nullopt;
  return std::move(raw->binding);
}

std::vector<PatternInstance> match_all(const SourceCorpus& corpus,
                                       const std::vector<const CipPattern*>& patterns,
                                       const SymbolTable& symbols) {
  std::vector<RawMatch> raws;
  for (const Ast& ast : corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const NodeRef node{&ast, id};
      for (const CipPattern* p : patterns) {
        if (p->statement_types.size() == 1 &&
            p->statement_types[0] == StatementType::FileLine)
          continue;  // matched on text files, not the AST
        if (auto raw = match_raw(node, *p, symbols)) raws.push_back(std::move(*raw));
      }
    }
  }

  // Subsumption: a chain or compound match consumes its constituents.
  std::set<std::pair<const Ast*, NodeId>> consumed;
  for (const RawMatch& m : raws)
    for (NodeId c : m.consumed) consumed.insert({m.node.ast, c});

  // Precedence: one pattern per node, most specific wins.
  std::map<std::pair<const Ast*, NodeId>, const RawMatch*> winner;
  for (const RawMatch& m : raws) {
    if (consumed.count({m.node.ast, m.node.id})) continue;
    const auto key = std::make_pair(m.node.ast, m.node.id);
    const auto it = winner.find(key);
    if (it == winner.end() ||
        pattern_precedence(m.pattern->name) < pattern_precedence(it->second->pattern->name))
      winner[key] = &m;
  }

  std::vector<PatternInstance> out;
  out.reserve(winner.size());
  for (const auto& [key, m] : winner) {
    (void)key;
    PatternInstance inst;
    inst.pattern = m->pattern->name;
    inst.node = m->node;
    inst.loc = m->node.loc();
    inst.binding = m->binding;
    inst.statement_text = std::string(m->node.text());
    out.push_back(std::move(inst));
  }
  std::sort(out.begin(), out.end(), [](const PatternInstance& a, const PatternInstance& b) {
    if (a.loc.file_id != b.loc.file_id) return a.loc.file_id < b.loc.file_id;
    if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
    if (a.pattern != b.pattern) return a.pattern < b.pattern;
    return a.loc.column < b.loc.column;
  });
  return out;
}

std::vector<PatternInstance> match_all(const SourceCorpus& corpus, const SymbolTable& symbols) {
  std::vector<const CipPattern*> all;
  for (const CipPattern& p : builtin_catalog()) all.push_back(&p);
  return match_all(corpus, all, symbols);
}

std::vector<PropertiesInstance> match_properties_file(const std::string& path,
                                                      std::string_view content) {
  std::vector<PropertiesInstance> out;
  std::uint32_t line_no = 0;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
      s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    std::string_view line = content.substr(pos, nl == std::string_view::npos ? content.size() - pos
                                                                             : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == '!') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    out.push_back(PropertiesInstance{path, line_no, std::string(key), std::string(value)});
  }
  return out;
}

}  // namespace cipscan
