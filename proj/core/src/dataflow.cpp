#include "cipscan/dataflow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace cipscan {

namespace {

std::string method_qname_of(NodeRef node, const SourceCorpus&) {
  if (node->method == kNoNode) return "";
  const AstNode& m = node.ast->nodes[node->method];
  const std::string cls = enclosing_class_qname(NodeRef{node.ast, node->method});
  const std::string simple = m.is_constructor_decl ? "<init>" : m.name;
  return cls.empty() ? simple : cls + "." + simple;
}

std::string decl_qname(NodeRef decl) {
  const std::string cls = enclosing_class_qname(decl);
  const std::string simple = decl->is_constructor_decl ? "<init>" : decl->name;
  return cls.empty() ? simple : cls + "." + simple;
}

// A value read inside an expression, resolved to the defining scope.
struct ReadRef {
  enum class Kind { Local, Field, Return, Literal } kind;
  std::string method;  // Local: owning method qname
  std::string name;    // Local: variable; Field/Return: qualified name
  NodeRef literal;     // Literal: the occurrence itself
};

struct MethodScope {
  std::set<std::string> locals;  // parameters and declared locals
};

}  // namespace

const char* to_string(DefKind kind) {
  switch (kind) {
    case DefKind::FieldDecl: return "field-decl";
    case DefKind::MethodDecl: return "method-decl";
    case DefKind::Parameter: return "parameter";
    case DefKind::Assignment: return "assignment";
    case DefKind::LiteralOccurrence: return "literal-occurrence";
  }
  return "unknown";
}

const char* to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::DirectRead: return "direct-read";
    case EdgeLabel::GetterRead: return "getter-read";
    case EdgeLabel::LocalPropagation: return "local-propagation";
    case EdgeLabel::ParameterPassing: return "parameter-passing";
    case EdgeLabel::ReturnPropagation: return "return-propagation";
  }
  return "unknown";
}

std::vector<const CallEdge*> CallGraph::edges_from(const std::string& caller) const {
  std::vector<const CallEdge*> out;
  for (const CallEdge& e : edges)
    if (e.caller == caller) out.push_back(&e);
  return out;
}

CallGraph build_call_graph(const SourceCorpus& corpus, const SymbolTable& symbols) {
  CallGraph graph;
  std::set<std::string> nodes;
  for (const auto& [qname, info] : symbols.methods) {
    (void)info;
    nodes.insert(qname);
  }
  for (const Ast& ast : corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const NodeRef node{&ast, id};
      if (node->kind != NodeKind::MethodCall) continue;
      if (node->method == kNoNode) continue;  // field initializers etc.
      const std::string caller = method_qname_of(node, corpus);
      auto callee = resolve_callee(node, symbols);
      if (!callee) {
        ++graph.unresolved_calls;
        continue;
      }
      const MethodInfo& target = symbols.methods.at(*callee);
      if (target.is_abstract) {
        for (const MethodInfo* ov : symbols.overrides_of(target)) {
          graph.edges.push_back(CallEdge{caller, ov->cls + "." + ov->name, node,
                                         CallResolution::HierarchyApproximate});
        }
      } else {
        graph.edges.push_back(CallEdge{caller, *callee, node, CallResolution::Static});
        for (const MethodInfo* ov : symbols.overrides_of(target)) {
          graph.edges.push_back(CallEdge{caller, ov->cls + "." + ov->name, node,
                                         CallResolution::HierarchyApproximate});
        }
      }
    }
  }
  graph.nodes.assign(nodes.begin(), nodes.end());
  std::sort(graph.edges.begin(), graph.edges.end(), [](const CallEdge& a, const CallEdge& b) {
    if (a.call_site.ast->file_id != b.call_site.ast->file_id)
      return a.call_site.ast->file_id < b.call_site.ast->file_id;
    if (a.call_site.id != b.call_site.id) return a.call_site.id < b.call_site.id;
    return a.callee < b.callee;
  });
  return graph;
}

namespace {

class GraphBuilder {
 public:
  GraphBuilder(const SourceCorpus& corpus, const SymbolTable& symbols)
      : corpus_(corpus), symbols_(symbols) {}

  DefUseGraph build() {
    index_scopes();
    register_defs();
    for (const Ast& ast : corpus_.asts) {
      for (NodeId id = 0; id < ast.nodes.size(); ++id) {
        const NodeRef node{&ast, id};
        process_node(node);
      }
    }
    link_decls_to_writes();
    finish();
    return std::move(graph_);
  }

  // A declaration reaches the statements that (re)define it, so seeding a
  // detector with a field declaration surfaces assignment-shaped patterns.
  void link_decls_to_writes() {
    for (const auto& [qname, defs] : field_defs_) {
      (void)qname;
      std::uint32_t decl = UINT32_MAX;
      for (std::uint32_t d : defs)
        if (graph_.defs[d].kind == DefKind::FieldDecl) decl = d;
      if (decl == UINT32_MAX) continue;
      for (std::uint32_t d : defs) {
        if (d == decl) continue;
        const NodeRef site = graph_.defs[d].node;
        if (site->kind != NodeKind::Assignment) continue;
        add_use(decl, stmt_of(site), EdgeLabel::LocalPropagation, 1);
      }
    }
    for (const auto& [key, defs] : local_defs_) {
      (void)key;
      std::uint32_t decl = UINT32_MAX;
      for (std::uint32_t d : defs) {
        const NodeRef node = graph_.defs[d].node;
        if (node->kind == NodeKind::LocalVarDecl || node->kind == NodeKind::Parameter)
          decl = std::min(decl, d);
      }
      if (decl == UINT32_MAX) continue;
      for (std::uint32_t d : defs) {
        if (d == decl) continue;
        const NodeRef site = graph_.defs[d].node;
        if (site->kind != NodeKind::Assignment) continue;
        add_use(decl, stmt_of(site), EdgeLabel::LocalPropagation, 0);
      }
    }
  }

 private:
  // ---- def registration ---------------------------------------------------

  std::uint32_t add_def(DefKind kind, NodeRef node, std::string name) {
    const std::uint32_t id = static_cast<std::uint32_t>(graph_.defs.size());
    graph_.defs.push_back(DefSite{id, kind, node, std::move(name)});
    return id;
  }

  void register_defs() {
    for (const Ast& ast : corpus_.asts) {
      for (NodeId id = 0; id < ast.nodes.size(); ++id) {
        const NodeRef node{&ast, id};
        switch (node->kind) {
          case NodeKind::FieldDecl: {
            const std::string qname = enclosing_class_qname(node) + "." + node->name;
            field_defs_[qname].push_back(add_def(DefKind::FieldDecl, node, qname));
            break;
          }
          case NodeKind::MethodDecl: {
            const std::string qname = decl_qname(node);
            return_defs_[qname] = add_def(DefKind::MethodDecl, node, qname);
            break;
          }
          case NodeKind::Parameter: {
            if (node->method == kNoNode) break;
            const std::string m = method_qname_of(node, corpus_);
            param_defs_[{m, node->name}] = add_def(DefKind::Parameter, node, node->name);
            local_defs_[{m, node->name}].push_back(param_defs_[{m, node->name}]);
            break;
          }
          case NodeKind::LocalVarDecl: {
            if (node->method == kNoNode) break;
            const std::string m = method_qname_of(node, corpus_);
            const std::uint32_t d = add_def(DefKind::Assignment, node, node->name);
            local_defs_[{m, node->name}].push_back(d);
            break;
          }
          case NodeKind::Assignment: {
            const std::uint32_t d = add_def(DefKind::Assignment, node, assign_target_name(node));
            assign_defs_[{node.ast, node.id}] = d;
            const auto target = resolve_assign_target(node);
            if (target.kind == ReadRef::Kind::Local && node->method != kNoNode) {
              local_defs_[{target.method, target.name}].push_back(d);
            } else if (target.kind == ReadRef::Kind::Field) {
              field_defs_[target.name].push_back(d);
              graph_.defs[d].name = target.name;
            }
            break;
          }
          case NodeKind::Literal: {
            if (static_cast<LiteralKind>(node->flavor) == LiteralKind::Null) break;
            const std::uint32_t d = add_def(DefKind::LiteralOccurrence, node, node->name);
            literal_defs_[{node.ast, node.id}] = d;
            literal_groups_[node->name].push_back(d);
            break;
          }
          default:
            break;
        }
      }
    }
  }

  std::string assign_target_name(NodeRef assign) {
    const NodeRef lhs = assign.child(0);
    if (lhs->kind == NodeKind::NameRef) return lhs->name;
    if (lhs->kind == NodeKind::FieldAccess) return lhs->name;
    if (lhs->kind == NodeKind::ArrayAccess) {
      NodeRef base = lhs.child(0);
      while (base->kind == NodeKind::ArrayAccess) base = base.child(0);
      return std::string(base.text());
    }
    return std::string(lhs.text());
  }

  // Containers are opaque: writing a[i] defines a.
  ReadRef resolve_assign_target(NodeRef assign) {
    NodeRef lhs = assign.child(0);
    while (lhs->kind == NodeKind::ArrayAccess) lhs = lhs.child(0);
    return resolve_value(lhs);
  }

  void index_scopes() {
    for (const Ast& ast : corpus_.asts) {
      for (NodeId id = 0; id < ast.nodes.size(); ++id) {
        const AstNode& n = ast.nodes[id];
        if ((n.kind == NodeKind::Parameter || n.kind == NodeKind::LocalVarDecl) &&
            n.method != kNoNode) {
          const std::string m = method_qname_of(NodeRef{&ast, id}, corpus_);
          scopes_[m].locals.insert(n.name);
        }
      }
    }
  }

  // ---- read resolution ------------------------------------------------

  ReadRef resolve_value(NodeRef expr) {
    switch (expr->kind) {
      case NodeKind::NameRef: {
        const std::string m = method_qname_of(expr, corpus_);
        if (!m.empty()) {
          auto it = scopes_.find(m);
          if (it != scopes_.end() && it->second.locals.count(expr->name))
            return ReadRef{ReadRef::Kind::Local, m, expr->name, {}};
        }
        if (auto field = resolve_field(expr, symbols_))
          return ReadRef{ReadRef::Kind::Field, "", *field, {}};
        return ReadRef{ReadRef::Kind::Local, m, expr->name, {}};  // unresolved name
      }
      case NodeKind::FieldAccess: {
        if (auto field = resolve_field(expr, symbols_))
          return ReadRef{ReadRef::Kind::Field, "", *field, {}};
        return ReadRef{ReadRef::Kind::Local, "", std::string(expr.text()), {}};
      }
      case NodeKind::MethodCall: {
        if (!expr->is_constructor_call) {
          if (auto callee = resolve_callee(expr, symbols_))
            return ReadRef{ReadRef::Kind::Return, "", *callee, {}};
        }
        return ReadRef{ReadRef::Kind::Local, "", "", {}};
      }
      case NodeKind::Literal:
        return ReadRef{ReadRef::Kind::Literal, "", "", expr};
      case NodeKind::CastExpr:
      case NodeKind::ArrayAccess:
        return resolve_value(expr.child(0));
      default:
        return ReadRef{ReadRef::Kind::Local, "", "", {}};
    }
  }

  // Definition sites a read draws from.
  std::vector<std::uint32_t> defs_for(const ReadRef& ref) {
    switch (ref.kind) {
      case ReadRef::Kind::Local: {
        if (ref.name.empty()) return {};
        auto it = local_defs_.find({ref.method, ref.name});
        return it == local_defs_.end() ? std::vector<std::uint32_t>{} : it->second;
      }
      case ReadRef::Kind::Field: {
        auto it = field_defs_.find(ref.name);
        return it == field_defs_.end() ? std::vector<std::uint32_t>{} : it->second;
      }
      case ReadRef::Kind::Return: {
        auto it = return_defs_.find(ref.name);
        if (it == return_defs_.end()) return {};
        std::vector<std::uint32_t> out{it->second};
        // A read of a getter's result is a read of the backing field.
        auto gf = symbols_.getter_field.find(ref.name);
        if (gf != symbols_.getter_field.end()) {
          auto fit = field_defs_.find(gf->second);
          if (fit != field_defs_.end())
            out.insert(out.end(), fit->second.begin(), fit->second.end());
        }
        return out;
      }
      case ReadRef::Kind::Literal: {
        auto it = literal_defs_.find({ref.literal.ast, ref.literal.id});
        return it == literal_defs_.end() ? std::vector<std::uint32_t>{}
                                         : std::vector<std::uint32_t>{it->second};
      }
    }
    return {};
  }

  // All value reads inside a subtree (assignment targets excluded).
  void collect_reads(NodeRef expr, std::vector<ReadRef>& out) {
    switch (expr->kind) {
      case NodeKind::NameRef:
        out.push_back(resolve_value(expr));
        return;
      case NodeKind::FieldAccess: {
        out.push_back(resolve_value(expr));
        // The receiver chain is also read.
        collect_reads(expr.child(0), out);
        return;
      }
      case NodeKind::Literal:
        out.push_back(resolve_value(expr));
        return;
      case NodeKind::MethodCall: {
        if (!expr->is_constructor_call) out.push_back(resolve_value(expr));
        for (std::size_t i = 0; i < expr.child_count(); ++i) collect_reads(expr.child(i), out);
        return;
      }
      case NodeKind::Assignment: {
        // Compound operators read the target too.
        if (expr->name != "=") collect_reads(expr.child(0), out);
        for (std::size_t i = 1; i < expr.child_count(); ++i) collect_reads(expr.child(i), out);
        // Writing a[i] reads i (and a as the container base).
        NodeRef lhs = expr.child(0);
        while (lhs->kind == NodeKind::ArrayAccess) {
          collect_reads(lhs.child(1), out);
          lhs = lhs.child(0);
        }
        return;
      }
      default:
        for (std::size_t i = 0; i < expr.child_count(); ++i) collect_reads(expr.child(i), out);
        return;
    }
  }

  // ---- edges ---------------------------------------------------------

  NodeRef stmt_of(NodeRef node) {
    if (node->stmt == kNoNode) return node;
    return NodeRef{node.ast, node->stmt};
  }

  int cost_to(std::uint32_t def, NodeRef use_site) {
    const DefSite& d = graph_.defs[def];
    if (d.kind == DefKind::LiteralOccurrence) {
      return d.node->method == use_site->method && d.node.ast == use_site.ast ? 0 : 1;
    }
    if (d.kind == DefKind::Parameter || d.kind == DefKind::Assignment) {
      return d.node->method != kNoNode && d.node.ast == use_site.ast &&
                     d.node->method == use_site->method
                 ? 0
                 : 1;
    }
    return 1;  // field declarations and method results cross scopes
  }

  void add_use(std::uint32_t def, NodeRef stmt, EdgeLabel label, int cost) {
    graph_.uses.push_back(UseEdge{def, stmt, label, cost});
  }
  void add_flow(std::uint32_t from, std::uint32_t to, EdgeLabel label, int cost) {
    graph_.flows.push_back(FlowEdge{from, to, label, cost});
  }

  void process_node(NodeRef node) {
    switch (node->kind) {
      case NodeKind::NameRef:
      case NodeKind::FieldAccess: {
        // Skip pure-write targets of simple assignments.
        const NodeRef parent = node.parent();
        if (parent.valid() && parent->kind == NodeKind::Assignment &&
            parent->name == "=" && parent->children[0] == node.id)
          return;
        // Receivers inside a FieldAccess chain are collected at the chain head.
        if (parent.valid() && parent->kind == NodeKind::FieldAccess) return;
        const ReadRef ref = resolve_value(node);
        if (ref.kind == ReadRef::Kind::Return) return;  // handled at the call node
        emit_read(ref, node);
        return;
      }
      case NodeKind::MethodCall: {
        handle_call(node);
        return;
      }
      case NodeKind::Literal: {
        if (static_cast<LiteralKind>(node->flavor) == LiteralKind::Null) return;
        emit_read(resolve_value(node), node);
        return;
      }
      case NodeKind::Assignment: {
        handle_assignment(node);
        return;
      }
      case NodeKind::LocalVarDecl: {
        if (node.child_count() == 1 && node->method != kNoNode) {
          const std::string m = method_qname_of(node, corpus_);
          std::vector<ReadRef> reads;
          collect_reads(node.child(0), reads);
          const auto& targets = local_defs_[{m, node->name}];
          for (const ReadRef& r : reads)
            for (std::uint32_t src : defs_for(r))
              for (std::uint32_t t : targets)
                if (graph_.defs[t].node == node)
                  add_flow(src, t, EdgeLabel::LocalPropagation, cost_to(src, node));
        }
        return;
      }
      case NodeKind::ReturnStmt: {
        if (node.child_count() != 1 || node->method == kNoNode) return;
        const std::string m = method_qname_of(node, corpus_);
        auto it = return_defs_.find(m);
        if (it == return_defs_.end()) return;
        std::vector<ReadRef> reads;
        collect_reads(node.child(0), reads);
        for (const ReadRef& r : reads)
          for (std::uint32_t src : defs_for(r))
            add_flow(src, it->second, EdgeLabel::LocalPropagation, cost_to(src, node));
        return;
      }
      default:
        return;
    }
  }

  void emit_read(const ReadRef& ref, NodeRef site) {
    const NodeRef stmt = stmt_of(site);
    for (std::uint32_t def : defs_for(ref)) {
      const DefSite& d = graph_.defs[def];
      EdgeLabel label = EdgeLabel::DirectRead;
      if (d.kind == DefKind::MethodDecl) label = EdgeLabel::ReturnPropagation;
      add_use(def, stmt, label, cost_to(def, stmt));
    }
  }

  void handle_call(NodeRef call) {
    const NodeRef stmt = stmt_of(call);
    // Reading the call result.
    if (!call->is_constructor_call) {
      if (auto callee = resolve_callee(call, symbols_)) {
        auto rit = return_defs_.find(*callee);
        if (rit != return_defs_.end())
          add_use(rit->second, stmt, EdgeLabel::ReturnPropagation, 1);
        auto gf = symbols_.getter_field.find(*callee);
        if (gf != symbols_.getter_field.end()) {
          auto fit = field_defs_.find(gf->second);
          if (fit != field_defs_.end())
            for (std::uint32_t fdef : fit->second)
              add_use(fdef, stmt, EdgeLabel::GetterRead, 1);
        }
      }
    }
    // Argument flow into parameters.
    auto callee = resolve_callee(call, symbols_);
    if (!callee) return;
    const auto mit = symbols_.methods.find(*callee);
    if (mit == symbols_.methods.end()) return;
    std::vector<const MethodInfo*> targets{&mit->second};
    if (mit->second.is_abstract) {
      targets.clear();
      for (const MethodInfo* ov : symbols_.overrides_of(mit->second)) targets.push_back(ov);
    }
    const std::size_t first_arg = call->has_receiver ? 1 : 0;
    for (const MethodInfo* target : targets) {
      const std::string target_qname = target->cls + "." + target->name;
      for (std::size_t i = first_arg, k = 0; i < call.child_count(); ++i, ++k) {
        if (k >= target->params.size()) break;
        auto pit = param_defs_.find({target_qname, target->params[k].name});
        if (pit == param_defs_.end()) continue;
        std::vector<ReadRef> reads;
        collect_reads(call.child(i), reads);
        for (const ReadRef& r : reads)
          for (std::uint32_t src : defs_for(r))
            add_flow(src, pit->second, EdgeLabel::ParameterPassing, 1);
      }
    }
  }

  void handle_assignment(NodeRef assign) {
    auto dit = assign_defs_.find({assign.ast, assign.id});
    if (dit == assign_defs_.end()) return;
    const std::uint32_t target = dit->second;
    std::vector<ReadRef> reads;
    for (std::size_t i = 1; i < assign.child_count(); ++i) collect_reads(assign.child(i), reads);
    if (assign->name != "=") collect_reads(assign.child(0), reads);
    for (const ReadRef& r : reads)
      for (std::uint32_t src : defs_for(r))
        add_flow(src, target, EdgeLabel::LocalPropagation, cost_to(src, assign));
  }

  void finish() {
    // Dedup edges, then build the per-def indices.
    std::sort(graph_.uses.begin(), graph_.uses.end(), [](const UseEdge& a, const UseEdge& b) {
      if (a.def != b.def) return a.def < b.def;
      if (a.stmt.ast->file_id != b.stmt.ast->file_id)
        return a.stmt.ast->file_id < b.stmt.ast->file_id;
      if (a.stmt.id != b.stmt.id) return a.stmt.id < b.stmt.id;
      if (a.cost != b.cost) return a.cost < b.cost;
      return static_cast<int>(a.label) < static_cast<int>(b.label);
    });
    graph_.uses.erase(std::unique(graph_.uses.begin(), graph_.uses.end(),
                                  [](const UseEdge& a, const UseEdge& b) {
                                    return a.def == b.def && a.stmt == b.stmt &&
                                           a.label == b.label && a.cost == b.cost;
                                  }),
                      graph_.uses.end());
    std::sort(graph_.flows.begin(), graph_.flows.end(), [](const FlowEdge& a, const FlowEdge& b) {
      if (a.from != b.from) return a.from < b.from;
      if (a.to != b.to) return a.to < b.to;
      if (a.cost != b.cost) return a.cost < b.cost;
      return static_cast<int>(a.label) < static_cast<int>(b.label);
    });
    graph_.flows.erase(std::unique(graph_.flows.begin(), graph_.flows.end(),
                                   [](const FlowEdge& a, const FlowEdge& b) {
                                     return a.from == b.from && a.to == b.to &&
                                            a.label == b.label && a.cost == b.cost;
                                   }),
                       graph_.flows.end());
    for (std::size_t i = 0; i < graph_.uses.size(); ++i)
      graph_.uses_by_def[graph_.uses[i].def].push_back(i);
    for (std::size_t i = 0; i < graph_.flows.size(); ++i)
      graph_.flows_by_def[graph_.flows[i].from].push_back(i);
  }

  const SourceCorpus& corpus_;
  const SymbolTable& symbols_;
  DefUseGraph graph_;
  std::map<std::string, MethodScope> scopes_;
  std::map<std::string, std::vector<std::uint32_t>> field_defs_;
  std::map<std::string, std::uint32_t> return_defs_;
  std::map<std::pair<std::string, std::string>, std::uint32_t> param_defs_;
  std::map<std::pair<std::string, std::string>, std::vector<std::uint32_t>> local_defs_;
  std::map<std::pair<const Ast*, NodeId>, std::uint32_t> assign_defs_;
  std::map<std::pair<const Ast*, NodeId>, std::uint32_t> literal_defs_;
  std::map<std::string, std::vector<std::uint32_t>> literal_groups_;
};

}  // namespace

DefUseGraph build_def_use(const SourceCorpus& corpus, const SymbolTable& symbols) {
  GraphBuilder builder(corpus, symbols);
  return builder.build();
}

std::vector<std::uint32_t> DefUseGraph::defs_at(const SourceCorpus& corpus,
                                                std::string_view path, std::uint32_t line,
                                                std::optional<DefKind> kind) const {
  const Ast* ast = corpus.ast_for_path(path);
  std::vector<std::uint32_t> out;
  if (!ast) return out;
  for (const DefSite& d : defs) {
    if (d.node.ast != ast || d.node->loc.line != line) continue;
    if (kind && d.kind != *kind) continue;
    out.push_back(d.id);
  }
  return out;
}

std::vector<std::uint32_t> DefUseGraph::value_group(std::uint32_t literal_def) const {
  std::vector<std::uint32_t> out;
  if (literal_def >= defs.size()) return out;
  const DefSite& seed = defs[literal_def];
  if (seed.kind != DefKind::LiteralOccurrence) return {literal_def};
  for (const DefSite& d : defs)
    if (d.kind == DefKind::LiteralOccurrence && d.name == seed.name) out.push_back(d.id);
  return out;
}

bool Slice::contains(NodeRef stmt) const {
  return std::binary_search(reached.begin(), reached.end(), stmt);
}

std::optional<Slice> forward_slice(const DefUseGraph& graph, std::uint32_t seed_def, int depth,
                                   SliceError* error) {
  if (seed_def >= graph.defs.size()) {
    if (error) error->message = "unknown seed";
    return std::nullopt;
  }
  Slice slice;
  slice.seed = seed_def;

  std::map<std::uint32_t, int> def_hops;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t d : graph.value_group(seed_def)) {
    def_hops[d] = 0;
    queue.push_back(d);
  }

  std::map<std::pair<const Ast*, NodeId>, int> reached;
  while (!queue.empty()) {
    const std::uint32_t def = queue.front();
    queue.pop_front();
    const int h = def_hops[def];
    if (auto it = graph.uses_by_def.find(def); it != graph.uses_by_def.end()) {
      for (std::size_t ei : it->second) {
        const UseEdge& e = graph.uses[ei];
        const int nh = h + e.cost;
        if (nh > depth) continue;
        const auto key = std::make_pair(e.stmt.ast, e.stmt.id);
        auto rit = reached.find(key);
        if (rit == reached.end() || nh < rit->second) reached[key] = nh;
      }
    }
    if (auto it = graph.flows_by_def.find(def); it != graph.flows_by_def.end()) {
      for (std::size_t ei : it->second) {
        const FlowEdge& e = graph.flows[ei];
        const int nh = h + e.cost;
        if (nh > depth) continue;
        auto dit = def_hops.find(e.to);
        if (dit == def_hops.end() || nh < dit->second) {
          def_hops[e.to] = nh;
          queue.push_back(e.to);
        }
      }
    }
  }

  for (const auto& [key, h] : reached) {
    slice.reached.push_back(NodeRef{key.first, key.second});
    slice.depth_used = std::max(slice.depth_used, h);
  }
  std::sort(slice.reached.begin(), slice.reached.end());
  for (std::size_t i = 0; i < slice.reached.size(); ++i) {
    const auto key = std::make_pair(slice.reached[i].ast, slice.reached[i].id);
    slice.hops[static_cast<std::uint32_t>(i)] = reached.at(key);
  }
  return slice;
}

std::vector<NodeRef> intersect(const std::vector<Slice>& slices) {
  std::vector<NodeRef> out;
  if (slices.empty()) return out;
  out = slices[0].reached;
  for (std::size_t i = 1; i < slices.size(); ++i) {
    std::vector<NodeRef> next;
    std::set_intersection(out.begin(), out.end(), slices[i].reached.begin(),
                          slices[i].reached.end(), std::back_inserter(next));
    out = std::move(next);
  }
  return out;
}

}  // namespace cipscan
