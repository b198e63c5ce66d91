#include "cipscan/trace.hpp"

#include <functional>
#include <set>

#include "cipscan/catalog.hpp"

namespace cipscan {

namespace {

NodeRef stmt_of(NodeRef node) {
  if (node->stmt == kNoNode) return node;
  return NodeRef{node.ast, node->stmt};
}

void collect_calls(NodeRef root, std::vector<NodeRef>& out) {
  if (root->kind == NodeKind::MethodCall) out.push_back(root);
  for (std::size_t i = 0; i < root.child_count(); ++i) collect_calls(root.child(i), out);
}

// First statement in the method body whose subtree matches the pattern,
// in source order.
NodeRef find_matching_statement(NodeRef method_decl, const CipPattern& pattern,
                                const SymbolTable& symbols) {
  NodeRef found;
  std::function<bool(NodeRef)> walk = [&](NodeRef n) {
    if (match_statement(n, pattern, symbols)) {
      found = stmt_of(n);
      return true;
    }
    for (std::size_t i = 0; i < n.child_count(); ++i)
      if (walk(n.child(i))) return true;
    return false;
  };
  for (std::size_t i = 0; i < method_decl.child_count(); ++i) {
    const NodeRef child = method_decl.child(i);
    if (child->kind == NodeKind::Block && walk(child)) return found;
  }
  return NodeRef{};
}

}  // namespace

const char* to_string(DataDefKind kind) {
  switch (kind) {
    case DataDefKind::FieldDeclaration: return "field-declaration";
    case DataDefKind::MethodDeclaration: return "method-declaration";
    case DataDefKind::LibraryCallSite: return "library-call-site";
    case DataDefKind::LocalAssignment: return "local-assignment";
    case DataDefKind::LiteralOccurrence: return "literal-occurrence";
    case DataDefKind::ParameterDefinition: return "parameter-definition";
  }
  return "unknown";
}

const char* to_string(Provenance provenance) {
  return provenance == Provenance::Manual ? "manual" : "detector";
}

NodeRef descend_enforcing(NodeRef candidate, const CipPattern& pattern,
                          const SourceCorpus& corpus, const SymbolTable& symbols) {
  (void)corpus;
  std::set<std::string> visited;
  NodeRef current = stmt_of(candidate);
  while (true) {
    std::vector<NodeRef> calls;
    collect_calls(current, calls);
    if (calls.empty()) return current;
    NodeRef next;
    for (NodeRef call : calls) {
      auto callee = resolve_callee(call, symbols);
      if (!callee) continue;  // library boundary
      if (visited.count(*callee)) continue;
      visited.insert(*callee);
      const auto it = symbols.methods.find(*callee);
      if (it == symbols.methods.end() || it->second.is_abstract) continue;
      const NodeRef hit = find_matching_statement(it->second.decl, pattern, symbols);
      if (hit.valid() && !(hit == current)) {
        next = hit;
        break;
      }
    }
    if (!next.valid()) return current;
    current = next;
  }
}

namespace {

// Data-definition resolution for one bound operand node.
DataDefinition resolve_operand(NodeRef operand, const SymbolTable& symbols) {
  DataDefinition def;
  def.node = operand;

  // Peel casts.
  while (operand->kind == NodeKind::CastExpr) operand = operand.child(0);

  // Literals (possibly signed).
  if (operand->kind == NodeKind::Literal ||
      (operand->kind == NodeKind::UnaryExpr && operand.child_count() == 1 &&
       operand.child(0)->kind == NodeKind::Literal)) {
    def.kind = DataDefKind::LiteralOccurrence;
    def.node = operand;
    def.symbol = std::string(operand.text());
    return def;
  }

  if (operand->kind == NodeKind::MethodCall && !operand->is_constructor_call) {
    auto callee = resolve_callee(operand, symbols);
    if (!callee) {
      // Library-sourced value: trace the call site.
      def.kind = DataDefKind::LibraryCallSite;
      def.node = stmt_of(operand);
      def.symbol = operand->name;
      return def;
    }
    const MethodInfo& m = symbols.methods.at(*callee);
    const auto getter = symbols.getter_field.find(*callee);
    if (getter != symbols.getter_field.end()) {
      const FieldInfo& f = symbols.fields.at(getter->second);
      def.kind = DataDefKind::FieldDeclaration;
      def.node = f.decl;
      def.symbol = getter->second;
      return def;
    }
    def.kind = DataDefKind::MethodDeclaration;
    def.node = m.decl;
    def.symbol = *callee;
    return def;
  }

  if (operand->kind == NodeKind::NameRef || operand->kind == NodeKind::FieldAccess) {
    // A name may be a local, a parameter, or a field.
    if (operand->kind == NodeKind::NameRef && operand->method != kNoNode) {
      const Ast& ast = *operand.ast;
      NodeRef param, local;
      std::function<void(NodeId)> scan = [&](NodeId id) {
        const AstNode& n = ast.nodes[id];
        if (n.kind == NodeKind::Parameter && n.name == operand->name && !param.valid())
          param = NodeRef{&ast, id};
        if (n.kind == NodeKind::LocalVarDecl && n.name == operand->name && !local.valid())
          local = NodeRef{&ast, id};
        for (NodeId c : n.children) scan(c);
      };
      scan(operand->method);
      if (local.valid()) {
        if (local.child_count() == 1) {
          NodeRef init = local.child(0);
          while (init->kind == NodeKind::CastExpr) init = init.child(0);
          if (init->kind == NodeKind::MethodCall && !init->is_constructor_call &&
              !resolve_callee(init, symbols)) {
            def.kind = DataDefKind::LibraryCallSite;
            def.node = local;
            def.symbol = init->name;
            return def;
          }
        }
        def.kind = DataDefKind::LocalAssignment;
        def.node = local;
        def.symbol = operand->name;
        return def;
      }
      if (param.valid() && !resolve_field(operand, symbols)) {
        def.kind = DataDefKind::ParameterDefinition;
        def.node = param;
        def.symbol = operand->name;
        return def;
      }
    }
    if (auto field = resolve_field(operand, symbols)) {
      const FieldInfo& f = symbols.fields.at(*field);
      def.kind = DataDefKind::FieldDeclaration;
      def.node = f.decl;
      def.symbol = *field;
      return def;
    }
  }

  def.kind = DataDefKind::LiteralOccurrence;
  def.symbol = std::string(operand.text());
  def.unresolved = true;
  return def;
}

}  // namespace

std::vector<DataDefinition> resolve_data_definitions(const PatternInstance& enforcing,
                                                     const SymbolTable& symbols,
                                                     const SourceCorpus& corpus) {
  (void)corpus;
  std::vector<DataDefinition> out;
  for (const BoundPart& partref : enforcing.binding.parts) {
    if (partref.role == PartRole::Operator) continue;
    if (!partref.node.valid()) {
      DataDefinition def;
      def.kind = DataDefKind::LiteralOccurrence;
      def.symbol = partref.token;
      def.unresolved = true;
      out.push_back(std::move(def));
      continue;
    }
    out.push_back(resolve_operand(partref.node, symbols));
  }
  return out;
}

LinkRecord to_record(const TraceLink& link, const SourceCorpus& corpus) {
  LinkRecord rec;
  rec.constraint_id = link.constraint_id;
  rec.system = link.system;
  const CorpusFile* f = corpus.file(link.enforcing.loc.file_id);
  rec.file = f ? f->path : "";
  if (rec.system.empty() && f) rec.system = f->system;
  rec.line = link.enforcing.loc.line;
  rec.column = link.enforcing.loc.column;
  rec.pattern = link.enforcing.pattern;
  rec.parts = link.enforcing.binding.tokens();
  rec.text = link.enforcing.statement_text;
  for (const DataDefinition& d : link.definitions) {
    LinkDefinition out;
    out.kind = to_string(d.kind);
    if (d.node.valid()) {
      const CorpusFile* df = corpus.file(d.node.ast->file_id);
      out.file = df ? df->path : "";
      out.line = d.node->loc.line;
    }
    out.symbol = d.symbol;
    out.unresolved = d.unresolved;
    rec.definitions.push_back(std::move(out));
  }
  rec.provenance = to_string(link.provenance);
  return rec;
}

std::optional<TraceLink> assemble_trace(const std::string& constraint_id,
                                        const PatternInstance& enforcing,
                                        std::vector<DataDefinition> definitions,
                                        Provenance provenance, TraceError* error) {
  const CipPattern* pattern = find_pattern(enforcing.pattern);
  if (!pattern) {
    if (error) error->message = "unknown pattern: " + enforcing.pattern;
    return std::nullopt;
  }
  std::size_t expected = 0;
  for (const PartSpec& p : pattern->parts)
    if (p.role != PartRole::Operator) ++expected;
  if (definitions.size() != expected) {
    if (error)
      error->message = "definition count mismatch: pattern " + pattern->name + " has " +
                       std::to_string(expected) + " data parts, got " +
                       std::to_string(definitions.size());
    return std::nullopt;
  }
  TraceLink link;
  link.constraint_id = constraint_id;
  link.enforcing = enforcing;
  link.definitions = std::move(definitions);
  link.provenance = provenance;
  return link;
}

}  // namespace cipscan
