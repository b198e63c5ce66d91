#include "cipscan/symbols.hpp"

#include <algorithm>
#include <functional>

namespace cipscan {

namespace {

std::string strip_array_suffix(std::string type) {
  while (type.ends_with("[]")) type.resize(type.size() - 2);
  return type;
}

std::string last_segment(const std::string& qname) {
  const std::size_t dot = qname.rfind('.');
  return dot == std::string::npos ? qname : qname.substr(dot + 1);
}

// Walks the class-decl chain upward building "Outer.Inner".
std::string class_qname(const Ast& ast, NodeId cls_id) {
  std::vector<std::string> parts;
  NodeId id = cls_id;
  while (id != kNoNode) {
    const AstNode& n = ast.nodes[id];
    if (n.kind == NodeKind::ClassDecl) parts.push_back(n.name);
    id = n.parent;
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!out.empty()) out += ".";
    out += *it;
  }
  return out;
}

}  // namespace

std::string enclosing_class_qname(NodeRef node) {
  NodeId cls = node->kind == NodeKind::ClassDecl ? node.id : node->cls;
  if (cls == kNoNode) return "";
  return class_qname(*node.ast, cls);
}

SymbolTable build_symbols(const SourceCorpus& corpus) {
  SymbolTable table;

  auto note_duplicate = [&table](const std::string& what, const std::string& qname,
                                 const std::string& path) {
    table.diagnostics.push_back("duplicate " + what + " '" + qname + "' ignored in " + path);
  };

  for (const Ast& ast : corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const AstNode& n = ast.nodes[id];
      const NodeRef ref{&ast, id};
      if (n.kind == NodeKind::ClassDecl) {
        const std::string qname = class_qname(ast, id);
        if (!table.classes.emplace(qname, ref).second) {
          note_duplicate("class", qname, ast.path);
          continue;
        }
        table.class_bases[qname] = n.extra_names;
        if (static_cast<ClassFlavor>(n.flavor) == ClassFlavor::Enum) {
          std::vector<std::string> members;
          for (NodeId c : n.children) {
            const AstNode& m = ast.nodes[c];
            if (m.kind == NodeKind::FieldDecl && m.is_enum_constant)
              members.push_back(m.name);
          }
          table.enums[qname] = std::move(members);
        }
      } else if (n.kind == NodeKind::FieldDecl) {
        if (n.cls == kNoNode) continue;
        const std::string cls = class_qname(ast, n.cls);
        const std::string qname = cls + "." + n.name;
        FieldInfo info{ref, cls, n.name, n.type_name};
        if (!table.fields.emplace(qname, std::move(info)).second)
          note_duplicate("field", qname, ast.path);
      } else if (n.kind == NodeKind::MethodDecl) {
        if (n.cls == kNoNode) continue;
        const std::string cls = class_qname(ast, n.cls);
        const std::string simple = n.is_constructor_decl ? "<init>" : n.name;
        const std::string qname = cls + "." + simple;
        MethodInfo info;
        info.decl = ref;
        info.cls = cls;
        info.name = simple;
        info.return_type = n.type_name;
        info.is_abstract = n.is_abstract;
        for (NodeId c : n.children) {
          const AstNode& p = ast.nodes[c];
          if (p.kind == NodeKind::Parameter)
            info.params.push_back(ParamInfo{p.name, p.type_name});
        }
        if (!table.methods.emplace(qname, std::move(info)).second)
          note_duplicate("method", qname, ast.path);
      }
    }
  }

  // Getter detection: the body is exactly one return of one field of the
  // method's own class, with no expression around it.
  for (auto& [qname, m] : table.methods) {
    if (m.is_abstract || !m.params.empty()) continue;
    const AstNode& decl = *m.decl;
    NodeId body = kNoNode;
    for (NodeId c : decl.children)
      if (m.decl.ast->nodes[c].kind == NodeKind::Block) body = c;
    if (body == kNoNode) continue;
    const auto& stmts = m.decl.ast->nodes[body].children;
    if (stmts.size() != 1) continue;
    const AstNode& ret = m.decl.ast->nodes[stmts[0]];
    if (ret.kind != NodeKind::ReturnStmt || ret.children.size() != 1) continue;
    const AstNode& expr = m.decl.ast->nodes[ret.children[0]];
    std::string field_name;
    if (expr.kind == NodeKind::NameRef) {
      field_name = expr.name;
    } else if (expr.kind == NodeKind::FieldAccess && expr.children.size() == 1) {
      const AstNode& recv = m.decl.ast->nodes[expr.children[0]];
      if (recv.kind == NodeKind::NameRef && recv.name == "this") field_name = expr.name;
    }
    if (field_name.empty()) continue;
    const std::string field_qname = m.cls + "." + field_name;
    if (table.fields.count(field_qname)) {
      table.getters.insert(qname);
      table.getter_field[qname] = field_qname;
    }
  }

  return table;
}

bool SymbolTable::is_enum_name(std::string_view name) const {
  for (const auto& [qname, members] : enums) {
    (void)members;
    if (qname == name || last_segment(qname) == name) return true;
  }
  return false;
}

std::optional<std::string> SymbolTable::resolve_class_name(std::string_view name) const {
  std::string key(strip_array_suffix(std::string(name)));
  if (classes.count(key)) return key;
  std::optional<std::string> unique;
  for (const auto& [qname, ref] : classes) {
    (void)ref;
    if (last_segment(qname) == key) {
      if (unique) return std::nullopt;  // ambiguous
      unique = qname;
    }
  }
  return unique;
}

std::vector<std::string> SymbolTable::derived_classes(const std::string& base) const {
  std::vector<std::string> out{base};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [cls, bases] : class_bases) {
      if (std::find(out.begin(), out.end(), cls) != out.end()) continue;
      for (const std::string& b : bases) {
        auto resolved = resolve_class_name(b);
        if (resolved && std::find(out.begin(), out.end(), *resolved) != out.end()) {
          out.push_back(cls);
          changed = true;
          break;
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<const MethodInfo*> SymbolTable::overrides_of(const MethodInfo& base) const {
  std::vector<const MethodInfo*> out;
  const auto derived = derived_classes(base.cls);
  for (const std::string& cls : derived) {
    if (cls == base.cls) continue;
    auto it = methods.find(cls + "." + base.name);
    if (it != methods.end() && it->second.params.size() == base.params.size())
      out.push_back(&it->second);
  }
  return out;
}

std::optional<std::string> declared_type_of_name(NodeRef site, std::string_view name,
                                                 const SymbolTable& symbols) {
  const Ast& ast = *site.ast;
  // Parameters and locals of the enclosing method, scanned syntactically.
  if (site->method != kNoNode) {
    std::optional<std::string> found;
    std::function<void(NodeId)> scan = [&](NodeId id) {
      const AstNode& n = ast.nodes[id];
      if ((n.kind == NodeKind::Parameter || n.kind == NodeKind::LocalVarDecl) &&
          n.name == name && !found)
        found = n.type_name;
      for (NodeId c : n.children) scan(c);
    };
    scan(site->method);
    if (found) return found;
  }
  // Fields of the enclosing class chain.
  NodeId cls = site->cls;
  while (cls != kNoNode) {
    const std::string qname = enclosing_class_qname(NodeRef{&ast, cls}) + "." + std::string(name);
    auto it = symbols.fields.find(qname);
    if (it != symbols.fields.end()) return it->second.type_name;
    cls = ast.nodes[cls].cls;
  }
  // Unique simple name across the corpus.
  std::optional<std::string> unique;
  for (const auto& [qname, f] : symbols.fields) {
    if (f.name == name) {
      if (unique) return std::nullopt;
      unique = f.type_name;
    }
  }
  return unique;
}

std::optional<std::string> declared_type_of(NodeRef expr, const SymbolTable& symbols) {
  switch (expr->kind) {
    case NodeKind::Literal:
      switch (static_cast<LiteralKind>(expr->flavor)) {
        case LiteralKind::Int: return "int";
        case LiteralKind::Long: return "long";
        case LiteralKind::Float: return "float";
        case LiteralKind::Double: return "double";
        case LiteralKind::Char: return "char";
        case LiteralKind::String: return "String";
        case LiteralKind::Bool: return "boolean";
        case LiteralKind::Null: return std::nullopt;
      }
      return std::nullopt;
    case NodeKind::CastExpr:
      return expr->type_name;
    case NodeKind::NameRef:
      if (expr->name == "this") {
        const std::string cls = enclosing_class_qname(expr);
        return cls.empty() ? std::nullopt : std::optional<std::string>(cls);
      }
      return declared_type_of_name(expr, expr->name, symbols);
    case NodeKind::FieldAccess: {
      auto qname = resolve_field(expr, symbols);
      if (!qname) return std::nullopt;
      auto it = symbols.fields.find(*qname);
      if (it == symbols.fields.end()) return std::nullopt;
      return it->second.type_name;
    }
    case NodeKind::MethodCall: {
      if (expr->is_constructor_call) return expr->type_name;
      auto callee = resolve_callee(expr, symbols);
      if (!callee) return std::nullopt;
      auto it = symbols.methods.find(*callee);
      if (it == symbols.methods.end()) return std::nullopt;
      return it->second.return_type;
    }
    case NodeKind::ArrayAccess: {
      auto base = declared_type_of(expr.child(0), symbols);
      if (base && base->ends_with("[]")) return base->substr(0, base->size() - 2);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::string> resolve_field(NodeRef expr, const SymbolTable& symbols) {
  if (expr->kind == NodeKind::NameRef) {
    NodeId cls = expr->cls;
    while (cls != kNoNode) {
      const std::string qname =
          enclosing_class_qname(NodeRef{expr.ast, cls}) + "." + expr->name;
      if (symbols.fields.count(qname)) return qname;
      cls = expr.ast->nodes[cls].cls;
    }
    // Shadowed by a local or parameter? Then it is not a field read.
    if (expr->method != kNoNode) {
      bool shadowed = false;
      std::function<void(NodeId)> scan = [&](NodeId id) {
        const AstNode& n = expr.ast->nodes[id];
        if ((n.kind == NodeKind::Parameter || n.kind == NodeKind::LocalVarDecl) &&
            n.name == expr->name)
          shadowed = true;
        for (NodeId c : n.children) scan(c);
      };
      scan(expr->method);
      if (shadowed) return std::nullopt;
    }
    std::optional<std::string> unique;
    for (const auto& [qname, f] : symbols.fields) {
      if (f.name == expr->name) {
        if (unique) return std::nullopt;
        unique = qname;
      }
    }
    return unique;
  }
  if (expr->kind != NodeKind::FieldAccess) return std::nullopt;
  const NodeRef receiver = expr.child(0);
  if (receiver->kind == NodeKind::NameRef && receiver->name == "this") {
    const std::string qname = enclosing_class_qname(expr) + "." + expr->name;
    if (symbols.fields.count(qname)) return qname;
    return std::nullopt;
  }
  // Receiver may itself be a type name (static access).
  if (receiver->kind == NodeKind::NameRef) {
    auto cls = symbols.resolve_class_name(receiver->name);
    if (cls) {
      const std::string qname = *cls + "." + expr->name;
      if (symbols.fields.count(qname)) return qname;
    }
  }
  auto recv_type = declared_type_of(receiver, symbols);
  if (recv_type) {
    auto cls = symbols.resolve_class_name(*recv_type);
    if (cls) {
      const std::string qname = *cls + "." + expr->name;
      if (symbols.fields.count(qname)) return qname;
      return std::nullopt;
    }
  }
  // Unique-name fallback.
  std::optional<std::string> unique;
  for (const auto& [qname, f] : symbols.fields) {
    if (f.name == expr->name) {
      if (unique) return std::nullopt;
      unique = qname;
    }
  }
  return unique;
}

std::optional<std::string> resolve_callee(NodeRef call, const SymbolTable& symbols) {
  if (call->kind != NodeKind::MethodCall) return std::nullopt;
  if (call->is_constructor_call) {
    auto cls = symbols.resolve_class_name(call->type_name.empty() ? call->name
                                                                  : call->type_name);
    if (!cls) return std::nullopt;
    const std::string qname = *cls + ".<init>";
    if (symbols.methods.count(qname)) return qname;
    return std::nullopt;
  }
  if (!call->has_receiver) {
    // Same-class (or enclosing-class) call.
    NodeId cls = call->cls;
    while (cls != kNoNode) {
      const std::string qname =
          enclosing_class_qname(NodeRef{call.ast, cls}) + "." + call->name;
      if (symbols.methods.count(qname)) return qname;
      cls = call.ast->nodes[cls].cls;
    }
    // Inherited method.
    if (call->cls != kNoNode) {
      const std::string own = enclosing_class_qname(NodeRef{call.ast, call->cls});
      auto bases_it = symbols.class_bases.find(own);
      if (bases_it != symbols.class_bases.end()) {
        std::vector<std::string> work = bases_it->second;
        std::set<std::string> seen;
        while (!work.empty()) {
          auto base = symbols.resolve_class_name(work.back());
          work.pop_back();
          if (!base || !seen.insert(*base).second) continue;
          const std::string qname = *base + "." + call->name;
          if (symbols.methods.count(qname)) return qname;
          auto up = symbols.class_bases.find(*base);
          if (up != symbols.class_bases.end())
            work.insert(work.end(), up->second.begin(), up->second.end());
        }
      }
    }
  } else {
    const NodeRef receiver = call.child(0);
    if (receiver->kind == NodeKind::NameRef && receiver->name == "this") {
      const std::string qname = enclosing_class_qname(call) + "." + call->name;
      if (symbols.methods.count(qname)) return qname;
      return std::nullopt;
    }
    if (receiver->kind == NodeKind::NameRef || receiver->kind == NodeKind::FieldAccess) {
      // Static call through a type name: Receiver.name(...).
      std::string recv_text(receiver.text());
      auto cls = symbols.resolve_class_name(recv_text);
      if (!cls && receiver->kind == NodeKind::NameRef)
        cls = symbols.resolve_class_name(receiver->name);
      if (cls) {
        const std::string qname = *cls + "." + call->name;
        if (symbols.methods.count(qname)) return qname;
      }
    }
    auto recv_type = declared_type_of(receiver, symbols);
    if (recv_type) {
      auto cls = symbols.resolve_class_name(*recv_type);
      if (cls) {
        const std::string qname = *cls + "." + call->name;
        if (symbols.methods.count(qname)) return qname;
        // Inherited through the receiver's base chain.
        auto bases_it = symbols.class_bases.find(*cls);
        if (bases_it != symbols.class_bases.end()) {
          std::vector<std::string> work = bases_it->second;
          std::set<std::string> seen;
          while (!work.empty()) {
            auto base = symbols.resolve_class_name(work.back());
            work.pop_back();
            if (!base || !seen.insert(*base).second) continue;
            const std::string q = *base + "." + call->name;
            if (symbols.methods.count(q)) return q;
            auto up = symbols.class_bases.find(*base);
            if (up != symbols.class_bases.end())
              work.insert(work.end(), up->second.begin(), up->second.end());
          }
        }
        return std::nullopt;
      }
    }
  }
  // Unique method simple name across the corpus.
  std::optional<std::string> unique;
  for (const auto& [qname, m] : symbols.methods) {
    if (m.name == call->name) {
      if (unique) return std::nullopt;
      unique = qname;
    }
  }
  return unique;
}

}  // namespace cipscan
