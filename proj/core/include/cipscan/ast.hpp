#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace cipscan {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Node kinds of the analyzed-language AST. The kinds used by pattern
/// definitions (declarations, control statements, expressions) are stable;
/// the remaining kinds are structural carriers the parser needs for forms
/// no pattern inspects directly.
enum class NodeKind : std::uint8_t {
  File,
  ClassDecl,
  FieldDecl,
  MethodDecl,
  Parameter,
  LocalVarDecl,
  Block,
  Assignment,
  MethodCall,
  ReturnStmt,
  IfStmt,
  SwitchStmt,
  SwitchCase,
  LoopStmt,
  TryStmt,
  CatchClause,
  ThrowStmt,
  OtherStmt,
  BinaryExpr,
  UnaryExpr,
  TernaryExpr,
  CastExpr,
  Literal,
  NameRef,
  FieldAccess,
  ArrayAccess,
  ClassLiteralAccess,
  ArrayCreation,
  ArrayInit,
  LambdaExpr,
};

const char* to_string(NodeKind kind);

enum class ClassFlavor : std::uint8_t { Class, Interface, Enum };
enum class LoopFlavor : std::uint8_t { For, ForEach, While, DoWhile };
enum class LiteralKind : std::uint8_t {
  Int,
  Long,
  Float,
  Double,
  Char,
  String,
  Bool,
  Null,
};

/// Half-open byte span [begin, end) into the owning file, plus the 1-based
/// line/column of the first byte.
struct SourceLoc {
  std::uint32_t file_id = 0;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

/// One AST node. Children are indices into the owning Ast's node arena.
///
/// Field conventions per kind:
///   ClassDecl      name=simple name, flavor=ClassFlavor, extra_names=bases,
///                  children=members
///   FieldDecl      name, type_name, children=[initializer?]; one node per
///                  declarator; is_enum_constant marks enum members
///   MethodDecl     name, type_name=return type, children=[Parameter...,
///                  body Block?]; is_abstract when no body
///   Parameter      name, type_name
///   LocalVarDecl   name, type_name, children=[initializer?]
///   Assignment     name=operator ("=", "+=", ...), children=[lhs, rhs]
///   MethodCall     name=callee simple name (class name for constructor
///                  calls), children=[receiver?]+args, has_receiver,
///                  is_constructor_call; type_name=full type for `new`
///   ReturnStmt     children=[expr?]
///   IfStmt         children=[cond, then, else?]; else may chain IfStmt
///   SwitchStmt     children=[selector, SwitchCase...]
///   SwitchCase     aux=label count, children=[labels..., stmts...]
///   LoopStmt       flavor=LoopFlavor.
///                  For: children=[init..., cond?, update..., body],
///                  aux packs (n_init, has_cond, n_update);
///                  ForEach: [LocalVarDecl, iterable, body];
///                  While/DoWhile: [cond, body]
///   BinaryExpr     name=operator, children=[lhs, rhs]
///   UnaryExpr      name=operator, aux=1 when postfix, children=[operand]
///   TernaryExpr    children=[cond, then, else]
///   CastExpr       type_name=target type, children=[operand]
///   Literal        flavor=LiteralKind, no children
///   NameRef        name
///   FieldAccess    name=member, children=[receiver]
///   ArrayAccess    children=[base, index]
///   ClassLiteralAccess  type_name, no children
///   ArrayCreation  type_name=element type, children=[dims... | ArrayInit]
///   OtherStmt      name=keyword ("break", "assert", ...), children=sub-parts
struct AstNode {
  NodeKind kind = NodeKind::File;
  std::uint8_t flavor = 0;
  std::uint32_t aux = 0;
  bool has_receiver = false;
  bool is_constructor_call = false;
  bool is_constructor_decl = false;
  bool is_abstract = false;
  bool is_static = false;
  bool is_enum_constant = false;
  bool is_statement = false;
  SourceLoc loc;
  std::string name;
  std::string type_name;
  std::vector<std::string> extra_names;
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  NodeId stmt = kNoNode;    // enclosing statement-level node (self when one)
  NodeId method = kNoNode;  // enclosing MethodDecl
  NodeId cls = kNoNode;     // enclosing ClassDecl
};

/// Parsed AST of one file. Owns the source text; node spans index into it.
struct Ast {
  std::uint32_t file_id = 0;
  std::string path;
  std::string source;
  std::vector<AstNode> nodes;
  NodeId root = kNoNode;

  const AstNode& node(NodeId id) const { return nodes[id]; }
  std::string_view text(NodeId id) const {
    const SourceLoc& l = nodes[id].loc;
    return std::string_view(source).substr(l.begin, l.end - l.begin);
  }
  std::string_view text(const SourceLoc& l) const {
    return std::string_view(source).substr(l.begin, l.end - l.begin);
  }
};

/// Handle to a node in some parsed file. Cheap to copy; valid as long as the
/// owning SourceCorpus is alive.
struct NodeRef {
  const Ast* ast = nullptr;
  NodeId id = kNoNode;

  bool valid() const { return ast != nullptr && id != kNoNode; }
  const AstNode& operator*() const { return ast->nodes[id]; }
  const AstNode* operator->() const { return &ast->nodes[id]; }
  std::string_view text() const { return ast->text(id); }
  const SourceLoc& loc() const { return ast->nodes[id].loc; }
  NodeRef child(std::size_t i) const { return {ast, ast->nodes[id].children[i]}; }
  std::size_t child_count() const { return ast->nodes[id].children.size(); }
  NodeRef parent() const { return {ast, ast->nodes[id].parent}; }

  friend bool operator==(const NodeRef& a, const NodeRef& b) {
    return a.ast == b.ast && a.id == b.id;
  }
  friend auto operator<=>(const NodeRef& a, const NodeRef& b) {
    const std::uint32_t fa = a.ast ? a.ast->file_id : 0;
    const std::uint32_t fb = b.ast ? b.ast->file_id : 0;
    if (fa != fb) return fa <=> fb;
    return a.id <=> b.id;
  }
};

}  // namespace cipscan
