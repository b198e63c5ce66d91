#include "cipscan/parser.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "cipscan/lexer.hpp"

namespace cipscan {

namespace {

struct ParseError : std::runtime_error {
  ParseError(std::uint32_t line, std::uint32_t column, const std::string& msg)
      : std::runtime_error(msg), line(line), column(column) {}
  std::uint32_t line;
  std::uint32_t column;
};

class Parser {
 public:
  Parser(std::uint32_t file_id, std::string path, std::string source)
      : file_id_(file_id) {
    ast_.file_id = file_id;
    ast_.path = std::move(path);
    ast_.source = std::move(source);
    std::vector<LexError> lex_errors;
    tokens_ = lex(ast_.source, &lex_errors);
    if (!lex_errors.empty())
      throw ParseError(lex_errors[0].line, lex_errors[0].column, lex_errors[0].message);
  }

  Ast run() {
    const NodeId root = begin_node(NodeKind::File);
    skip_package_and_imports();
    while (!at_end()) {
      if (cur().is_op(";")) {
        next();
        continue;
      }
      add_child(root, parse_type_decl());
    }
    end_node(root, tokens_.back().offset);
    ast_.root = root;
    finalize();
    return std::move(ast_);
  }

 private:
  // ---- token cursor -------------------------------------------------------

  const Token& cur() const { return tokens_[pos_]; }
  const Token& peek(std::size_t ahead = 1) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at_end() const { return cur().kind == TokenKind::End; }
  void next() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().line, cur().column, msg);
  }

  void expect_op(std::string_view op) {
    if (!cur().is_op(op)) fail("expected '" + std::string(op) + "'");
    next();
  }
  void expect_kw(std::string_view kw) {
    if (!cur().is_kw(kw)) fail("expected '" + std::string(kw) + "'");
    next();
  }
  std::string expect_identifier(const char* what) {
    if (cur().kind != TokenKind::Identifier) fail(std::string("expected ") + what);
    std::string name(cur().text);
    next();
    return name;
  }

  // ---- node arena ---------------------------------------------------------

  NodeId begin_node(NodeKind kind) {
    AstNode n;
    n.kind = kind;
    n.loc.file_id = file_id_;
    n.loc.line = cur().line;
    n.loc.column = cur().column;
    n.loc.begin = cur().offset;
    n.loc.end = cur().offset;
    ast_.nodes.push_back(std::move(n));
    return static_cast<NodeId>(ast_.nodes.size() - 1);
  }

  NodeId begin_node_at(NodeKind kind, const AstNode& from) {
    AstNode n;
    n.kind = kind;
    n.loc = from.loc;
    ast_.nodes.push_back(std::move(n));
    return static_cast<NodeId>(ast_.nodes.size() - 1);
  }

  void end_node(NodeId id, std::uint32_t end_offset) { ast_.nodes[id].loc.end = end_offset; }

  // Ends the node at the end of the previous token.
  void end_node_here(NodeId id) {
    ast_.nodes[id].loc.end = prev_end_offset();
  }

  std::uint32_t prev_end_offset() const {
    if (pos_ == 0) return 0;
    const Token& p = tokens_[pos_ - 1];
    return p.offset + static_cast<std::uint32_t>(p.text.size());
  }

  void add_child(NodeId parent, NodeId child) { ast_.nodes[parent].children.push_back(child); }

  AstNode& node(NodeId id) { return ast_.nodes[id]; }

  // ---- trivia -------------------------------------------------------------

  void skip_package_and_imports() {
    while (true) {
      skip_annotations();
      if (cur().is_kw("package") || cur().is_kw("import")) {
        while (!at_end() && !cur().is_op(";")) next();
        expect_op(";");
        continue;
      }
      break;
    }
  }

  void skip_annotations() {
    while (cur().is_op("@") && !peek().is_kw("interface")) {
      next();
      expect_identifier("annotation name");
      while (cur().is_op(".")) {
        next();
        expect_identifier("annotation name");
      }
      if (cur().is_op("(")) skip_balanced("(", ")");
    }
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    expect_op(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unbalanced '" + std::string(open) + "'");
      if (cur().is_op(open)) ++depth;
      if (cur().is_op(close)) --depth;
      next();
    }
  }

  struct Modifiers {
    bool is_abstract = false;
    bool is_static = false;
  };

  Modifiers parse_modifiers() {
    Modifiers m;
    while (true) {
      skip_annotations();
      if (cur().is_kw("public") || cur().is_kw("protected") || cur().is_kw("private") ||
          cur().is_kw("final") || cur().is_kw("native") || cur().is_kw("synchronized") ||
          cur().is_kw("transient") || cur().is_kw("volatile") || cur().is_kw("strictfp") ||
          cur().is_kw("default")) {
        next();
        continue;
      }
      if (cur().is_kw("abstract")) {
        m.is_abstract = true;
        next();
        continue;
      }
      if (cur().is_kw("static")) {
        m.is_static = true;
        next();
        continue;
      }
      break;
    }
    return m;
  }

  // ---- types --------------------------------------------------------------

  bool at_primitive_type() const {
    return cur().is_kw("boolean") || cur().is_kw("byte") || cur().is_kw("short") ||
           cur().is_kw("int") || cur().is_kw("long") || cur().is_kw("char") ||
           cur().is_kw("float") || cur().is_kw("double") || cur().is_kw("void");
  }

  // Parses a type reference and returns its raw (generics-erased) name, e.g.
  // "List" for List<String> and "int[]" for int[].
  std::string parse_type() {
    std::string name;
    if (at_primitive_type()) {
      name = std::string(cur().text);
      next();
    } else if (cur().kind == TokenKind::Identifier) {
      name = std::string(cur().text);
      next();
      if (cur().is_op("<")) skip_type_arguments();
      while (cur().is_op(".") && peek().kind == TokenKind::Identifier) {
        next();
        name += ".";
        name += std::string(cur().text);
        next();
        if (cur().is_op("<")) skip_type_arguments();
      }
    } else {
      fail("expected type");
    }
    while (cur().is_op("[") && peek().is_op("]")) {
      next();
      next();
      name += "[]";
    }
    return name;
  }

  // Skips `<...>`, treating `>>` and `>>>` as multiple closers.
  void skip_type_arguments() {
    assert(cur().is_op("<"));
    next();
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unbalanced type arguments");
      if (cur().is_op("<")) {
        ++depth;
      } else if (cur().is_op(">")) {
        --depth;
      } else if (cur().is_op(">>")) {
        depth -= 2;
      } else if (cur().is_op(">>>")) {
        depth -= 3;
      } else if (cur().is_op(";") || cur().is_op("{")) {
        fail("unbalanced type arguments");
      }
      next();
    }
    if (depth < 0) fail("unbalanced type arguments");
  }

  void skip_type_parameters() {
    if (cur().is_op("<")) skip_type_arguments();
  }

  // ---- declarations -------------------------------------------------------

  NodeId parse_type_decl() {
    const std::size_t decl_start = pos_;
    const Modifiers mods = parse_modifiers();
    ClassFlavor flavor;
    if (cur().is_kw("class")) {
      flavor = ClassFlavor::Class;
    } else if (cur().is_kw("interface")) {
      flavor = ClassFlavor::Interface;
    } else if (cur().is_kw("enum")) {
      flavor = ClassFlavor::Enum;
    } else if (cur().is_op("@") && peek().is_kw("interface")) {
      // Annotation type: skip the body entirely.
      next();
      next();
      const NodeId id = begin_node(NodeKind::ClassDecl);
      node(id).flavor = static_cast<std::uint8_t>(ClassFlavor::Interface);
      node(id).name = expect_identifier("annotation type name");
      skip_balanced("{", "}");
      end_node_here(id);
      node(id).is_statement = true;
      return id;
    } else {
      fail("expected type declaration");
    }

    // Rewind so the node span covers the modifiers.
    const Token& start_tok = tokens_[decl_start];
    const NodeId id = begin_node(NodeKind::ClassDecl);
    node(id).loc.line = start_tok.line;
    node(id).loc.column = start_tok.column;
    node(id).loc.begin = start_tok.offset;
    node(id).flavor = static_cast<std::uint8_t>(flavor);
    node(id).is_abstract = mods.is_abstract;
    node(id).is_static = mods.is_static;
    next();  // class/interface/enum keyword
    node(id).name = expect_identifier("type name");
    skip_type_parameters();
    if (cur().is_kw("extends")) {
      next();
      node(id).extra_names.push_back(parse_type());
      while (cur().is_op(",")) {  // interfaces may extend several
        next();
        node(id).extra_names.push_back(parse_type());
      }
    }
    if (cur().is_kw("implements")) {
      next();
      node(id).extra_names.push_back(parse_type());
      while (cur().is_op(",")) {
        next();
        node(id).extra_names.push_back(parse_type());
      }
    }
    expect_op("{");
    if (flavor == ClassFlavor::Enum) {
      parse_enum_constants(id);
    }
    while (!cur().is_op("}")) {
      if (at_end()) fail("unterminated type body");
      parse_member(id);
    }
    expect_op("}");
    end_node_here(id);
    node(id).is_statement = true;
    return id;
  }

  void parse_enum_constants(NodeId class_id) {
    while (cur().kind == TokenKind::Identifier || cur().is_op("@")) {
      skip_annotations();
      if (cur().kind != TokenKind::Identifier) break;
      const NodeId c = begin_node(NodeKind::FieldDecl);
      node(c).name = expect_identifier("enum constant");
      node(c).is_enum_constant = true;
      node(c).type_name = node(class_id).name;
      if (cur().is_op("(")) {
        next();
        if (!cur().is_op(")")) {
          add_child(c, parse_expression());
          while (cur().is_op(",")) {
            next();
            add_child(c, parse_expression());
          }
        }
        expect_op(")");
      }
      if (cur().is_op("{")) skip_balanced("{", "}");  // constant class body
      end_node_here(c);
      node(c).is_statement = true;
      add_child(class_id, c);
      if (cur().is_op(",")) {
        next();
        continue;
      }
      break;
    }
    if (cur().is_op(";")) next();
  }

  void parse_member(NodeId class_id) {
    if (cur().is_op(";")) {
      next();
      return;
    }
    const std::size_t member_start = pos_;
    const Modifiers mods = parse_modifiers();

    if (cur().is_kw("class") || cur().is_kw("interface") || cur().is_kw("enum") ||
        (cur().is_op("@") && peek().is_kw("interface"))) {
      pos_ = member_start;
      add_child(class_id, parse_type_decl());
      return;
    }

    // Static/instance initializer block.
    if (cur().is_op("{")) {
      add_child(class_id, parse_block());
      return;
    }

    skip_type_parameters();

    // Constructor: Identifier '(' with the identifier matching no parsed type
    // keyword; detected simply as name followed by '('.
    if (cur().kind == TokenKind::Identifier && peek().is_op("(")) {
      const Token& start_tok = tokens_[member_start];
      const NodeId m = begin_node(NodeKind::MethodDecl);
      node(m).loc.line = start_tok.line;
      node(m).loc.column = start_tok.column;
      node(m).loc.begin = start_tok.offset;
      node(m).name = expect_identifier("constructor name");
      node(m).type_name = "void";
      node(m).is_constructor_decl = true;
      node(m).is_static = mods.is_static;
      parse_method_rest(m, /*allow_abstract=*/false);
      add_child(class_id, m);
      return;
    }

    std::string type = parse_type();
    const Token& start_tok = tokens_[member_start];

    if (cur().kind == TokenKind::Identifier && peek().is_op("(")) {
      const NodeId m = begin_node(NodeKind::MethodDecl);
      node(m).loc.line = start_tok.line;
      node(m).loc.column = start_tok.column;
      node(m).loc.begin = start_tok.offset;
      node(m).name = expect_identifier("method name");
      node(m).type_name = type;
      node(m).is_abstract = mods.is_abstract;
      node(m).is_static = mods.is_static;
      parse_method_rest(m, /*allow_abstract=*/true);
      add_child(class_id, m);
      return;
    }

    // Field declaration, possibly with several declarators.
    while (true) {
      const NodeId f = begin_node(NodeKind::FieldDecl);
      node(f).loc.line = start_tok.line;
      node(f).loc.column = start_tok.column;
      node(f).loc.begin = start_tok.offset;
      node(f).name = expect_identifier("field name");
      node(f).type_name = type;
      node(f).is_static = mods.is_static;
      while (cur().is_op("[") && peek().is_op("]")) {
        next();
        next();
        node(f).type_name += "[]";
      }
      if (cur().is_op("=")) {
        next();
        add_child(f, parse_variable_initializer());
      }
      end_node_here(f);
      node(f).is_statement = true;
      add_child(class_id, f);
      if (cur().is_op(",")) {
        next();
        continue;
      }
      break;
    }
    expect_op(";");
  }

  void parse_method_rest(NodeId m, bool allow_abstract) {
    expect_op("(");
    if (!cur().is_op(")")) {
      add_child(m, parse_parameter());
      while (cur().is_op(",")) {
        next();
        add_child(m, parse_parameter());
      }
    }
    expect_op(")");
    while (cur().is_op("[") && peek().is_op("]")) {
      next();
      next();
      node(m).type_name += "[]";
    }
    if (cur().is_kw("throws")) {
      next();
      parse_type();
      while (cur().is_op(",")) {
        next();
        parse_type();
      }
    }
    if (cur().is_op(";")) {
      next();
      node(m).is_abstract = true;
      if (!allow_abstract) fail("constructor requires a body");
    } else if (cur().is_kw("default")) {
      // Annotation member default; not expected here but tolerated.
      next();
      parse_expression();
      expect_op(";");
    } else {
      add_child(m, parse_block());
    }
    end_node_here(m);
    node(m).is_statement = true;
  }

  NodeId parse_parameter() {
    skip_annotations();
    if (cur().is_kw("final")) next();
    skip_annotations();
    const NodeId p = begin_node(NodeKind::Parameter);
    std::string type = parse_type();
    if (cur().is_op(".") && peek().is_op(".") && peek(2).is_op(".")) {
      next();
      next();
      next();
      type += "[]";
    }
    node(p).type_name = type;
    node(p).name = expect_identifier("parameter name");
    while (cur().is_op("[") && peek().is_op("]")) {
      next();
      next();
      node(p).type_name += "[]";
    }
    end_node_here(p);
    return p;
  }

  // ---- statements ---------------------------------------------------------

  NodeId parse_block() {
    const NodeId b = begin_node(NodeKind::Block);
    expect_op("{");
    while (!cur().is_op("}")) {
      if (at_end()) fail("unterminated block");
      add_child(b, parse_statement());
    }
    expect_op("}");
    end_node_here(b);
    node(b).is_statement = true;
    return b;
  }

  NodeId parse_statement() {
    skip_annotations();
    if (cur().is_op("{")) return parse_block();
    if (cur().is_op(";")) {
      const NodeId s = begin_node(NodeKind::OtherStmt);
      node(s).name = ";";
      next();
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("if")) return parse_if();
    if (cur().is_kw("switch")) return parse_switch();
    if (cur().is_kw("while")) return parse_while();
    if (cur().is_kw("do")) return parse_do_while();
    if (cur().is_kw("for")) return parse_for();
    if (cur().is_kw("return")) {
      const NodeId s = begin_node(NodeKind::ReturnStmt);
      next();
      if (!cur().is_op(";")) add_child(s, parse_expression());
      expect_op(";");
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("throw")) {
      const NodeId s = begin_node(NodeKind::ThrowStmt);
      next();
      add_child(s, parse_expression());
      expect_op(";");
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("try")) return parse_try();
    if (cur().is_kw("break") || cur().is_kw("continue")) {
      const NodeId s = begin_node(NodeKind::OtherStmt);
      node(s).name = std::string(cur().text);
      next();
      if (cur().kind == TokenKind::Identifier) next();  // label
      expect_op(";");
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("assert")) {
      const NodeId s = begin_node(NodeKind::OtherStmt);
      node(s).name = "assert";
      next();
      add_child(s, parse_expression());
      if (cur().is_op(":")) {
        next();
        add_child(s, parse_expression());
      }
      expect_op(";");
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("synchronized") && peek().is_op("(")) {
      const NodeId s = begin_node(NodeKind::OtherStmt);
      node(s).name = "synchronized";
      next();
      expect_op("(");
      add_child(s, parse_expression());
      expect_op(")");
      add_child(s, parse_block());
      end_node_here(s);
      node(s).is_statement = true;
      return s;
    }
    if (cur().is_kw("class") || cur().is_kw("interface") || cur().is_kw("enum") ||
        cur().is_kw("abstract") || cur().is_kw("static")) {
      // Local type declaration (rare) or a modifier run ahead of one.
      const std::size_t save = pos_;
      try {
        return parse_type_decl();
      } catch (const ParseError&) {
        pos_ = save;
      }
    }

    // Labeled statement.
    if (cur().kind == TokenKind::Identifier && peek().is_op(":")) {
      next();
      next();
      return parse_statement();
    }

    // Local variable declaration vs expression statement: try the declaration
    // first and fall back on failure.
    {
      const std::size_t save = pos_;
      const std::size_t node_save = ast_.nodes.size();
      try {
        return parse_local_var_decl_statement();
      } catch (const ParseError&) {
        pos_ = save;
        ast_.nodes.resize(node_save);
      }
    }

    const NodeId e = parse_expression();
    expect_op(";");
    node(e).is_statement = true;
    return e;
  }

  NodeId parse_local_var_decl_statement() {
    if (cur().is_kw("final")) next();
    skip_annotations();
    const Token& start_tok = cur();
    std::string type = parse_type();
    if (cur().kind != TokenKind::Identifier) fail("not a declaration");
    // Several declarators become sibling LocalVarDecl nodes parented by a
    // shared carrier; the common single-declarator case stays a single node.
    std::vector<NodeId> decls;
    while (true) {
      const NodeId d = begin_node(NodeKind::LocalVarDecl);
      if (decls.empty()) {
        node(d).loc.line = start_tok.line;
        node(d).loc.column = start_tok.column;
        node(d).loc.begin = start_tok.offset;
      }
      node(d).type_name = type;
      node(d).name = expect_identifier("variable name");
      while (cur().is_op("[") && peek().is_op("]")) {
        next();
        next();
        node(d).type_name += "[]";
      }
      if (cur().is_op("=")) {
        next();
        add_child(d, parse_variable_initializer());
      }
      end_node_here(d);
      node(d).is_statement = true;
      decls.push_back(d);
      if (cur().is_op(",")) {
        next();
        continue;
      }
      break;
    }
    expect_op(";");
    if (decls.size() == 1) return decls[0];
    // Wrap multiple declarators in a block-like carrier spanning the whole
    // statement so the parent sees one child.
    const NodeId wrap = begin_node_at(NodeKind::Block, node(decls[0]));
    for (NodeId d : decls) add_child(wrap, d);
    node(wrap).loc.end = node(decls.back()).loc.end;
    node(wrap).is_statement = true;
    return wrap;
  }

  NodeId parse_variable_initializer() {
    if (cur().is_op("{")) {
      const NodeId a = begin_node(NodeKind::ArrayInit);
      next();
      if (!cur().is_op("}")) {
        add_child(a, parse_variable_initializer());
        while (cur().is_op(",")) {
          next();
          if (cur().is_op("}")) break;
          add_child(a, parse_variable_initializer());
        }
      }
      expect_op("}");
      end_node_here(a);
      return a;
    }
    return parse_expression();
  }

  NodeId parse_if() {
    const NodeId s = begin_node(NodeKind::IfStmt);
    expect_kw("if");
    expect_op("(");
    add_child(s, parse_expression());
    expect_op(")");
    add_child(s, parse_statement());
    if (cur().is_kw("else")) {
      next();
      add_child(s, parse_statement());
    }
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  NodeId parse_switch() {
    const NodeId s = begin_node(NodeKind::SwitchStmt);
    expect_kw("switch");
    expect_op("(");
    add_child(s, parse_expression());
    expect_op(")");
    expect_op("{");
    while (!cur().is_op("}")) {
      if (at_end()) fail("unterminated switch");
      const NodeId c = begin_node(NodeKind::SwitchCase);
      std::uint32_t label_count = 0;
      while (cur().is_kw("case") || cur().is_kw("default")) {
        if (cur().is_kw("case")) {
          next();
          add_child(c, parse_expression());
          ++label_count;
        } else {
          next();
        }
        expect_op(":");
      }
      node(c).aux = label_count;
      while (!cur().is_kw("case") && !cur().is_kw("default") && !cur().is_op("}")) {
        if (at_end()) fail("unterminated switch");
        add_child(c, parse_statement());
      }
      end_node_here(c);
      node(c).is_statement = true;
      add_child(s, c);
    }
    expect_op("}");
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  NodeId parse_while() {
    const NodeId s = begin_node(NodeKind::LoopStmt);
    node(s).flavor = static_cast<std::uint8_t>(LoopFlavor::While);
    expect_kw("while");
    expect_op("(");
    add_child(s, parse_expression());
    expect_op(")");
    add_child(s, parse_statement());
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  NodeId parse_do_while() {
    const NodeId s = begin_node(NodeKind::LoopStmt);
    node(s).flavor = static_cast<std::uint8_t>(LoopFlavor::DoWhile);
    expect_kw("do");
    const NodeId body = parse_statement();
    expect_kw("while");
    expect_op("(");
    const NodeId cond = parse_expression();
    expect_op(")");
    expect_op(";");
    add_child(s, cond);
    add_child(s, body);
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  NodeId parse_for() {
    const NodeId s = begin_node(NodeKind::LoopStmt);
    expect_kw("for");
    expect_op("(");

    // Enhanced for: `for (Type name : expr)`.
    {
      const std::size_t save = pos_;
      const std::size_t node_save = ast_.nodes.size();
      try {
        if (cur().is_kw("final")) next();
        const NodeId var = begin_node(NodeKind::LocalVarDecl);
        node(var).type_name = parse_type();
        node(var).name = expect_identifier("loop variable");
        end_node_here(var);
        if (cur().is_op(":")) {
          next();
          node(s).flavor = static_cast<std::uint8_t>(LoopFlavor::ForEach);
          add_child(s, var);
          add_child(s, parse_expression());
          expect_op(")");
          add_child(s, parse_statement());
          end_node_here(s);
          node(s).is_statement = true;
          node(var).is_statement = true;
          return s;
        }
        pos_ = save;
        ast_.nodes.resize(node_save);
      } catch (const ParseError&) {
        pos_ = save;
        ast_.nodes.resize(node_save);
      }
    }

    node(s).flavor = static_cast<std::uint8_t>(LoopFlavor::For);
    std::uint32_t n_init = 0, n_update = 0;
    bool has_cond = false;
    if (!cur().is_op(";")) {
      const std::size_t save = pos_;
      const std::size_t node_save = ast_.nodes.size();
      bool decl_ok = false;
      try {
        const NodeId d = parse_for_init_decl();
        add_child(s, d);
        ++n_init;
        decl_ok = true;
      } catch (const ParseError&) {
        pos_ = save;
        ast_.nodes.resize(node_save);
      }
      if (!decl_ok) {
        add_child(s, parse_expression());
        ++n_init;
        while (cur().is_op(",")) {
          next();
          add_child(s, parse_expression());
          ++n_init;
        }
      }
    }
    expect_op(";");
    if (!cur().is_op(";")) {
      add_child(s, parse_expression());
      has_cond = true;
    }
    expect_op(";");
    if (!cur().is_op(")")) {
      add_child(s, parse_expression());
      ++n_update;
      while (cur().is_op(",")) {
        next();
        add_child(s, parse_expression());
        ++n_update;
      }
    }
    expect_op(")");
    add_child(s, parse_statement());
    node(s).aux = (n_init << 16) | (static_cast<std::uint32_t>(has_cond) << 15) | n_update;
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  // One or more `Type name = expr` declarators in a classic for header; the
  // returned node is the declarator (or a carrier when there are several).
  NodeId parse_for_init_decl() {
    if (cur().is_kw("final")) next();
    const Token& start_tok = cur();
    std::string type = parse_type();
    if (cur().kind != TokenKind::Identifier) fail("not a declaration");
    std::vector<NodeId> decls;
    while (true) {
      const NodeId d = begin_node(NodeKind::LocalVarDecl);
      node(d).loc.line = start_tok.line;
      node(d).loc.column = start_tok.column;
      node(d).loc.begin = decls.empty() ? start_tok.offset : cur().offset;
      node(d).type_name = type;
      node(d).name = expect_identifier("variable name");
      if (cur().is_op("=")) {
        next();
        add_child(d, parse_variable_initializer());
      }
      end_node_here(d);
      node(d).is_statement = true;
      decls.push_back(d);
      if (cur().is_op(",")) {
        next();
        continue;
      }
      break;
    }
    if (!cur().is_op(";")) fail("not a declaration");
    if (decls.size() == 1) return decls[0];
    const NodeId wrap = begin_node_at(NodeKind::Block, node(decls[0]));
    for (NodeId d : decls) add_child(wrap, d);
    node(wrap).loc.end = node(decls.back()).loc.end;
    node(wrap).is_statement = true;
    return wrap;
  }

  NodeId parse_try() {
    const NodeId s = begin_node(NodeKind::TryStmt);
    expect_kw("try");
    if (cur().is_op("(")) {
      next();
      while (!cur().is_op(")")) {
        const std::size_t save = pos_;
        const std::size_t node_save = ast_.nodes.size();
        try {
          if (cur().is_kw("final")) next();
          const NodeId d = begin_node(NodeKind::LocalVarDecl);
          node(d).type_name = parse_type();
          node(d).name = expect_identifier("resource name");
          expect_op("=");
          add_child(d, parse_expression());
          end_node_here(d);
          node(d).is_statement = true;
          add_child(s, d);
        } catch (const ParseError&) {
          pos_ = save;
          ast_.nodes.resize(node_save);
          add_child(s, parse_expression());
        }
        if (cur().is_op(";")) next();
      }
      expect_op(")");
    }
    add_child(s, parse_block());
    while (cur().is_kw("catch")) {
      const NodeId c = begin_node(NodeKind::CatchClause);
      next();
      expect_op("(");
      if (cur().is_kw("final")) next();
      const NodeId p = begin_node(NodeKind::Parameter);
      node(p).type_name = parse_type();
      while (cur().is_op("|")) {  // multi-catch
        next();
        parse_type();
      }
      node(p).name = expect_identifier("catch parameter");
      end_node_here(p);
      expect_op(")");
      add_child(c, p);
      add_child(c, parse_block());
      end_node_here(c);
      node(c).is_statement = true;
      add_child(s, c);
    }
    if (cur().is_kw("finally")) {
      next();
      add_child(s, parse_block());
    }
    end_node_here(s);
    node(s).is_statement = true;
    return s;
  }

  // ---- expressions --------------------------------------------------------

  NodeId parse_expression() { return parse_assignment(); }

  bool at_lambda() const {
    if (cur().kind == TokenKind::Identifier && peek().is_op("->")) return true;
    if (!cur().is_op("(")) return false;
    // Scan to the matching ')' and check for '->'.
    std::size_t i = pos_ + 1;
    int depth = 1;
    while (i < tokens_.size() && depth > 0) {
      if (tokens_[i].is_op("(")) ++depth;
      if (tokens_[i].is_op(")")) --depth;
      ++i;
    }
    return i < tokens_.size() && tokens_[i].is_op("->");
  }

  NodeId parse_lambda() {
    const NodeId l = begin_node(NodeKind::LambdaExpr);
    if (cur().is_op("(")) {
      skip_balanced("(", ")");
    } else {
      next();  // single parameter
    }
    expect_op("->");
    if (cur().is_op("{")) {
      skip_balanced("{", "}");
    } else {
      // Opaque body: parse and discard the expression structure.
      const std::size_t node_save = ast_.nodes.size();
      parse_expression();
      ast_.nodes.resize(node_save);
    }
    end_node_here(l);
    return l;
  }

  NodeId parse_assignment() {
    if (at_lambda()) return parse_lambda();
    const NodeId lhs = parse_ternary();
    static const char* kAssignOps[] = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                       "&=", "|=", "^=", "<<=", ">>=", ">>>="};
    for (const char* op : kAssignOps) {
      if (cur().is_op(op)) {
        const NodeId a = begin_node_at(NodeKind::Assignment, node(lhs));
        node(a).name = op;
        next();
        const NodeId rhs = parse_assignment();
        add_child(a, lhs);
        add_child(a, rhs);
        node(a).loc.end = node(rhs).loc.end;
        return a;
      }
    }
    return lhs;
  }

  NodeId parse_ternary() {
    const NodeId cond = parse_binary(0);
    if (!cur().is_op("?")) return cond;
    const NodeId t = begin_node_at(NodeKind::TernaryExpr, node(cond));
    next();
    const NodeId then_e = parse_expression();
    expect_op(":");
    const NodeId else_e = parse_ternary();
    add_child(t, cond);
    add_child(t, then_e);
    add_child(t, else_e);
    node(t).loc.end = node(else_e).loc.end;
    return t;
  }

  struct BinaryLevel {
    std::initializer_list<const char*> ops;
  };

  // Precedence levels from weakest to strongest.
  static const std::vector<std::vector<std::string_view>>& binary_levels() {
    static const std::vector<std::vector<std::string_view>> levels = {
        {"||"},
        {"&&"},
        {"|"},
        {"^"},
        {"&"},
        {"==", "!="},
        {"<", ">", "<=", ">=", "instanceof"},
        {"<<", ">>", ">>>"},
        {"+", "-"},
        {"*", "/", "%"},
    };
    return levels;
  }

  NodeId parse_binary(std::size_t level) {
    const auto& levels = binary_levels();
    if (level >= levels.size()) return parse_unary();
    NodeId lhs = parse_binary(level + 1);
    while (true) {
      bool matched = false;
      for (std::string_view op : levels[level]) {
        const bool hit = (op == "instanceof") ? cur().is_kw("instanceof") : cur().is_op(op);
        if (!hit) continue;
        const NodeId b = begin_node_at(NodeKind::BinaryExpr, node(lhs));
        node(b).name = std::string(op);
        next();
        NodeId rhs;
        if (op == "instanceof") {
          const NodeId tn = begin_node(NodeKind::NameRef);
          node(tn).name = parse_type();
          end_node_here(tn);
          rhs = tn;
        } else {
          rhs = parse_binary(level + 1);
        }
        add_child(b, lhs);
        add_child(b, rhs);
        node(b).loc.end = node(rhs).loc.end;
        lhs = b;
        matched = true;
        break;
      }
      if (!matched) return lhs;
    }
  }

  bool at_cast() const {
    if (!cur().is_op("(")) return false;
    std::size_t i = pos_ + 1;
    const Token& t0 = tokens_[i];
    const bool primitive = t0.is_kw("boolean") || t0.is_kw("byte") || t0.is_kw("short") ||
                           t0.is_kw("int") || t0.is_kw("long") || t0.is_kw("char") ||
                           t0.is_kw("float") || t0.is_kw("double");
    if (primitive) {
      ++i;
      while (tokens_[i].is_op("[") && tokens_[i + 1].is_op("]")) i += 2;
      return tokens_[i].is_op(")");
    }
    if (t0.kind != TokenKind::Identifier) return false;
    ++i;
    int angle = 0;
    while (i < tokens_.size()) {
      const Token& t = tokens_[i];
      if (t.is_op("<")) {
        ++angle;
      } else if (t.is_op(">")) {
        --angle;
      } else if (t.is_op(">>")) {
        angle -= 2;
      } else if (angle == 0 && t.is_op(")")) {
        break;
      } else if (angle == 0 && !(t.is_op(".") || t.kind == TokenKind::Identifier ||
                                 t.is_op("[") || t.is_op("]"))) {
        return false;
      }
      ++i;
    }
    if (i >= tokens_.size() || !tokens_[i].is_op(")")) return false;
    const Token& after = tokens_[i + 1];
    return after.kind == TokenKind::Identifier || after.is_literal() ||
           after.is_op("(") || after.is_op("!") || after.is_op("~") || after.is_kw("this") ||
           after.is_kw("new") || after.is_kw("super") || after.is_kw("true") ||
           after.is_kw("false") || after.is_kw("null");
  }

  NodeId parse_unary() {
    if (cur().is_op("!") || cur().is_op("~") || cur().is_op("+") || cur().is_op("-") ||
        cur().is_op("++") || cur().is_op("--")) {
      const NodeId u = begin_node(NodeKind::UnaryExpr);
      node(u).name = std::string(cur().text);
      next();
      const NodeId operand = parse_unary();
      add_child(u, operand);
      node(u).loc.end = node(operand).loc.end;
      return u;
    }
    if (at_cast()) {
      const NodeId c = begin_node(NodeKind::CastExpr);
      next();  // '('
      node(c).type_name = parse_type();
      expect_op(")");
      const NodeId operand = parse_unary();
      add_child(c, operand);
      node(c).loc.end = node(operand).loc.end;
      return c;
    }
    return parse_postfix();
  }

  NodeId parse_postfix() {
    NodeId e = parse_primary();
    while (true) {
      if (cur().is_op(".")) {
        if (peek().is_kw("class")) {
          // `Name.class`
          const NodeId cl = begin_node_at(NodeKind::ClassLiteralAccess, node(e));
          node(cl).type_name = std::string(ast_.text(e));
          next();
          next();
          node(cl).loc.end = prev_end_offset();
          e = cl;
          continue;
        }
        if (peek().is_kw("this") || peek().is_kw("super")) {
          const NodeId fa = begin_node_at(NodeKind::FieldAccess, node(e));
          node(fa).name = std::string(peek().text);
          next();
          next();
          add_child(fa, e);
          node(fa).loc.end = prev_end_offset();
          e = fa;
          continue;
        }
        if (peek().is_kw("new")) {
          // Qualified allocation `outer.new Inner(...)`: treat the allocation
          // as an unqualified one.
          next();
          e = parse_allocation();
          continue;
        }
        if (peek().is_op("<")) {
          // Explicit type arguments on a call: `obj.<T>m(...)`.
          next();
          skip_type_arguments();
          const std::string member = expect_identifier("member name");
          e = finish_call_or_access(e, member);
          continue;
        }
        next();
        const std::string member = expect_identifier("member name");
        e = finish_call_or_access(e, member);
        continue;
      }
      if (cur().is_op("[")) {
        const NodeId a = begin_node_at(NodeKind::ArrayAccess, node(e));
        next();
        const NodeId index = parse_expression();
        expect_op("]");
        add_child(a, e);
        add_child(a, index);
        node(a).loc.end = prev_end_offset();
        e = a;
        continue;
      }
      if (cur().is_op("::")) {
        // Method reference: keep as an opaque functional value.
        const NodeId l = begin_node_at(NodeKind::LambdaExpr, node(e));
        next();
        if (cur().is_kw("new")) {
          next();
        } else {
          expect_identifier("method reference name");
        }
        node(l).loc.end = prev_end_offset();
        e = l;
        continue;
      }
      if (cur().is_op("++") || cur().is_op("--")) {
        const NodeId u = begin_node_at(NodeKind::UnaryExpr, node(e));
        node(u).name = std::string(cur().text);
        node(u).aux = 1;  // postfix
        next();
        add_child(u, e);
        node(u).loc.end = prev_end_offset();
        e = u;
        continue;
      }
      return e;
    }
  }

  NodeId finish_call_or_access(NodeId receiver, const std::string& member) {
    if (cur().is_op("(")) {
      const NodeId call = begin_node_at(NodeKind::MethodCall, node(receiver));
      node(call).name = member;
      node(call).has_receiver = true;
      add_child(call, receiver);
      parse_arguments(call);
      node(call).loc.end = prev_end_offset();
      return call;
    }
    const NodeId fa = begin_node_at(NodeKind::FieldAccess, node(receiver));
    node(fa).name = member;
    add_child(fa, receiver);
    node(fa).loc.end = prev_end_offset();
    return fa;
  }

  void parse_arguments(NodeId call) {
    expect_op("(");
    if (!cur().is_op(")")) {
      add_child(call, parse_expression());
      while (cur().is_op(",")) {
        next();
        add_child(call, parse_expression());
      }
    }
    expect_op(")");
  }

  NodeId parse_allocation() {
    // `new` already consumed by caller or current token is `new`.
    if (cur().is_kw("new")) next();
    const Token& type_tok = cur();
    std::string type;
    if (at_primitive_type()) {
      type = std::string(cur().text);
      next();
    } else {
      type = std::string(expect_identifier("type name"));
      if (cur().is_op("<")) skip_type_arguments();
      while (cur().is_op(".") && peek().kind == TokenKind::Identifier) {
        next();
        type += ".";
        type += expect_identifier("type name");
        if (cur().is_op("<")) skip_type_arguments();
      }
    }
    if (cur().is_op("[")) {
      const NodeId arr = begin_node(NodeKind::ArrayCreation);
      node(arr).loc.line = type_tok.line;
      node(arr).loc.column = type_tok.column;
      node(arr).loc.begin = type_tok.offset;
      node(arr).type_name = type;
      while (cur().is_op("[")) {
        next();
        if (!cur().is_op("]")) add_child(arr, parse_expression());
        expect_op("]");
      }
      if (cur().is_op("{")) add_child(arr, parse_variable_initializer());
      node(arr).loc.end = prev_end_offset();
      return arr;
    }
    const NodeId call = begin_node(NodeKind::MethodCall);
    node(call).loc.line = type_tok.line;
    node(call).loc.column = type_tok.column;
    node(call).loc.begin = type_tok.offset;
    const std::size_t dot = type.rfind('.');
    node(call).name = dot == std::string::npos ? type : type.substr(dot + 1);
    node(call).type_name = type;
    node(call).is_constructor_call = true;
    parse_arguments(call);
    if (cur().is_op("{")) skip_balanced("{", "}");  // anonymous class body
    node(call).loc.end = prev_end_offset();
    return call;
  }

  NodeId parse_primary() {
    if (cur().is_op("(")) {
      const Token open = cur();
      next();
      const NodeId e = parse_expression();
      expect_op(")");
      // Widen the span over the parentheses so slices stay balanced.
      node(e).loc.line = open.line;
      node(e).loc.column = open.column;
      node(e).loc.begin = open.offset;
      node(e).loc.end = prev_end_offset();
      return e;
    }
    if (cur().is_kw("new")) {
      const std::size_t new_pos = pos_;
      next();
      const NodeId a = parse_allocation();
      // Extend the span to include `new`.
      node(a).loc.line = tokens_[new_pos].line;
      node(a).loc.column = tokens_[new_pos].column;
      node(a).loc.begin = tokens_[new_pos].offset;
      return a;
    }
    if (cur().is_kw("true") || cur().is_kw("false")) {
      const NodeId l = begin_node(NodeKind::Literal);
      node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Bool);
      node(l).name = std::string(cur().text);
      next();
      end_node_here(l);
      return l;
    }
    if (cur().is_kw("null")) {
      const NodeId l = begin_node(NodeKind::Literal);
      node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Null);
      node(l).name = "null";
      next();
      end_node_here(l);
      return l;
    }
    if (cur().is_literal()) {
      const NodeId l = begin_node(NodeKind::Literal);
      switch (cur().kind) {
        case TokenKind::IntLiteral:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Int);
          break;
        case TokenKind::LongLiteral:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Long);
          break;
        case TokenKind::FloatLiteral:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Float);
          break;
        case TokenKind::DoubleLiteral:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Double);
          break;
        case TokenKind::CharLiteral:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::Char);
          break;
        default:
          node(l).flavor = static_cast<std::uint8_t>(LiteralKind::String);
          break;
      }
      node(l).name = std::string(cur().text);
      next();
      end_node_here(l);
      return l;
    }
    if (cur().is_kw("this") || cur().is_kw("super")) {
      const NodeId n = begin_node(NodeKind::NameRef);
      node(n).name = std::string(cur().text);
      next();
      if (cur().is_op("(")) {
        // this(...)/super(...) constructor delegation.
        const NodeId call = begin_node_at(NodeKind::MethodCall, node(n));
        node(call).name = node(n).name;
        node(call).is_constructor_call = true;
        parse_arguments(call);
        node(call).loc.end = prev_end_offset();
        return call;
      }
      end_node_here(n);
      return n;
    }
    if (at_primitive_type()) {
      // e.g. `int.class`, `void.class`
      const NodeId n = begin_node(NodeKind::NameRef);
      node(n).name = std::string(cur().text);
      next();
      while (cur().is_op("[") && peek().is_op("]")) {
        next();
        next();
        node(n).name += "[]";
      }
      end_node_here(n);
      return n;
    }
    if (cur().kind == TokenKind::Identifier) {
      const std::string name(cur().text);
      const NodeId start = begin_node(NodeKind::NameRef);
      node(start).name = name;
      next();
      if (cur().is_op("(")) {
        // Unqualified call: reuse the NameRef node as the call node.
        node(start).kind = NodeKind::MethodCall;
        node(start).has_receiver = false;
        parse_arguments(start);
        node(start).loc.end = prev_end_offset();
        return start;
      }
      end_node_here(start);
      return start;
    }
    fail("expected expression");
  }

  // ---- post-processing ----------------------------------------------------

  void finalize() {
    // Discarded tentative parses and helper nodes leave unreachable entries
    // in the arena; compact to the preorder-reachable set first.
    std::vector<NodeId> order;
    std::vector<NodeId> remap(ast_.nodes.size(), kNoNode);
    {
      std::vector<NodeId> stack{ast_.root};
      while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        remap[id] = static_cast<NodeId>(order.size());
        order.push_back(id);
        const auto& kids = ast_.nodes[id].children;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
      }
    }
    std::vector<AstNode> compact;
    compact.reserve(order.size());
    for (NodeId id : order) {
      AstNode n = std::move(ast_.nodes[id]);
      for (NodeId& c : n.children) c = remap[c];
      compact.push_back(std::move(n));
    }
    ast_.nodes = std::move(compact);
    ast_.root = 0;

    // Fill parent/stmt/method/cls links with an explicit stack walk.
    struct Frame {
      NodeId id;
      NodeId parent;
      NodeId stmt;
      NodeId method;
      NodeId cls;
    };
    std::vector<Frame> stack;
    stack.push_back({ast_.root, kNoNode, kNoNode, kNoNode, kNoNode});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      AstNode& n = ast_.nodes[f.id];
      n.parent = f.parent;
      // stmt is self-referential for statement nodes; cls/method always name
      // the *enclosing* scope so upward walks terminate.
      const NodeId stmt = n.is_statement ? f.id : f.stmt;
      n.stmt = stmt;
      n.method = f.method;
      n.cls = f.cls;
      const NodeId method = n.kind == NodeKind::MethodDecl ? f.id : f.method;
      const NodeId cls = n.kind == NodeKind::ClassDecl ? f.id : f.cls;
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
        stack.push_back({*it, f.id, stmt, method, cls});
    }
  }

  std::uint32_t file_id_;
  Ast ast_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<Ast> parse_java(std::uint32_t file_id, std::string path, std::string source,
                              ParseDiagnostic* diagnostic) {
  try {
    Parser parser(file_id, std::move(path), std::move(source));
    return parser.run();
  } catch (const ParseError& e) {
    if (diagnostic) {
      diagnostic->line = e.line;
      diagnostic->column = e.column;
      diagnostic->message = e.what();
    }
    return std::nullopt;
  }
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::File: return "file";
    case NodeKind::ClassDecl: return "class-decl";
    case NodeKind::FieldDecl: return "field-decl";
    case NodeKind::MethodDecl: return "method-decl";
    case NodeKind::Parameter: return "parameter";
    case NodeKind::LocalVarDecl: return "local-var-decl";
    case NodeKind::Block: return "block";
    case NodeKind::Assignment: return "assignment";
    case NodeKind::MethodCall: return "method-call";
    case NodeKind::ReturnStmt: return "return-stmt";
    case NodeKind::IfStmt: return "if-stmt";
    case NodeKind::SwitchStmt: return "switch-stmt";
    case NodeKind::SwitchCase: return "switch-case";
    case NodeKind::LoopStmt: return "loop-stmt";
    case NodeKind::TryStmt: return "try-stmt";
    case NodeKind::CatchClause: return "catch-clause";
    case NodeKind::ThrowStmt: return "throw-stmt";
    case NodeKind::OtherStmt: return "other-stmt";
    case NodeKind::BinaryExpr: return "binary-expr";
    case NodeKind::UnaryExpr: return "unary-expr";
    case NodeKind::TernaryExpr: return "ternary-expr";
    case NodeKind::CastExpr: return "cast-expr";
    case NodeKind::Literal: return "literal";
    case NodeKind::NameRef: return "name-ref";
    case NodeKind::FieldAccess: return "field-access";
    case NodeKind::ArrayAccess: return "array-access";
    case NodeKind::ClassLiteralAccess: return "class-literal-access";
    case NodeKind::ArrayCreation: return "array-creation";
    case NodeKind::ArrayInit: return "array-init";
    case NodeKind::LambdaExpr: return "lambda-expr";
  }
  return "unknown";
}

}  // namespace cipscan
