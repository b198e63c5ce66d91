#include <doctest.h>

#include "cipscan/lexer.hpp"
#include "test_support.hpp"

using namespace cipscan;
using test_support::analyze_memory;
using test_support::fixture_path;

TEST_CASE("lexer splits operators and literals") {
  const auto tokens = lex("a >= 0x1F && b != 'c' // trailing\n\"s\\\"tr\"");
  REQUIRE(tokens.size() == 9);  // incl. End
  CHECK(tokens[0].kind == TokenKind::Identifier);
  CHECK(tokens[1].is_op(">="));
  CHECK(tokens[2].kind == TokenKind::IntLiteral);
  CHECK(tokens[3].is_op("&&"));
  CHECK(tokens[5].is_op("!="));
  CHECK(tokens[6].kind == TokenKind::CharLiteral);
  CHECK(tokens[7].kind == TokenKind::StringLiteral);
  CHECK(tokens[7].text == "\"s\\\"tr\"");
}

TEST_CASE("parse_corpus over empty input") {
  const SourceCorpus corpus = parse_corpus_from_memory({});
  CHECK(corpus.files.empty());
  CHECK(corpus.asts.empty());
  CHECK(corpus.parse_failures.empty());
}

TEST_CASE("parse_corpus on the motivating listing") {
  auto corpus = parse_corpus({fixture_path("listing1")});
  REQUIRE(corpus.has_value());
  CHECK(corpus->asts.size() == 1);
  CHECK(corpus->parse_failures.empty());
  const SymbolTable symbols = build_symbols(*corpus);
  CHECK(symbols.fields.count("AgeFactor.age") == 1);
  CHECK(symbols.methods.count("AgeFactor.hasFactor") == 1);
}

TEST_CASE("malformed file is isolated, not fatal") {
  auto corpus = parse_corpus({fixture_path("malformed")});
  REQUIRE(corpus.has_value());
  CHECK(corpus->asts.empty());
  REQUIRE(corpus->parse_failures.size() == 1);
  CHECK(corpus->parse_failures[0].diagnostic.line > 0);
}

TEST_CASE("unreadable root is a fatal error") {
  CorpusError err;
  auto corpus = parse_corpus({fixture_path("no-such-dir")}, "", &err);
  CHECK(!corpus.has_value());
  CHECK(err.message.find("unreadable root") != std::string::npos);
}

TEST_CASE("node text equals the source slice at its span") {
  const auto a = test_support::analyze_fixture("listing1");
  for (const Ast& ast : a.corpus.asts) {
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const AstNode& n = ast.nodes[id];
      REQUIRE(n.loc.begin <= n.loc.end);
      REQUIRE(n.loc.end <= ast.source.size());
      CHECK(ast.text(id) == std::string_view(ast.source).substr(n.loc.begin, n.loc.end - n.loc.begin));
      // line/column point at the first byte of the span
      if (n.loc.begin < ast.source.size() && id != ast.root) {
        std::uint32_t line = 1, col = 1;
        for (std::uint32_t i = 0; i < n.loc.begin; ++i) {
          if (ast.source[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
        }
        CHECK(line == n.loc.line);
        CHECK(col == n.loc.column);
      }
    }
  }
}

TEST_CASE("parsing is deterministic") {
  const std::string source = test_support::read_file(fixture_path("listing1/Listing1.java"));
  auto a = parse_java(0, "L.java", source);
  auto b = parse_java(0, "L.java", source);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  REQUIRE(a->nodes.size() == b->nodes.size());
  for (NodeId i = 0; i < a->nodes.size(); ++i) {
    CHECK(a->nodes[i].kind == b->nodes[i].kind);
    CHECK(a->nodes[i].loc.begin == b->nodes[i].loc.begin);
    CHECK(a->nodes[i].loc.end == b->nodes[i].loc.end);
    CHECK(a->nodes[i].children == b->nodes[i].children);
  }
}

TEST_CASE("build_symbols getter heuristic") {
  const char* source = R"(
class Person {
  int age;
  int getAge() { return age; }
  int getAgePlus() { return age + 1; }
  int getThisAge() { return this.age; }
  void setAge(int value) { age = value; }
}
)";
  auto a = analyze_memory({{"Person.java", source}});
  CHECK(a.symbols.getters.count("Person.getAge") == 1);
  CHECK(a.symbols.getters.count("Person.getThisAge") == 1);
  CHECK(a.symbols.getters.count("Person.getAgePlus") == 0);
  CHECK(a.symbols.getters.count("Person.setAge") == 0);
  CHECK(a.symbols.getter_field.at("Person.getAge") == "Person.age");
}

TEST_CASE("build_symbols keeps the first duplicate and warns") {
  auto a = analyze_memory({
      {"A.java", "class Dup { int x; }"},
      {"B.java", "class Dup { int y; }"},
  });
  CHECK(a.symbols.classes.size() == 1);
  CHECK(a.symbols.fields.count("Dup.x") == 1);
  CHECK(!a.symbols.diagnostics.empty());
}

TEST_CASE("build_symbols is idempotent") {
  const auto corpus = test_support::load_fixture("listing1");
  const SymbolTable s1 = build_symbols(corpus);
  const SymbolTable s2 = build_symbols(corpus);
  CHECK(s1.fields.size() == s2.fields.size());
  CHECK(s1.methods.size() == s2.methods.size());
  CHECK(s1.getters == s2.getters);
  CHECK(s1.enums == s2.enums);
}

TEST_CASE("statements_of: if-chain nodes of the argument loop in source order") {
  const auto a = test_support::analyze_fixture("listing2");
  const std::vector<NodeKind> filter{NodeKind::IfStmt};
  const auto ifs = statements_of(a.corpus, &filter);
  REQUIRE(ifs.size() == 4);
  for (std::size_t i = 1; i < ifs.size(); ++i)
    CHECK(ifs[i - 1]->loc.begin < ifs[i]->loc.begin);
  CHECK(std::string(ifs[0].text()).find("-help") != std::string::npos);
}

TEST_CASE("statements_of: empty corpus and expression filters") {
  const SourceCorpus empty = parse_corpus_from_memory({});
  CHECK(statements_of(empty).empty());

  const auto a = test_support::analyze_fixture("listing1");
  const std::vector<NodeKind> filter{NodeKind::BinaryExpr};
  const auto exprs = statements_of(a.corpus, &filter);
  bool found = false;
  for (const NodeRef& n : exprs)
    if (n.text() == "patient.getAge() > age") found = true;
  CHECK(found);
}

TEST_CASE("enum members and nested classes are indexed") {
  auto a = analyze_memory({{"E.java", R"(
class Outer {
  enum Color { RED, GREEN, BLUE }
  static class Inner { int depth; }
}
)"}});
  REQUIRE(a.symbols.enums.count("Outer.Color") == 1);
  const auto& members = a.symbols.enums.at("Outer.Color");
  CHECK(members == std::vector<std::string>{"RED", "GREEN", "BLUE"});
  CHECK(a.symbols.fields.count("Outer.Inner.depth") == 1);
}

TEST_CASE("parser handles generics, anonymous classes, labels, and enum bodies") {
  auto corpus = parse_corpus({test_support::fixture_path("stress")});
  REQUIRE(corpus.has_value());
  for (const auto& f : corpus->parse_failures)
    MESSAGE(f.path << ":" << f.diagnostic.line << ":" << f.diagnostic.column << ": "
                   << f.diagnostic.message);
  CHECK(corpus->parse_failures.empty());
  REQUIRE(corpus->asts.size() == 1);
  const SymbolTable symbols = build_symbols(*corpus);
  CHECK(symbols.classes.count("Gnarly") == 1);
  CHECK(symbols.classes.count("Shape") == 1);
  CHECK(symbols.enums.count("Strategy") == 1);
  CHECK(symbols.enums.at("Strategy") ==
        std::vector<std::string>{"FAST", "SAFE", "LEGACY"});
  CHECK(symbols.methods.count("Gnarly.classify") == 1);
  // matching over gnarly input must not crash or hang
  const auto instances = match_all(*corpus, symbols);
  CHECK(!instances.empty());
}

TEST_CASE("non-ascii identifiers lex and parse") {
  auto a = analyze_memory({{"U.java", R"(
class Zähler {
  int größe;

  int holeGröße() {
    return größe;
  }
}
)"}});
  CHECK(a.symbols.fields.count("Zähler.größe") == 1);
  CHECK(a.symbols.getters.count("Zähler.holeGröße") == 1);
}
