#include <doctest.h>

#include "cipscan/trace.hpp"
#include "test_support.hpp"

using namespace cipscan;
using test_support::fixture_path;
using test_support::marker_lines;

namespace {

struct TraceFixture {
  SourceCorpus corpus;
  SymbolTable symbols;
};

TraceFixture load(const std::string& relative) {
  auto corpus = parse_corpus({fixture_path(relative)});
  REQUIRE(corpus.has_value());
  REQUIRE(corpus->parse_failures.empty());
  TraceFixture f{std::move(*corpus), {}};
  f.symbols = build_symbols(f.corpus);
  return f;
}


NodeRef statement_on_line(const SourceCorpus& corpus, const std::string& file_suffix,
                          std::uint32_t line) {
  for (const Ast& ast : corpus.asts) {
    if (!std::string(ast.path).ends_with(file_suffix)) continue;
    for (NodeId id = 0; id < ast.nodes.size(); ++id) {
      const AstNode& n = ast.nodes[id];
      if (n.is_statement && n.loc.line == line) return NodeRef{&ast, id};
    }
  }
  return NodeRef{};
}

PatternInstance first_instance(const SourceCorpus& corpus, const SymbolTable& symbols,
                               const std::string& pattern, const std::string& text,
                               const std::string& file_suffix = "") {
  for (const PatternInstance& inst : match_all(corpus, symbols)) {
    if (inst.pattern != pattern || inst.statement_text != text) continue;
    if (!file_suffix.empty() && !std::string(inst.node.ast->path).ends_with(file_suffix))
      continue;
    return inst;
  }
  REQUIRE_MESSAGE(false, "instance not found: " << pattern << " / " << text);
  return {};
}

}  // namespace

TEST_CASE("descent walks into the settings guard") {
  auto f = load("swarm");
  const auto call_line =
      marker_lines(fixture_path("swarm/SpectrogramRenderer.java"), "processSettings();");
  REQUIRE(call_line.size() == 1);
  const NodeRef call_stmt = statement_on_line(f.corpus, "SpectrogramRenderer.java", call_line[0]);
  REQUIRE(call_stmt.valid());

  const NodeRef result =
      descend_enforcing(call_stmt, *find_pattern("binary comparison"), f.corpus, f.symbols);
  const auto guard_line = marker_lines(fixture_path("swarm/SpectrogramRenderer.java"),
                                       "if (settings.spectrogramMaxFreq > wave.getNyquist())");
  REQUIRE(guard_line.size() == 1);
  CHECK(result->loc.line == guard_line[0]);

  // Idempotence: descending from the result stays put.
  const NodeRef again =
      descend_enforcing(result, *find_pattern("binary comparison"), f.corpus, f.symbols);
  CHECK(again == result);
}

TEST_CASE("statement with no invocation is its own fixed point") {
  auto a = test_support::analyze_memory({{"T.java", R"(
class T {
  void f(int x) {
    if (x > 0) { x = 0; }
  }
}
)"}});
  const NodeRef stmt = statement_on_line(a.corpus, "T.java", 4);
  REQUIRE(stmt.valid());
  const NodeRef result =
      descend_enforcing(stmt, *find_pattern("binary comparison"), a.corpus, a.symbols);
  CHECK(result == stmt);
}

TEST_CASE("library call site is the enforcing statement") {
  auto f = load("library_iterator");
  const NodeRef stmt = statement_on_line(f.corpus, "MinFinder.java", 3);
  REQUIRE(stmt.valid());
  const NodeRef result =
      descend_enforcing(stmt, *find_pattern("binary comparison"), f.corpus, f.symbols);
  CHECK(result == stmt);
  CHECK(std::string(result.text()).find("iterator.next()") != std::string::npos);
}

TEST_CASE("mutual recursion terminates at the first candidate in depth-first order") {
  auto f = load("mutual_recursion");
  const auto run_line = marker_lines(fixture_path("mutual_recursion/PingPong.java"),
                                     "return ping(3);");
  REQUIRE(run_line.size() == 1);
  const NodeRef start = statement_on_line(f.corpus, "PingPong.java", run_line[0]);
  REQUIRE(start.valid());
  const NodeRef result =
      descend_enforcing(start, *find_pattern("binary comparison"), f.corpus, f.symbols);
  // Hand-traced: run -> ping (guard matches) -> pong (guard matches) -> ping
  // already visited, so pong's guard is final.
  const auto pong_guard =
      marker_lines(fixture_path("mutual_recursion/PingPong.java"), "ping(depth)");
  REQUIRE(pong_guard.size() == 1);
  CHECK(result->loc.line == pong_guard[0]);
}

TEST_CASE("data definitions: getter resolves to the backing field") {
  auto f = load("listing1ext");
  const PatternInstance inst = first_instance(f.corpus, f.symbols, "binary comparison",
                                              "patient.getAge() > age", "Listing1.java");
  const auto defs = resolve_data_definitions(inst, f.symbols, f.corpus);
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].kind == DataDefKind::FieldDeclaration);
  CHECK(defs[0].symbol == "Patient.age");
  CHECK(defs[1].kind == DataDefKind::FieldDeclaration);
  CHECK(defs[1].symbol == "AgeFactor.age");
}

TEST_CASE("data definitions: computed method, library call, literal, local, parameter") {
  auto a = test_support::analyze_memory({{"T.java", R"(
class Calc {
  int base;

  int calculateValue() {
    return base * 2;
  }
}

class T {
  Calc calc;

  void f(java.util.Request request, int bound) {
    int value = request.getValue();
    int limit = 100;
    if (calc.calculateValue() > value) { g(); }
    if (limit > bound) { g(); }
    if (bound > 45) { g(); }
  }

  void g() {}
}
)"}});
  const auto instances = match_all(a.corpus, a.symbols);

  const PatternInstance* computed = nullptr;
  const PatternInstance* locals = nullptr;
  const PatternInstance* literal = nullptr;
  for (const auto& inst : instances) {
    if (inst.pattern != "binary comparison") continue;
    if (inst.statement_text == "calc.calculateValue() > value") computed = &inst;
    if (inst.statement_text == "limit > bound") locals = &inst;
    if (inst.statement_text == "bound > 45") literal = &inst;
  }
  REQUIRE(computed != nullptr);
  REQUIRE(locals != nullptr);
  REQUIRE(literal != nullptr);

  const auto computed_defs = resolve_data_definitions(*computed, a.symbols, a.corpus);
  REQUIRE(computed_defs.size() == 2);
  CHECK(computed_defs[0].kind == DataDefKind::MethodDeclaration);
  CHECK(computed_defs[0].symbol == "Calc.calculateValue");
  // `value` was assigned from a library call
  CHECK(computed_defs[1].kind == DataDefKind::LibraryCallSite);

  const auto local_defs = resolve_data_definitions(*locals, a.symbols, a.corpus);
  REQUIRE(local_defs.size() == 2);
  CHECK(local_defs[0].kind == DataDefKind::LocalAssignment);
  CHECK(local_defs[0].node->loc.line == 15);
  CHECK(local_defs[1].kind == DataDefKind::ParameterDefinition);

  const auto literal_defs = resolve_data_definitions(*literal, a.symbols, a.corpus);
  REQUIRE(literal_defs.size() == 2);
  CHECK(literal_defs[0].kind == DataDefKind::ParameterDefinition);
  CHECK(literal_defs[1].kind == DataDefKind::LiteralOccurrence);
  CHECK(literal_defs[1].symbol == "45");
}

TEST_CASE("round trip: definitions recompute identically from the enforcing statement") {
  auto f = load("listing1ext");
  const PatternInstance inst = first_instance(f.corpus, f.symbols, "binary comparison",
                                              "patient.getAge() > age");
  const auto once = resolve_data_definitions(inst, f.symbols, f.corpus);
  const auto twice = resolve_data_definitions(inst, f.symbols, f.corpus);
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].kind == twice[i].kind);
    CHECK(once[i].symbol == twice[i].symbol);
    CHECK(once[i].node == twice[i].node);
  }
}

TEST_CASE("assemble_trace validates the definition count") {
  auto f = load("listing1ext");
  const PatternInstance inst = first_instance(f.corpus, f.symbols, "binary comparison",
                                              "patient.getAge() > age");
  auto defs = resolve_data_definitions(inst, f.symbols, f.corpus);
  auto link = assemble_trace("ITR-1", inst, defs, Provenance::Detector);
  REQUIRE(link.has_value());
  CHECK(link->constraint_id == "ITR-1");
  CHECK(link->definitions.size() == 2);
  CHECK(link->provenance == Provenance::Detector);

  TraceError err;
  defs.pop_back();
  auto bad = assemble_trace("ITR-1", inst, defs, Provenance::Detector, &err);
  CHECK(!bad.has_value());
  CHECK(err.message.find("mismatch") != std::string::npos);
}

TEST_CASE("one enforcing statement may serve several constraints") {
  auto f = load("listing1ext");
  const PatternInstance inst = first_instance(f.corpus, f.symbols, "binary comparison",
                                              "patient.getAge() > age");
  auto defs = resolve_data_definitions(inst, f.symbols, f.corpus);
  auto over45 = assemble_trace("ITR-1", inst, defs, Provenance::Manual);
  auto over30 = assemble_trace("ITR-2", inst, defs, Provenance::Manual);
  REQUIRE(over45.has_value());
  REQUIRE(over30.has_value());
  CHECK(over45->enforcing.loc.begin == over30->enforcing.loc.begin);
  CHECK(over45->constraint_id != over30->constraint_id);
}
