#include <doctest.h>

#include <random>

#include "cipscan/constraints.hpp"

using namespace cipscan;

namespace {

ConstraintType classify_text(const std::string& text) {
  auto expr = parse_constraint_expr(text);
  REQUIRE_MESSAGE(expr.has_value(), text);
  return classify(*expr);
}

}  // namespace

TEST_CASE("mini-grammar forms parse") {
  SUBCASE("relational comparison against a constant") {
    auto expr = parse_constraint_expr("Content-Length >= 0");
    REQUIRE(expr.has_value());
    const auto& cmp = std::get<Comparison>(*expr);
    CHECK(cmp.attribute == "Content-Length");
    CHECK(cmp.op == CompareOp::Ge);
    CHECK(cmp.operand.text == "0");
    CHECK(cmp.operand.is_constant);
  }
  SUBCASE("comparison of two attributes") {
    auto expr = parse_constraint_expr("max frequency > min frequency");
    REQUIRE(expr.has_value());
    const auto& cmp = std::get<Comparison>(*expr);
    CHECK(cmp.attribute == "max frequency");
    CHECK(!cmp.operand.is_constant);
  }
  SUBCASE("membership") {
    auto expr = parse_constraint_expr("onMissingExtensionPoint in {fail, warn, ignore}");
    REQUIRE(expr.has_value());
    const auto& m = std::get<Membership>(*expr);
    CHECK(m.attribute == "onMissingExtensionPoint");
    CHECK(m.values == std::vector<std::string>{"fail", "warn", "ignore"});
  }
  SUBCASE("declarative assignment") {
    auto expr = parse_constraint_expr("switch date is 1582-10-15");
    REQUIRE(expr.has_value());
    const auto& a = std::get<AssignmentForm>(*expr);
    CHECK(a.attribute == "switch date");
    CHECK(a.value == "1582-10-15");
  }
  SUBCASE("negated boolean attribute") {
    auto expr = parse_constraint_expr("not file available");
    REQUIRE(expr.has_value());
    const auto& b = std::get<BooleanForm>(*expr);
    CHECK(b.attribute == "file available");
    CHECK(!b.polarity);
  }
  SUBCASE("whitespace collapses") {
    auto expr = parse_constraint_expr("  max   frequency  >  0 ");
    REQUIRE(expr.has_value());
    CHECK(std::get<Comparison>(*expr).attribute == "max frequency");
  }
  SUBCASE("empty text is rejected") {
    ExprError err;
    CHECK(!parse_constraint_expr("", &err).has_value());
    CHECK(!err.message.empty());
  }
}

TEST_CASE("table of constraint types") {
  CHECK(classify_text("max frequency > 0") == ConstraintType::ValueComparison);
  CHECK(classify_text("max frequency > min frequency") == ConstraintType::ValueComparison);
  CHECK(classify_text("max frequency > wave Nyquist frequency") ==
        ConstraintType::ValueComparison);
  CHECK(classify_text("file available == false") == ConstraintType::DualValueComparison);
  CHECK(classify_text("file readable == false") == ConstraintType::DualValueComparison);
  CHECK(classify_text("onMissingExtensionPoint in {fail, warn, ignore}") ==
        ConstraintType::CategoricalValue);
  CHECK(classify_text("switch date is 1582-10-15") == ConstraintType::ConcreteValue);
  CHECK(classify_text("Content-Length >= 0") == ConstraintType::ValueComparison);
}

TEST_CASE("equality against a plain constant stays a value comparison") {
  CHECK(classify_text("retries = 7") == ConstraintType::ValueComparison);
  CHECK(classify_text("mode == active") == ConstraintType::ValueComparison);
  CHECK(classify_text("flag == null") == ConstraintType::DualValueComparison);
}

TEST_CASE("reclassification property: dual value needs equality over two values") {
  std::mt19937 rng(20240817);
  const std::vector<std::string> attrs{"size", "max frequency", "file available", "mode"};
  const std::vector<std::string> two_valued{"true", "false", "null", "not-null"};
  const std::vector<std::string> others{"0", "100", "min frequency", "'x'"};
  int dual_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string attr = attrs[rng() % attrs.size()];
    const bool use_two_valued = rng() % 2 == 0;
    const std::string operand =
        use_two_valued ? two_valued[rng() % two_valued.size()] : others[rng() % others.size()];
    const bool equality = rng() % 2 == 0;
    const std::string op = equality ? (rng() % 2 ? "==" : "!=") : (rng() % 2 ? ">" : "<=");

    auto expr = parse_constraint_expr(attr + " " + op + " " + operand);
    REQUIRE(expr.has_value());
    const ConstraintType type = classify(*expr);
    if (type == ConstraintType::DualValueComparison) {
      ++dual_seen;
      CHECK(equality);
      CHECK(use_two_valued);
      // Replacing the operator with a relational one leaves the generic type.
      auto relaxed = parse_constraint_expr(attr + " > " + operand);
      REQUIRE(relaxed.has_value());
      CHECK(classify(*relaxed) == ConstraintType::ValueComparison);
    }
  }
  CHECK(dual_seen > 0);
}

TEST_CASE("classification is deterministic") {
  for (const char* text : {"a > b", "a == true", "x in {p, q}", "y is 3"}) {
    auto e1 = parse_constraint_expr(text);
    auto e2 = parse_constraint_expr(text);
    REQUIRE(e1.has_value());
    REQUIRE(e2.has_value());
    CHECK(classify(*e1) == classify(*e2));
  }
}

TEST_CASE("load_constraints from JSON") {
  const std::string doc = R"({
    "constraints": [
      {"id": "SWA-2", "system": "Swarm",
       "description": "the maximum frequency may be set to any positive value",
       "simplified": "max frequency > 0", "scenario": "Spectrogram settings",
       "seeds": [{"file": "Settings.java", "line": 2, "kind": "field-decl"}],
       "manual_pattern": "binary comparison"},
      {"id": "SWA-3", "system": "Swarm", "description": "no expression", "simplified": ""},
      {"id": "SWA-4", "system": "Swarm", "description": "odd", "simplified": "a > 1"}
    ]
  })";
  const LoadResult result = load_constraints_from_text(doc, "json");
  CHECK(!result.fatal);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].id == "SWA-2");
  CHECK(result.records[0].seeds.size() == 1);
  CHECK(result.records[0].seeds[0].file == "Settings.java");
  CHECK(result.records[0].manual_pattern == "binary comparison");
  REQUIRE(result.diagnostics.size() == 1);  // SWA-3 skipped
}

TEST_CASE("duplicate ids are fatal") {
  const std::string doc =
      R"([{"id": "X", "simplified": "a > 1"}, {"id": "X", "simplified": "b > 2"}])";
  const LoadResult result = load_constraints_from_text(doc, "json");
  CHECK(result.fatal);
  CHECK(result.fatal_message.find("duplicate") != std::string::npos);
}

TEST_CASE("load_constraints from CSV with quoted fields and seeds") {
  const std::string doc =
      "id,system,description,simplified,scenario,seeds,manual_pattern\n"
      "HTC-1,HTTPC,\"Any Content-Length, even zero\",Content-Length >= 0,Validating a "
      "request,Headers.java:12:field-decl;op:>=,binary comparison\n";
  const LoadResult result = load_constraints_from_text(doc, "csv");
  CHECK(!result.fatal);
  REQUIRE(result.records.size() == 1);
  const ConstraintRecord& rec = result.records[0];
  CHECK(rec.description == "Any Content-Length, even zero");
  REQUIRE(rec.seeds.size() == 2);
  CHECK(rec.seeds[0].file == "Headers.java");
  CHECK(rec.seeds[0].line == 12);
  CHECK(rec.seeds[1].kind == "operator");
  CHECK(rec.seeds[1].op == ">=");
}

TEST_CASE("empty constraint file loads to nothing") {
  CHECK(load_constraints_from_text("[]", "json").records.empty());
  CHECK(load_constraints_from_text("id,system,description,simplified\n", "csv").records.empty());
}
