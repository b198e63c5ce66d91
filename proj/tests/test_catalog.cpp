#include <doctest.h>

#include <set>

#include "cipscan/catalog.hpp"

using namespace cipscan;

TEST_CASE("catalog has exactly 30 patterns with unique names") {
  const auto& catalog = builtin_catalog();
  REQUIRE(catalog.size() == 30);
  std::set<std::string> names;
  for (const CipPattern& p : catalog) names.insert(p.name);
  CHECK(names.size() == 30);
}

TEST_CASE("exactly 13 patterns are detector-backed") {
  std::size_t detectors = 0;
  for (const CipPattern& p : builtin_catalog())
    if (p.has_detector()) ++detectors;
  CHECK(detectors == 13);
  CHECK(find_pattern("properties file")->detector_arity == 0);
  CHECK(find_pattern("polymorphic method")->detector_arity == 0);
}

TEST_CASE("detector arity equals the part count for detector-backed patterns") {
  for (const CipPattern& p : builtin_catalog()) {
    if (!p.has_detector()) continue;
    CHECK(p.detector_arity == static_cast<int>(p.parts.size()));
  }
}

TEST_CASE("binary comparison parts: variable, relational operator, variable") {
  const CipPattern* p = find_pattern("binary comparison");
  REQUIRE(p != nullptr);
  REQUIRE(p->parts.size() == 3);
  CHECK(p->parts[0].role == PartRole::Variable);
  CHECK(p->parts[1].role == PartRole::Operator);
  CHECK(p->parts[2].role == PartRole::Variable);
  const std::vector<std::string> ops{">", ">=", "<", "<=", "==", "!="};
  CHECK(p->parts[1].operator_set == ops);
}

TEST_CASE("null check binds only the variable") {
  const CipPattern* p = find_pattern("null check");
  REQUIRE(p != nullptr);
  REQUIRE(p->parts.size() == 1);
  CHECK(p->parts[0].role == PartRole::Variable);
}

TEST_CASE("setter parts follow the appendix: method then variable") {
  const CipPattern* p = find_pattern("setter");
  REQUIRE(p != nullptr);
  REQUIRE(p->parts.size() == 2);
  CHECK(p->parts[0].role == PartRole::Method);
  CHECK(p->parts[1].role == PartRole::Variable);
  CHECK(p->detector_arity == 0);
}

TEST_CASE("patterns_with_arity partitions the 13 detectors") {
  const auto three = patterns_with_arity(3);
  REQUIRE(three.size() == 1);
  CHECK(three[0]->name == "binary comparison");

  const auto two = patterns_with_arity(2);
  std::set<std::string> two_names;
  for (const CipPattern* p : two) two_names.insert(p->name);
  CHECK(two_names == std::set<std::string>{"constant argument", "assign constant",
                                           "binary flag check"});

  const auto one = patterns_with_arity(1);
  std::set<std::string> one_names;
  for (const CipPattern* p : one) one_names.insert(p->name);
  CHECK(one_names == std::set<std::string>{
                         "boolean property", "null check", "if chain", "equals or chain",
                         "switch-len char", "self comparison", "return constant",
                         "null-zero check", "null-empty check"});
  CHECK_THROWS(patterns_with_arity(0));
  CHECK_THROWS(patterns_with_arity(4));
}

TEST_CASE("frequency strata: 2 very frequent, 13 frequent, 15 rare") {
  std::size_t very = 0, frequent = 0, rare = 0;
  for (const CipPattern& p : builtin_catalog()) {
    switch (p.frequency) {
      case FrequencyClass::VeryFrequent: ++very; break;
      case FrequencyClass::Frequent: ++frequent; break;
      case FrequencyClass::Rare: ++rare; break;
    }
  }
  CHECK(very == 2);
  CHECK(frequent == 13);
  CHECK(rare == 15);
  CHECK(find_pattern("boolean property")->frequency == FrequencyClass::VeryFrequent);
  CHECK(find_pattern("binary comparison")->frequency == FrequencyClass::VeryFrequent);
}

TEST_CASE("compound statement types only where the catalog defines them") {
  std::set<std::string> compound;
  for (const CipPattern& p : builtin_catalog())
    if (p.statement_types.size() > 1) compound.insert(p.name);
  CHECK(compound == std::set<std::string>{"delta check", "cast self-comparison",
                                          "index loop find"});
}
