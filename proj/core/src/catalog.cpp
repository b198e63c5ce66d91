#include "cipscan/catalog.hpp"

#include <stdexcept>

namespace cipscan {

namespace {

PartSpec var() { return {PartRole::Variable, {}}; }
PartSpec constant() { return {PartRole::Constant, {}}; }
PartSpec method() { return {PartRole::Method, {}}; }
PartSpec field() { return {PartRole::Field, {}}; }
PartSpec collection() { return {PartRole::Collection, {}}; }
PartSpec relational_op() {
  return {PartRole::Operator, {">", ">=", "<", "<=", "==", "!="}};
}

std::vector<CipPattern> make_catalog() {
  std::vector<CipPattern> c;
  auto add = [&c](std::string name, std::string description,
                  std::vector<StatementType> types, std::vector<PartSpec> parts,
                  int arity, FrequencyClass freq) {
    CipPattern p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.statement_types = std::move(types);
    p.parts = std::move(parts);
    p.detector_arity = arity;
    p.frequency = freq;
    c.push_back(std::move(p));
  };

  const auto VF = FrequencyClass::VeryFrequent;
  const auto F = FrequencyClass::Frequent;
  const auto R = FrequencyClass::Rare;

  add("boolean property",
      "A variable of type Boolean is checked in a Boolean expression.",
      {StatementType::BooleanExpression}, {var()}, 1, VF);
  add("binary comparison",
      "Two variables are compared using one of the relational operators; a "
      "call to the equals method counts as the equality operator.",
      {StatementType::RelationalExpression}, {var(), relational_op(), var()}, 3, VF);
  add("constant argument", "A literal value is passed as a parameter to a method call.",
      {StatementType::MethodCall}, {method(), constant()}, 2, F);
  add("null check",
      "A nullable variable is tested for nullity with == or !=; the null "
      "keyword is not a part of the pattern.",
      {StatementType::RelationalExpression}, {var()}, 1, F);
  add("assign constant", "A literal value is assigned to a variable.",
      {StatementType::Assignment}, {var(), constant()}, 2, F);
  add("binary flag check",
      "An integer variable is used as a bit field and checked with a bitwise "
      "operator against a constant integer.",
      {StatementType::RelationalExpression}, {var(), constant()}, 2, F);
  add("if chain",
      "A chain of ifs is used like a switch on a variable, each clause "
      "testing one of its possible values with == or equals.",
      {StatementType::IfStatement}, {var()}, 1, F);
  add("equals or chain",
      "Equality expressions (or equals calls) chained by or-operators, "
      "checking possible values of a variable.",
      {StatementType::BooleanExpression}, {var()}, 1, F);
  add("properties file", "The value for a variable is stored in a file.",
      {StatementType::FileLine}, {constant()}, 0, F);
  add("polymorphic method",
      "Conditional branching is achieved by calling a method in a superclass "
      "that is overridden in a subclass.",
      {StatementType::MethodCall}, {method()}, 0, F);
  add("null-empty check",
      "A string is checked for nullity and compared to the empty string; "
      "both expressions must be present.",
      {StatementType::BooleanExpression}, {var()}, 1, F);
  add("null-zero check",
      "A value is checked for nullity and its length or other numeric "
      "property is compared to zero; both expressions must be present.",
      {StatementType::BooleanExpression}, {var()}, 1, F);
  add("return constant", "Return a literal value.",
      {StatementType::ReturnStatement}, {constant()}, 1, F);
  add("switch-len char",
      "A switch on the length of a string followed by checks of specific "
      "characters.",
      {StatementType::SwitchStatement}, {var()}, 1, F);
  add("self comparison", "A variable is compared to itself.",
      {StatementType::RelationalExpression}, {var()}, 1, F);
  add("str starts", "The startsWith method is called on a string variable.",
      {StatementType::MethodCall}, {var()}, 0, R);
  add("null-boolean check",
      "A variable is checked for nullity and then one of its boolean "
      "properties is checked; both expressions must be present.",
      {StatementType::BooleanExpression}, {var()}, 0, R);
  add("setter", "A setter method is used to assign a value to a field.",
      {StatementType::MethodCall}, {method(), var()}, 0, R);
  add("constructor assign",
      "A field is initialized in a constructor or builder method without "
      "using any of the parameters.",
      {StatementType::Assignment}, {field()}, 0, R);
  add("delta check",
      "Two variables are subtracted and their difference is compared to zero.",
      {StatementType::ArithmeticExpression, StatementType::BooleanExpression},
      {var(), var()}, 0, R);
  add("enum valueOf",
      "The valueOf method of an enum ensures that a string represents a "
      "valid member of the enum.",
      {StatementType::MethodCall}, {var()}, 0, R);
  add("iterate-and-check literal",
      "A variable is checked by iterating over a collection of possible "
      "values and testing equality for each one.",
      {StatementType::LoopStatement}, {var(), collection()}, 0, R);
  add("mod op",
      "Restricts the values a variable can take to the possible remainders "
      "of a division.",
      {StatementType::ArithmeticExpression}, {var()}, 0, R);
  add("str ends", "The endsWith method is called on a string variable.",
      {StatementType::MethodCall}, {var()}, 0, R);
  add("switch case",
      "One of the cases of a switch on an enum-typed variable checks the "
      "value.",
      {StatementType::SwitchStatement}, {var()}, 0, R);
  add("override value set",
      "Each allowable value of a set is defined as the return value of an "
      "override of an abstract method.",
      {StatementType::MethodDefinition}, {method()}, 0, R);
  add("cast self-comparison",
      "A numeric variable is cast to another type and compared to the "
      "original variable.",
      {StatementType::Assignment, StatementType::BooleanExpression}, {var()}, 0, R);
  add("index loop find",
      "Iterate over a collection of possible values returning the index on a "
      "match and -1 at the end.",
      {StatementType::LoopStatement, StatementType::ReturnStatement},
      {collection(), var()}, 0, R);
  add("assign class call",
      "Assigns a value derived from a method call on the result of a .class "
      "construct.",
      {StatementType::Assignment}, {var()}, 0, R);
  add("if-return chain",
      "A chain of ifs used like a switch on a field, with no else blocks and "
      "a return statement as the body of each if.",
      {StatementType::IfStatement}, {var()}, 0, R);
  return c;
}

}  // namespace

const std::vector<CipPattern>& builtin_catalog() {
  static const std::vector<CipPattern> catalog = make_catalog();
  return catalog;
}

const CipPattern* find_pattern(const std::string& name) {
  for (const CipPattern& p : builtin_catalog())
    if (p.name == name) return &p;
  return nullptr;
}

std::vector<const CipPattern*> patterns_with_arity(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("detector arity must be 1, 2, or 3");
  std::vector<const CipPattern*> out;
  for (const CipPattern& p : builtin_catalog())
    if (p.detector_arity == k) out.push_back(&p);
  return out;
}

const char* to_string(StatementType type) {
  switch (type) {
    case StatementType::BooleanExpression: return "boolean-expression";
    case StatementType::RelationalExpression: return "relational-expression";
    case StatementType::ArithmeticExpression: return "arithmetic-expression";
    case StatementType::MethodCall: return "method-call";
    case StatementType::Assignment: return "assignment";
    case StatementType::ReturnStatement: return "return-statement";
    case StatementType::IfStatement: return "if-statement";
    case StatementType::SwitchStatement: return "switch-statement";
    case StatementType::LoopStatement: return "loop-statement";
    case StatementType::MethodDefinition: return "method-definition";
    case StatementType::FileLine: return "file-line";
  }
  return "unknown";
}

const char* to_string(PartRole role) {
  switch (role) {
    case PartRole::Variable: return "variable";
    case PartRole::Constant: return "constant";
    case PartRole::Method: return "method";
    case PartRole::Field: return "field";
    case PartRole::Collection: return "collection";
    case PartRole::Operator: return "operator";
  }
  return "unknown";
}

const char* to_string(FrequencyClass freq) {
  switch (freq) {
    case FrequencyClass::VeryFrequent: return "very-frequent";
    case FrequencyClass::Frequent: return "frequent";
    case FrequencyClass::Rare: return "rare";
  }
  return "unknown";
}

}  // namespace cipscan
