#pragma once

#include <string>
#include <vector>

namespace cipscan {

enum class StatementType : std::uint8_t {
  BooleanExpression,
  RelationalExpression,
  ArithmeticExpression,
  MethodCall,
  Assignment,
  ReturnStatement,
  IfStatement,
  SwitchStatement,
  LoopStatement,
  MethodDefinition,
  FileLine,
};

const char* to_string(StatementType type);

enum class PartRole : std::uint8_t {
  Variable,
  Constant,
  Method,
  Field,
  Collection,
  Operator,
};

const char* to_string(PartRole role);

struct PartSpec {
  PartRole role;
  std::vector<std::string> operator_set;  // only for PartRole::Operator
};

enum class FrequencyClass : std::uint8_t { VeryFrequent, Frequent, Rare };

const char* to_string(FrequencyClass freq);

/// One catalog entry: a constraint implementation pattern.
struct CipPattern {
  std::string name;
  std::string description;
  std::vector<StatementType> statement_types;  // >1 entry for compound forms
  std::vector<PartSpec> parts;
  int detector_arity = 0;  // 0 = no detector
  FrequencyClass frequency = FrequencyClass::Rare;

  bool has_detector() const { return detector_arity > 0; }
};

/// The built-in catalog of 30 patterns. Immutable; the returned reference is
/// valid for the process lifetime.
const std::vector<CipPattern>& builtin_catalog();

const CipPattern* find_pattern(const std::string& name);

/// Detector-backed patterns whose detector takes `k` inputs (1, 2, or 3).
std::vector<const CipPattern*> patterns_with_arity(int k);

}  // namespace cipscan
