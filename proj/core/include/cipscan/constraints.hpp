#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cipscan {

enum class ConstraintType : std::uint8_t {
  ValueComparison,
  DualValueComparison,
  CategoricalValue,
  ConcreteValue,
};

const char* to_string(ConstraintType type);

enum class CompareOp : std::uint8_t { Gt, Ge, Lt, Le, Eq, Ne };

const char* to_string(CompareOp op);
std::optional<CompareOp> parse_compare_op(std::string_view text);

/// Right-hand side of a comparison: another attribute or a constant token.
struct Operand {
  std::string text;
  bool is_constant = false;
};

struct Comparison {
  std::string attribute;
  CompareOp op = CompareOp::Eq;
  Operand operand;
};

struct Membership {
  std::string attribute;
  std::vector<std::string> values;  // at least 2
};

struct AssignmentForm {
  std::string attribute;
  std::string value;
};

struct BooleanForm {
  std::string attribute;
  bool polarity = true;  // false for "not attr" / "== false"
};

using ConstraintExpr = std::variant<Comparison, Membership, AssignmentForm, BooleanForm>;

struct ExprError {
  std::string message;
};

/// Parses the simplified-constraint mini-grammar:
///   attr OP value            (OP in > >= < <= = == != <> ≥ ≤ ≠)
///   attr in {a, b, c}
///   attr is value
///   attr == true|false|null|not-null
///   attr | not attr
/// Attribute names are free-form; internal whitespace is collapsed.
std::optional<ConstraintExpr> parse_constraint_expr(std::string_view text,
                                                    ExprError* error = nullptr);

/// Total and deterministic over well-formed expressions.
ConstraintType classify(const ConstraintExpr& expr);

/// Reference into the corpus naming a data-definition site, or an operator
/// input for comparison-shaped patterns.
struct SeedRef {
  std::string file;
  std::uint32_t line = 0;
  std::string kind;  // field-decl, method-decl, parameter, assignment,
                     // literal-occurrence, or "operator"
  std::string op;    // only for kind == "operator"
};

struct ConstraintRecord {
  std::string id;
  std::string system;
  std::string description;
  std::string simplified;
  std::string scenario;
  std::vector<SeedRef> seeds;
  std::string manual_pattern;  // optional
  std::optional<ConstraintExpr> expr;
};

struct LoadResult {
  std::vector<ConstraintRecord> records;
  std::vector<std::string> diagnostics;  // skipped rows etc.
  bool fatal = false;
  std::string fatal_message;
};

/// Loads constraint records from JSON (array or {"constraints": [...]}) or
/// CSV with columns id,system,description,simplified,scenario,seeds,
/// manual_pattern; seeds are `file:line:kind` joined by ';' (operator seeds
/// as `op:<lexeme>`). Malformed rows are skipped with a diagnostic; a
/// duplicate id is fatal.
LoadResult load_constraints(const std::string& path, const std::string& format);

LoadResult load_constraints_from_text(const std::string& text, const std::string& format);

}  // namespace cipscan
