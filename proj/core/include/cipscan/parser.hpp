#pragma once

#include <optional>
#include <string>

#include "cipscan/ast.hpp"

namespace cipscan {

struct ParseDiagnostic {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::string message;
};

/// Parses one source file into an Ast. On a syntax error the result is empty
/// and `diagnostic` describes the first failure. The supported language level
/// covers classes, interfaces, enums, fields, methods, the full statement and
/// expression grammar, string/char/numeric/boolean/null literals, generics
/// (erased to raw type names), annotations (skipped), and lambdas (kept as
/// opaque expression nodes).
std::optional<Ast> parse_java(std::uint32_t file_id, std::string path, std::string source,
                              ParseDiagnostic* diagnostic = nullptr);

}  // namespace cipscan
