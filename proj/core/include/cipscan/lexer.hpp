#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cipscan {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  LongLiteral,
  FloatLiteral,
  DoubleLiteral,
  CharLiteral,
  StringLiteral,
  Operator,  // operators and punctuation
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::uint32_t offset = 0;

  bool is(TokenKind k) const { return kind == k; }
  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_op(std::string_view t) const { return kind == TokenKind::Operator && text == t; }
  bool is_kw(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
  bool is_literal() const {
    return kind == TokenKind::IntLiteral || kind == TokenKind::LongLiteral ||
           kind == TokenKind::FloatLiteral || kind == TokenKind::DoubleLiteral ||
           kind == TokenKind::CharLiteral || kind == TokenKind::StringLiteral;
  }
};

struct LexError {
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  std::string message;
};

/// Tokenizes source text of the analyzed language. Comments and whitespace
/// are skipped; token views alias the input buffer, which must outlive the
/// token list. A trailing End token is always appended.
std::vector<Token> lex(std::string_view source, std::vector<LexError>* errors = nullptr);

bool is_java_keyword(std::string_view word);

}  // namespace cipscan
