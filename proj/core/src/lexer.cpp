#include "cipscan/lexer.hpp"

#include <array>
#include <cctype>

namespace cipscan {

namespace {

const std::array<std::string_view, 53> kKeywords = {
    "abstract",   "assert",       "boolean",  "break",      "byte",
    "case",       "catch",        "char",     "class",      "const",
    "continue",   "default",      "do",       "double",     "else",
    "enum",       "extends",      "final",    "finally",    "float",
    "for",        "goto",         "if",       "implements", "import",
    "instanceof", "int",          "interface","long",       "native",
    "new",        "package",      "private",  "protected",  "public",
    "return",     "short",        "static",   "strictfp",   "super",
    "switch",     "synchronized", "this",     "throw",      "throws",
    "transient",  "try",          "void",     "volatile",   "while",
    "true",       "false",        "null",
};

// Longest-match-first operator table.
const std::array<std::string_view, 38> kOperators = {
    ">>>=", ">>>", ">>=", "<<=", "->", "::", "++", "--", "<<", ">>",
    "<=",   ">=",  "==",  "!=",  "&&", "||", "+=", "-=", "*=", "/=",
    "&=",   "|=",  "^=",  "%=",  "(",  ")",  "{",  "}",  "[",  "]",
    ";",    ",",   ".",   "@",   "?",  ":",  "=",  "<",
};

// Bytes >= 0x80 are UTF-8 continuation/lead bytes of non-ASCII identifiers.
bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex_digit(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

struct Cursor {
  std::string_view src;
  std::size_t pos = 0;
  std::uint32_t line = 1;
  std::uint32_t col = 1;

  bool done() const { return pos >= src.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void advance_n(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) advance();
  }
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  for (std::string_view kw : kKeywords)
    if (kw == word) return true;
  return false;
}

std::vector<Token> lex(std::string_view source, std::vector<LexError>* errors) {
  std::vector<Token> out;
  Cursor cur{source};

  auto emit = [&](TokenKind kind, std::size_t begin, std::uint32_t line, std::uint32_t col) {
    out.push_back(Token{kind, source.substr(begin, cur.pos - begin), line, col,
                        static_cast<std::uint32_t>(begin)});
  };
  auto report = [&](std::uint32_t line, std::uint32_t col, std::string msg) {
    if (errors) errors->push_back(LexError{line, col, std::move(msg)});
  };

  while (!cur.done()) {
    const char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '*') {
      const std::uint32_t line = cur.line, col = cur.col;
      cur.advance_n(2);
      bool closed = false;
      while (!cur.done()) {
        if (cur.peek() == '*' && cur.peek(1) == '/') {
          cur.advance_n(2);
          closed = true;
          break;
        }
        cur.advance();
      }
      if (!closed) report(line, col, "unterminated block comment");
      continue;
    }

    const std::size_t begin = cur.pos;
    const std::uint32_t line = cur.line, col = cur.col;

    if (is_ident_start(c)) {
      while (!cur.done() && is_ident_part(cur.peek())) cur.advance();
      std::string_view word = source.substr(begin, cur.pos - begin);
      emit(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, line, col);
      continue;
    }

    if (is_digit(c) || (c == '.' && is_digit(cur.peek(1)))) {
      bool is_float = false;
      if (c == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X')) {
        cur.advance_n(2);
        while (!cur.done() && (is_hex_digit(cur.peek()) || cur.peek() == '_')) cur.advance();
      } else if (c == '0' && (cur.peek(1) == 'b' || cur.peek(1) == 'B')) {
        cur.advance_n(2);
        while (!cur.done() && (cur.peek() == '0' || cur.peek() == '1' || cur.peek() == '_'))
          cur.advance();
      } else {
        while (!cur.done() && (is_digit(cur.peek()) || cur.peek() == '_')) cur.advance();
        if (cur.peek() == '.' && is_digit(cur.peek(1))) {
          is_float = true;
          cur.advance();
          while (!cur.done() && (is_digit(cur.peek()) || cur.peek() == '_')) cur.advance();
        } else if (cur.peek() == '.' && c != '.') {
          // "1." with no fraction digits is still a double literal
          is_float = true;
          cur.advance();
        }
        if (cur.peek() == 'e' || cur.peek() == 'E') {
          is_float = true;
          cur.advance();
          if (cur.peek() == '+' || cur.peek() == '-') cur.advance();
          while (!cur.done() && is_digit(cur.peek())) cur.advance();
        }
      }
      TokenKind kind = is_float ? TokenKind::DoubleLiteral : TokenKind::IntLiteral;
      if (cur.peek() == 'l' || cur.peek() == 'L') {
        cur.advance();
        kind = TokenKind::LongLiteral;
      } else if (cur.peek() == 'f' || cur.peek() == 'F') {
        cur.advance();
        kind = TokenKind::FloatLiteral;
      } else if (cur.peek() == 'd' || cur.peek() == 'D') {
        cur.advance();
        kind = TokenKind::DoubleLiteral;
      }
      emit(kind, begin, line, col);
      continue;
    }

    if (c == '"') {
      cur.advance();
      bool closed = false;
      while (!cur.done()) {
        if (cur.peek() == '\\' && cur.pos + 1 < source.size()) {
          cur.advance_n(2);
          continue;
        }
        if (cur.peek() == '"') {
          cur.advance();
          closed = true;
          break;
        }
        if (cur.peek() == '\n') break;
        cur.advance();
      }
      if (!closed) report(line, col, "unterminated string literal");
      emit(TokenKind::StringLiteral, begin, line, col);
      continue;
    }

    if (c == '\'') {
      cur.advance();
      bool closed = false;
      while (!cur.done()) {
        if (cur.peek() == '\\' && cur.pos + 1 < source.size()) {
          cur.advance_n(2);
          continue;
        }
        if (cur.peek() == '\'') {
          cur.advance();
          closed = true;
          break;
        }
        if (cur.peek() == '\n') break;
        cur.advance();
      }
      if (!closed) report(line, col, "unterminated char literal");
      emit(TokenKind::CharLiteral, begin, line, col);
      continue;
    }

    bool matched = false;
    for (std::string_view op : kOperators) {
      if (source.substr(cur.pos, op.size()) == op) {
        cur.advance_n(op.size());
        emit(TokenKind::Operator, begin, line, col);
        matched = true;
        break;
      }
    }
    if (matched) continue;

    // Remaining single-char operators not in the multi-char table.
    if (std::string_view("+-*/%&|^!~>").find(c) != std::string_view::npos) {
      cur.advance();
      emit(TokenKind::Operator, begin, line, col);
      continue;
    }

    report(line, col, std::string("unexpected character '") + c + "'");
    cur.advance();
  }

  out.push_back(Token{TokenKind::End, std::string_view(), cur.line, cur.col,
                      static_cast<std::uint32_t>(cur.pos)});
  return out;
}

}  // namespace cipscan
