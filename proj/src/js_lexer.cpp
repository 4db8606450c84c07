#include "hybridscan/js_lexer.hpp"

#include <array>
#include <cctype>

namespace hybridscan {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

// Multi-character operators, longest first within each leading byte.
const std::array<std::string_view, 28> kOperators = {
    "===", "!==", ">>>=", ">>>", "<<=", ">>=", "**=", "&&=", "||=", "?\?=",
    "==",  "!=",  "<=",   ">=",  "&&",  "||",  "??",  "=>",  "++",  "--",
    "+=",  "-=",  "*=",   "/=",  "%=",  "&=",  "|=",  "^=",
};

class Lexer {
 public:
  Lexer(std::string_view source, int line_base)
      : source_(source), line_(line_base) {}

  std::vector<Token> run() {
    while (pos_ < source_.size()) {
      skip_space_and_comments();
      if (pos_ >= source_.size()) break;
      lex_token();
    }
    return std::move(tokens_);
  }

 private:
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < source_.size() ? source_[pos_ + ahead] : '\0';
  }

  char take() {
    char c = source_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < source_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < source_.size() && peek() != '\n') take();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        take();
        take();
        while (pos_ < source_.size() && !(peek() == '*' && peek(1) == '/'))
          take();
        if (pos_ < source_.size()) {
          take();
          take();
        }
        continue;
      }
      break;
    }
  }

  Token start_token(TokenKind kind) {
    Token t;
    t.kind = kind;
    t.begin = pos_;
    t.line = line_;
    t.column = column_;
    return t;
  }

  void finish(Token& t) {
    t.end = pos_;
    t.text = std::string(source_.substr(t.begin, t.end - t.begin));
    tokens_.push_back(std::move(t));
  }

  void lex_token() {
    char c = peek();
    if (ident_start(c)) {
      Token t = start_token(TokenKind::Identifier);
      while (pos_ < source_.size() && ident_part(peek())) take();
      finish(t);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      Token t = start_token(TokenKind::Number);
      while (pos_ < source_.size() &&
             (ident_part(peek()) || peek() == '.' ||
              ((peek() == '+' || peek() == '-') &&
               (source_[pos_ - 1] == 'e' || source_[pos_ - 1] == 'E')))) {
        take();
      }
      finish(t);
      return;
    }
    if (c == '"' || c == '\'') {
      lex_string(c);
      return;
    }
    if (c == '`') {
      lex_template();
      return;
    }
    if (c == '/' && regex_possible()) {
      lex_regex();
      return;
    }
    // Punctuation.
    Token t = start_token(TokenKind::Punct);
    for (std::string_view op : kOperators) {
      if (source_.compare(pos_, op.size(), op) == 0) {
        for (size_t i = 0; i < op.size(); ++i) take();
        finish(t);
        return;
      }
    }
    take();
    finish(t);
  }

  void lex_string(char quote) {
    Token t = start_token(TokenKind::String);
    take();  // opening quote
    std::string value;
    while (pos_ < source_.size()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < source_.size()) {
        value += take();
        value += take();
        continue;
      }
      if (c == quote || c == '\n') break;
      value += take();
    }
    if (pos_ < source_.size() && peek() == quote) take();
    t.value = std::move(value);
    finish(t);
  }

  void lex_template() {
    Token t = start_token(TokenKind::Template);
    take();  // backtick
    std::string value;
    while (pos_ < source_.size()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < source_.size()) {
        value += take();
        value += take();
        continue;
      }
      if (c == '`') {
        take();
        break;
      }
      if (c == '$' && peek(1) == '{') {
        take();
        take();
        std::string expr;
        int depth = 1;
        while (pos_ < source_.size() && depth > 0) {
          char e = peek();
          if (e == '{') ++depth;
          if (e == '}') {
            --depth;
            if (depth == 0) {
              take();
              break;
            }
          }
          expr += take();
        }
        t.embedded.push_back(std::move(expr));
        continue;
      }
      value += take();
    }
    t.value = std::move(value);
    finish(t);
  }

  // A '/' starts a regex when the previous significant token cannot end an
  // expression. Heuristic, but good enough to keep regex bodies out of the
  // pattern scan.
  bool regex_possible() const {
    if (tokens_.empty()) return true;
    const Token& prev = tokens_.back();
    switch (prev.kind) {
      case TokenKind::Identifier:
        return is_js_keyword(prev.text) && prev.text != "this";
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::Template:
      case TokenKind::Regex:
        return false;
      case TokenKind::Punct:
        return prev.text != ")" && prev.text != "]" && prev.text != "}" &&
               prev.text != "++" && prev.text != "--";
    }
    return true;
  }

  void lex_regex() {
    Token t = start_token(TokenKind::Regex);
    take();  // '/'
    bool in_class = false;
    while (pos_ < source_.size()) {
      char c = peek();
      if (c == '\\' && pos_ + 1 < source_.size()) {
        take();
        take();
        continue;
      }
      if (c == '\n') break;
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) {
        take();
        break;
      }
      take();
    }
    while (pos_ < source_.size() && ident_part(peek())) take();  // flags
    finish(t);
  }

  std::string_view source_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::vector<Token> tokens_;
};

}  // namespace

bool is_js_keyword(std::string_view word) {
  static const std::array<std::string_view, 34> kKeywords = {
      "break",  "case",   "catch",    "const",  "continue", "default",
      "delete", "do",     "else",     "false",  "finally",  "for",
      "function", "if",   "in",       "instanceof", "let",  "new",
      "null",   "of",     "return",   "switch", "this",     "throw",
      "true",   "try",    "typeof",   "undefined", "var",   "void",
      "while",  "with",   "yield",    "await",
  };
  for (std::string_view k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize_js(std::string_view source, int line_base) {
  return Lexer(source, line_base).run();
}

}  // namespace hybridscan
