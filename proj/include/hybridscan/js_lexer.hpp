/**
 * js_lexer.hpp — JavaScript tokenizer.
 *
 * Produces the token stream the scanner patterns over: identifiers,
 * numbers, string/template literals, regex literals and punctuation,
 * with line/column positions. Comments and whitespace are dropped.
 * This is a scanner-grade lexer, not a conforming one: its job is to
 * keep literals and comments from confusing pattern matching.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hybridscan {

enum class TokenKind {
  Identifier,
  Number,
  String,
  Template,
  Regex,
  Punct,
};

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string text;   // raw token text (quotes included for literals)
  std::string value;  // string/template: inner text without quotes
  std::vector<std::string> embedded;  // template ${...} expression sources
  size_t begin = 0;   // byte offsets into the source
  size_t end = 0;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize_js(std::string_view source, int line_base = 1);

bool is_js_keyword(std::string_view word);

}  // namespace hybridscan
