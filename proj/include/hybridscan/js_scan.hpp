/**
 * js_scan.hpp — lightweight statement/expression recovery over JS tokens.
 *
 * Recovers the constructs the scanner cares about — call expressions with
 * member-access chains and sliced arguments, assignments with their
 * right-hand spans, and function literals with parameter lists and body
 * spans — without building a full AST. Anything it cannot shape simply
 * stays out of the index; the token stream itself remains available for
 * lexical fallbacks.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hybridscan/js_lexer.hpp"

namespace hybridscan {

// Token index span [begin, end).
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;
  bool empty() const { return begin >= end; }
};

struct JsFunction {
  std::string name;  // declared or assigned name; may be empty
  std::vector<std::string> params;
  size_t header_tok = 0;  // first token of the literal
  TokenSpan body;
  int parent = -1;  // enclosing function index, -1 for top level
  int line = 1;
  int column = 1;
};

struct JsCall {
  std::string chain;          // lowered dotted identifier chain, e.g. "document.write";
                              // a computed receiver is abbreviated to "()"
  std::string method;         // last chain component, original spelling
  size_t chain_tok = 0;       // first token of the identifier chain
  size_t method_tok = 0;
  std::vector<TokenSpan> args;
  bool args_sliced = true;    // false when the argument list could not be recovered
  int line = 1;
  int column = 1;
};

struct JsAssignment {
  std::string lhs_root;      // leading identifier of the target
  std::string lhs_property;  // last member name for chained targets, else ""
  std::string lhs_text;
  bool compound = false;     // "+=" and friends
  TokenSpan rhs;
  size_t op_tok = 0;
  int line = 1;
  int column = 1;
};

struct JsIndex {
  std::string source;
  std::vector<Token> tokens;
  std::vector<JsFunction> functions;
  std::vector<JsCall> calls;
  std::vector<JsAssignment> assignments;
  std::vector<int> function_of;  // innermost function per token, -1 top level

  std::string text_of(const TokenSpan& span, size_t max_chars = 0) const;
  // True when token index `tok` lies inside function `fn` (or a nested one).
  bool in_function(size_t tok, int fn) const;
  // Identifiers read by the span, property/key positions excluded.
  std::vector<std::string> identifiers_in(const TokenSpan& span) const;
  const JsFunction* find_function(std::string_view name) const;
};

JsIndex index_js(std::string_view source, int line_base = 1);

}  // namespace hybridscan
