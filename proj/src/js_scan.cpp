#include "hybridscan/js_scan.hpp"

#include <algorithm>
#include <cctype>

namespace hybridscan {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool is_punct(const Token& t, std::string_view text) {
  return t.kind == TokenKind::Punct && t.text == text;
}

bool is_ident(const Token& t) { return t.kind == TokenKind::Identifier; }

bool is_opener(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}

bool is_closer(const Token& t) {
  return t.kind == TokenKind::Punct &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

bool is_assign_op(const Token& t) {
  if (t.kind != TokenKind::Punct) return false;
  return t.text == "=" || t.text == "+=" || t.text == "-=" || t.text == "*=" ||
         t.text == "/=" || t.text == "%=" || t.text == "&&=" ||
         t.text == "||=" || t.text == "?\?=";
}

constexpr size_t kNoMatch = static_cast<size_t>(-1);

struct Builder {
  JsIndex index;
  std::vector<size_t> match;   // opener -> closer
  std::vector<size_t> rmatch;  // closer -> opener

  const std::vector<Token>& toks() const { return index.tokens; }

  void pair_brackets() {
    match.assign(toks().size(), kNoMatch);
    rmatch.assign(toks().size(), kNoMatch);
    std::vector<size_t> stack;
    for (size_t i = 0; i < toks().size(); ++i) {
      if (is_opener(toks()[i])) {
        stack.push_back(i);
      } else if (is_closer(toks()[i]) && !stack.empty()) {
        match[stack.back()] = i;
        rmatch[i] = stack.back();
        stack.pop_back();
      }
    }
  }

  std::vector<std::string> params_inside(size_t open_paren) const {
    std::vector<std::string> params;
    size_t close = match[open_paren];
    if (close == kNoMatch) return params;
    for (size_t i = open_paren + 1; i < close; ++i) {
      if (is_ident(toks()[i]) && !is_js_keyword(toks()[i].text))
        params.push_back(toks()[i].text);
    }
    return params;
  }

  std::string name_before(size_t tok) const {
    // `foo = function(...)`, `foo: function(...)` and the arrow variants.
    if (tok >= 2 &&
        (is_punct(toks()[tok - 1], "=") || is_punct(toks()[tok - 1], ":")) &&
        is_ident(toks()[tok - 2])) {
      return toks()[tok - 2].text;
    }
    return {};
  }

  TokenSpan expression_span_from(size_t start) const {
    int depth = 0;
    size_t i = start;
    for (; i < toks().size(); ++i) {
      const Token& t = toks()[i];
      if (is_opener(t)) {
        ++depth;
        continue;
      }
      if (is_closer(t)) {
        if (depth == 0) break;
        --depth;
        continue;
      }
      if (depth == 0 && (is_punct(t, ";") || is_punct(t, ","))) break;
    }
    return {start, i};
  }

  void collect_functions() {
    for (size_t i = 0; i < toks().size(); ++i) {
      const Token& t = toks()[i];
      if (is_ident(t) && t.text == "function") {
        JsFunction fn;
        fn.header_tok = i;
        fn.line = t.line;
        fn.column = t.column;
        size_t j = i + 1;
        if (j < toks().size() && is_ident(toks()[j])) {
          fn.name = toks()[j].text;
          ++j;
        } else {
          fn.name = name_before(i);
        }
        if (j >= toks().size() || !is_punct(toks()[j], "(")) continue;
        fn.params = params_inside(j);
        size_t close = match[j];
        if (close == kNoMatch || close + 1 >= toks().size()) continue;
        size_t brace = close + 1;
        if (!is_punct(toks()[brace], "{")) continue;
        size_t body_end = match[brace];
        if (body_end == kNoMatch) body_end = toks().size();
        fn.body = {brace + 1, body_end};
        index.functions.push_back(std::move(fn));
        continue;
      }
      if (is_punct(t, "=>")) {
        JsFunction fn;
        fn.line = t.line;
        fn.column = t.column;
        if (i == 0) continue;
        const Token& prev = toks()[i - 1];
        if (is_punct(prev, ")") && rmatch[i - 1] != kNoMatch) {
          size_t open = rmatch[i - 1];
          fn.header_tok = open;
          fn.params = params_inside(open);
          fn.name = name_before(open);
        } else if (is_ident(prev) && !is_js_keyword(prev.text)) {
          fn.header_tok = i - 1;
          fn.params = {prev.text};
          fn.name = name_before(i - 1);
        } else {
          continue;
        }
        if (i + 1 < toks().size() && is_punct(toks()[i + 1], "{")) {
          size_t body_end = match[i + 1];
          if (body_end == kNoMatch) body_end = toks().size();
          fn.body = {i + 2, body_end};
        } else {
          fn.body = expression_span_from(i + 1);
        }
        index.functions.push_back(std::move(fn));
      }
    }
  }

  void assign_scopes() {
    index.function_of.assign(toks().size(), -1);
    std::vector<size_t> order(index.functions.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      size_t la = index.functions[a].body.end - index.functions[a].body.begin;
      size_t lb = index.functions[b].body.end - index.functions[b].body.begin;
      return la > lb;  // outermost first; inner spans overwrite
    });
    for (size_t fi : order) {
      JsFunction& fn = index.functions[fi];
      fn.parent = fn.body.empty() ? -1 : index.function_of[fn.body.begin];
      for (size_t t = fn.body.begin; t < fn.body.end && t < toks().size(); ++t)
        index.function_of[t] = static_cast<int>(fi);
    }
  }

  void collect_calls() {
    for (size_t i = 0; i + 1 < toks().size(); ++i) {
      if (!is_ident(toks()[i]) || is_js_keyword(toks()[i].text)) continue;
      if (!is_punct(toks()[i + 1], "(")) continue;
      if (i > 0 && is_ident(toks()[i - 1]) && toks()[i - 1].text == "function")
        continue;  // function header, not a call

      JsCall call;
      call.method = toks()[i].text;
      call.method_tok = i;
      call.line = toks()[i].line;
      call.column = toks()[i].column;

      std::vector<std::string> parts = {lowered(call.method)};
      size_t k = i;
      while (k >= 2 && is_punct(toks()[k - 1], ".")) {
        const Token& left = toks()[k - 2];
        if (is_ident(left)) {
          parts.insert(parts.begin(), lowered(left.text));
          k -= 2;
          continue;
        }
        if (is_closer(left)) {
          parts.insert(parts.begin(), "()");
        }
        break;
      }
      call.chain_tok = k;
      std::string chain;
      for (size_t p = 0; p < parts.size(); ++p) {
        if (p > 0) chain += '.';
        chain += parts[p];
      }
      call.chain = std::move(chain);

      size_t close = match[i + 1];
      if (close == kNoMatch) {
        call.args_sliced = false;
        index.calls.push_back(std::move(call));
        continue;
      }
      size_t arg_begin = i + 2;
      int depth = 0;
      for (size_t t = arg_begin; t < close; ++t) {
        if (is_opener(toks()[t])) ++depth;
        if (is_closer(toks()[t])) --depth;
        if (depth == 0 && is_punct(toks()[t], ",")) {
          call.args.push_back({arg_begin, t});
          arg_begin = t + 1;
        }
      }
      if (arg_begin < close) call.args.push_back({arg_begin, close});
      index.calls.push_back(std::move(call));
    }
  }

  void collect_assignments() {
    for (size_t i = 0; i < toks().size(); ++i) {
      if (!is_assign_op(toks()[i]) || i == 0) continue;

      // Walk the member chain leftwards from the operator.
      size_t k = i - 1;
      if (is_closer(toks()[k]) && toks()[k].text == "]") {
        // element write `x[expr] = ...`: root is before the bracket
        if (rmatch[k] == kNoMatch || rmatch[k] == 0) continue;
        k = rmatch[k] - 1;
      }
      if (!is_ident(toks()[k]) || is_js_keyword(toks()[k].text)) continue;
      size_t last_ident = k;
      size_t leftmost = k;
      bool has_receiver = false;     // a '.' chain precedes the final name
      bool opaque_receiver = false;  // receiver is a call result, root unknown
      while (leftmost >= 2 && is_punct(toks()[leftmost - 1], ".")) {
        size_t left = leftmost - 2;
        if (is_ident(toks()[left])) {
          has_receiver = true;
          leftmost = left;
          continue;
        }
        if (is_closer(toks()[left]) && toks()[left].text == "]" &&
            rmatch[left] != kNoMatch && rmatch[left] >= 1 &&
            is_ident(toks()[rmatch[left] - 1])) {
          has_receiver = true;
          leftmost = rmatch[left] - 1;
          continue;
        }
        if (is_closer(toks()[left]) && toks()[left].text == ")") {
          // e.g. document.getElementById('x').innerHTML = ...
          has_receiver = true;
          opaque_receiver = true;
        }
        break;
      }
      JsAssignment a;
      a.lhs_root = opaque_receiver ? std::string() : toks()[leftmost].text;
      if (has_receiver && last_ident != leftmost) {
        a.lhs_property = toks()[last_ident].text;
      } else if (has_receiver && opaque_receiver) {
        a.lhs_property = toks()[last_ident].text;
      }
      a.lhs_text = std::string(index.source.substr(
          toks()[leftmost].begin, toks()[i - 1].end - toks()[leftmost].begin));
      a.compound = toks()[i].text != "=";
      a.op_tok = i;
      a.rhs = expression_span_from(i + 1);
      a.line = toks()[leftmost].line;
      a.column = toks()[leftmost].column;
      index.assignments.push_back(std::move(a));
    }
  }
};

void extract_identifiers(const std::vector<Token>& toks, size_t begin,
                         size_t end, std::vector<std::string>& out) {
  for (size_t i = begin; i < end && i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::Template) {
      for (const std::string& expr : t.embedded) {
        std::vector<Token> inner = tokenize_js(expr);
        extract_identifiers(inner, 0, inner.size(), out);
      }
      continue;
    }
    if (!is_ident(t) || is_js_keyword(t.text)) continue;
    if (i > begin && is_punct(toks[i - 1], ".")) continue;  // property position
    if (i + 1 < end && is_punct(toks[i + 1], ":") && i > begin &&
        (is_punct(toks[i - 1], "{") || is_punct(toks[i - 1], ","))) {
      continue;  // object literal key
    }
    out.push_back(t.text);
  }
}

}  // namespace

std::string JsIndex::text_of(const TokenSpan& span, size_t max_chars) const {
  if (span.empty() || span.begin >= tokens.size()) return {};
  size_t last = std::min(span.end, tokens.size()) - 1;
  std::string raw(source.substr(tokens[span.begin].begin,
                                tokens[last].end - tokens[span.begin].begin));
  std::string out;
  bool in_space = false;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += c;
  }
  if (max_chars > 0 && out.size() > max_chars) {
    out.resize(max_chars);
    out += "...";
  }
  return out;
}

bool JsIndex::in_function(size_t tok, int fn) const {
  if (fn < 0) return true;  // top-level scope contains everything
  if (tok >= function_of.size()) return false;
  int cur = function_of[tok];
  while (cur != -1) {
    if (cur == fn) return true;
    cur = functions[static_cast<size_t>(cur)].parent;
  }
  return false;
}

std::vector<std::string> JsIndex::identifiers_in(const TokenSpan& span) const {
  std::vector<std::string> out;
  extract_identifiers(tokens, span.begin, std::min(span.end, tokens.size()),
                      out);
  return out;
}

const JsFunction* JsIndex::find_function(std::string_view name) const {
  if (name.empty()) return nullptr;
  for (const JsFunction& fn : functions) {
    if (fn.name == name) return &fn;
  }
  return nullptr;
}

JsIndex index_js(std::string_view source, int line_base) {
  Builder b;
  b.index.source = std::string(source);
  b.index.tokens = tokenize_js(b.index.source, line_base);
  b.pair_brackets();
  b.collect_functions();
  b.assign_scopes();
  b.collect_calls();
  b.collect_assignments();
  return std::move(b.index);
}

}  // namespace hybridscan
