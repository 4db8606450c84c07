/**
 * html.hpp — minimal HTML fragment parser and serializer.
 *
 * Supports the markup subset that injection payloads use: elements with
 * quoted/unquoted attributes, text nodes, script elements with raw-text
 * bodies, and the four named entities &lt; &gt; &amp; &quot;. Never fails:
 * malformed input degrades to text nodes, unclosed tags are closed at end
 * of input. Comments, doctypes and processing instructions are skipped.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hybridscan {

struct HtmlAttribute {
  std::string name;   // lowercased
  std::string value;  // entity-decoded
  bool has_value = false;
};

struct HtmlNode {
  enum class Type { Element, Text };

  Type type = Type::Text;
  std::string tag;  // lowercased, elements only
  std::vector<HtmlAttribute> attributes;
  std::vector<HtmlNode> children;
  std::string text;  // text nodes; raw script bodies live in a text child
  // Byte offset of the construct in the parsed input; set for elements and
  // raw-text (script/style) bodies so callers can map back to source lines.
  size_t source_offset = static_cast<size_t>(-1);

  bool is_element() const { return type == Type::Element; }
  bool is_text() const { return type == Type::Text; }
  const HtmlAttribute* find_attribute(std::string_view name) const;
};

struct HtmlFragment {
  std::vector<HtmlNode> nodes;

  // Concatenated content of all text nodes outside script elements.
  std::string text_content() const;
};

bool structurally_equal(const HtmlNode& a, const HtmlNode& b);
bool structurally_equal(const HtmlFragment& a, const HtmlFragment& b);

// Best-effort parse; never throws on malformed input.
HtmlFragment parse_fragment(std::string_view markup);

// Canonical serialization: lowercased names, double-quoted attribute
// values, text re-escaped. parse(serialize(parse(x))) == parse(x).
std::string serialize(const HtmlFragment& fragment);
std::string serialize(const HtmlNode& node);

std::string decode_entities(std::string_view text);
std::string escape_text(std::string_view text);

}  // namespace hybridscan
