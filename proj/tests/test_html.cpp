#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hybridscan/html.hpp"

using namespace hybridscan;

namespace {

const HtmlNode& only_element(const HtmlFragment& f) {
  REQUIRE(!f.nodes.empty());
  REQUIRE(f.nodes.front().is_element());
  return f.nodes.front();
}

}  // namespace

TEST_CASE("img tag with attributes followed by text") {
  HtmlFragment f =
      parse_fragment("<IMG src=x onerror=\"alert('attack')\">...Data...");
  REQUIRE(f.nodes.size() == 2);
  const HtmlNode& img = f.nodes[0];
  CHECK(img.is_element());
  CHECK(img.tag == "img");  // case-normalized
  REQUIRE(img.attributes.size() == 2);
  CHECK(img.attributes[0].name == "src");
  CHECK(img.attributes[0].value == "x");
  CHECK(img.attributes[1].name == "onerror");
  CHECK(img.attributes[1].value == "alert('attack')");
  CHECK(img.children.empty());  // img is void; text is a sibling
  CHECK(f.nodes[1].is_text());
  CHECK(f.nodes[1].text == "...Data...");
}

TEST_CASE("plain text is a single text node") {
  HtmlFragment f = parse_fragment("plain text");
  REQUIRE(f.nodes.size() == 1);
  CHECK(f.nodes[0].is_text());
  CHECK(f.nodes[0].text == "plain text");
}

TEST_CASE("script element keeps a raw body") {
  HtmlFragment f =
      parse_fragment("<script>alert('attack')</script>...Data...");
  REQUIRE(f.nodes.size() == 2);
  const HtmlNode& script = f.nodes[0];
  CHECK(script.tag == "script");
  REQUIRE(script.children.size() == 1);
  CHECK(script.children[0].text == "alert('attack')");
  CHECK(f.nodes[1].text == "...Data...");
}

TEST_CASE("script body is raw text, markup inside is not parsed") {
  HtmlFragment f = parse_fragment("<script>if(a<b){x='<img>'}</script>");
  const HtmlNode& script = only_element(f);
  REQUIRE(script.children.size() == 1);
  CHECK(script.children[0].text == "if(a<b){x='<img>'}");
}

TEST_CASE("unclosed tags are closed at end of input") {
  HtmlFragment f = parse_fragment("<div><b>bold");
  const HtmlNode& div = only_element(f);
  CHECK(div.tag == "div");
  REQUIRE(div.children.size() == 1);
  CHECK(div.children[0].tag == "b");
  REQUIRE(div.children[0].children.size() == 1);
  CHECK(div.children[0].children[0].text == "bold");
}

TEST_CASE("unquoted and single-quoted attribute values") {
  HtmlFragment f = parse_fragment("<img src onerror=a=\"$.getScr\">");
  const HtmlNode& img = only_element(f);
  REQUIRE(img.attributes.size() == 2);
  CHECK(img.attributes[0].name == "src");
  CHECK_FALSE(img.attributes[0].has_value);
  // The unquoted value runs to the closing '>'.
  CHECK(img.attributes[1].value == "a=\"$.getScr\"");

  HtmlFragment g = parse_fragment("<a title='x y'>t</a>");
  CHECK(only_element(g).attributes[0].value == "x y");
}

TEST_CASE("named entities decode in text and attributes") {
  HtmlFragment f = parse_fragment("a &lt;b&gt; &amp; c");
  CHECK(f.nodes[0].text == "a <b> & c");
  HtmlFragment g = parse_fragment("<img alt=\"&quot;q&quot;\">");
  CHECK(only_element(g).attributes[0].value == "\"q\"");
  // Unknown entities pass through untouched.
  HtmlFragment h = parse_fragment("&copy; &notanentity;");
  CHECK(h.nodes[0].text == "&copy; &notanentity;");
}

TEST_CASE("comments and doctypes are swallowed, not nodes") {
  HtmlFragment f = parse_fragment("<!DOCTYPE html><!-- hi --><p>x</p>");
  REQUIRE(f.nodes.size() == 1);
  CHECK(f.nodes[0].tag == "p");
}

TEST_CASE("pathological input degrades to text") {
  HtmlFragment f = parse_fragment("< not a tag <<< >");
  for (const HtmlNode& n : f.nodes) CHECK(n.is_text());
  CHECK(!parse_fragment("").nodes.size());
}

TEST_CASE("text content skips script bodies") {
  HtmlFragment f = parse_fragment("<b>A</b><script>code()</script>B");
  CHECK(f.text_content() == "AB");
}

TEST_CASE("round-trip is a fixed point on the tree") {
  const char* payloads[] = {
      "<IMG src=x onerror=\"alert('attack')\">...Data...",
      "<script>alert('attack')</script>...Data...",
      "plain text",
      "<script src=//mu.gl></script>",
      "<img src onerror=$.getScript('http://mu.gl')>",
      "<img src onerror=a=\"$.getScr\">",
      "<img src onerror=eval(a+b+c+d)>",
      "<div class=box><p>one</p><p>two &amp; three</p></div>",
      "<a href='x' onclick=\"go()\">link</a> trailing",
      "<ul><li>a<li>b</ul>",
      "mixed <b>bold <i>both</i></b> tail",
  };
  for (const char* payload : payloads) {
    CAPTURE(payload);
    HtmlFragment first = parse_fragment(payload);
    std::string serialized = serialize(first);
    HtmlFragment second = parse_fragment(serialized);
    CHECK(structurally_equal(first, second));
    // Serialization itself is stable from the second pass on.
    CHECK(serialize(second) == serialized);
  }
}

TEST_CASE("source offsets allow line mapping for script bodies") {
  std::string html = "<html>\n<body>\n<script>\nvar x = 1;\n</script>\n";
  HtmlFragment f = parse_fragment(html);
  // find the script node
  const HtmlNode* script = nullptr;
  std::vector<const HtmlNode*> queue;
  for (const HtmlNode& n : f.nodes) queue.push_back(&n);
  while (!queue.empty()) {
    const HtmlNode* n = queue.back();
    queue.pop_back();
    if (n->is_element() && n->tag == "script") script = n;
    for (const HtmlNode& c : n->children) queue.push_back(&c);
  }
  REQUIRE(script != nullptr);
  REQUIRE(!script->children.empty());
  size_t offset = script->children[0].source_offset;
  REQUIRE(offset != static_cast<size_t>(-1));
  CHECK(html.substr(offset, 6) == "\nvar x");
}
