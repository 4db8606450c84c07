#include "hybridscan/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace hybridscan {

namespace {

bool is_void_element(std::string_view tag) {
  static const std::array<std::string_view, 14> kVoid = {
      "area", "base", "br",     "col",  "embed",  "hr",    "img",
      "input", "link", "meta",  "param", "source", "track", "wbr"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

bool is_raw_text_element(std::string_view tag) {
  return tag == "script" || tag == "style";
}

char to_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), to_lower);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view input) : input_(input) {}

  HtmlFragment run() {
    HtmlFragment fragment;
    // Stack of open elements; indices into the growing tree.
    std::vector<HtmlNode*> open;
    std::string pending_text;

    auto flush_text = [&] {
      if (pending_text.empty()) return;
      HtmlNode text;
      text.type = HtmlNode::Type::Text;
      text.text = decode_entities(pending_text);
      append_node(fragment, open, std::move(text));
      pending_text.clear();
    };

    while (!at_end()) {
      char c = peek();
      if (c != '<') {
        pending_text += take();
        continue;
      }
      // '<' — decide whether this starts real markup.
      if (starts_with("<!--")) {
        flush_text();
        skip_comment();
        continue;
      }
      if (starts_with("<!") || starts_with("<?")) {
        flush_text();
        skip_until('>');
        continue;
      }
      if (starts_with("</")) {
        size_t mark = pos_;
        pos_ += 2;
        std::string name = read_tag_name();
        skip_until('>');
        if (name.empty()) {
          pos_ = mark;
          pending_text += take();  // stray "</", keep as text
          continue;
        }
        flush_text();
        close_element(open, name);
        continue;
      }
      if (pos_ + 1 < input_.size() && is_alpha(input_[pos_ + 1])) {
        flush_text();
        parse_start_tag(fragment, open);
        continue;
      }
      pending_text += take();  // lone '<'
    }
    flush_text();
    return fragment;
  }

 private:
  bool at_end() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }
  char take() { return input_[pos_++]; }
  bool starts_with(std::string_view s) const {
    return input_.compare(pos_, s.size(), s) == 0;
  }

  void skip_until(char stop) {
    while (!at_end() && take() != stop) {
    }
  }

  void skip_comment() {
    pos_ += 4;  // "<!--"
    size_t end = input_.find("-->", pos_);
    pos_ = (end == std::string_view::npos) ? input_.size() : end + 3;
  }

  std::string read_tag_name() {
    std::string name;
    while (!at_end()) {
      char c = peek();
      if (is_alpha(c) || std::isdigit(static_cast<unsigned char>(c)) ||
          c == '-' || c == ':') {
        name += to_lower(take());
      } else {
        break;
      }
    }
    return name;
  }

  void parse_start_tag(HtmlFragment& fragment, std::vector<HtmlNode*>& open) {
    size_t tag_offset = pos_;
    pos_ += 1;  // '<'
    HtmlNode element;
    element.type = HtmlNode::Type::Element;
    element.source_offset = tag_offset;
    element.tag = read_tag_name();

    bool self_closing = false;
    while (!at_end()) {
      while (!at_end() && is_space(peek())) take();
      if (at_end()) break;
      char c = peek();
      if (c == '>') {
        take();
        break;
      }
      if (c == '/') {
        take();
        if (!at_end() && peek() == '>') {
          take();
          self_closing = true;
          break;
        }
        continue;
      }
      parse_attribute(element);
    }

    if (is_raw_text_element(element.tag) && !self_closing) {
      size_t body_offset = pos_;
      std::string body = read_raw_text(element.tag);
      if (!body.empty()) {
        HtmlNode text;
        text.type = HtmlNode::Type::Text;
        text.text = std::move(body);  // raw, no entity decoding
        text.source_offset = body_offset;
        element.children.push_back(std::move(text));
      }
      append_node(fragment, open, std::move(element));
      return;
    }

    bool container = !self_closing && !is_void_element(element.tag);
    HtmlNode* placed = append_node(fragment, open, std::move(element));
    if (container) open.push_back(placed);
  }

  void parse_attribute(HtmlNode& element) {
    HtmlAttribute attr;
    while (!at_end()) {
      char c = peek();
      if (is_space(c) || c == '=' || c == '>' || c == '/') break;
      attr.name += to_lower(take());
    }
    if (attr.name.empty()) {
      take();  // junk byte, drop it
      return;
    }
    while (!at_end() && is_space(peek())) take();
    if (!at_end() && peek() == '=') {
      take();
      attr.has_value = true;
      while (!at_end() && is_space(peek())) take();
      std::string raw;
      if (!at_end() && (peek() == '"' || peek() == '\'')) {
        char quote = take();
        while (!at_end() && peek() != quote) raw += take();
        if (!at_end()) take();  // closing quote
      } else {
        while (!at_end() && !is_space(peek()) && peek() != '>') raw += take();
      }
      attr.value = decode_entities(raw);
    }
    element.attributes.push_back(std::move(attr));
  }

  std::string read_raw_text(std::string_view tag) {
    std::string close = "</" + std::string(tag);
    std::string low = lowered(input_.substr(pos_));
    size_t end = low.find(close);
    std::string body;
    if (end == std::string::npos) {
      body = std::string(input_.substr(pos_));
      pos_ = input_.size();
    } else {
      body = std::string(input_.substr(pos_, end));
      pos_ += end;
      skip_until('>');  // consume the close tag
    }
    return body;
  }

  static HtmlNode* append_node(HtmlFragment& fragment,
                               std::vector<HtmlNode*>& open, HtmlNode&& node) {
    std::vector<HtmlNode>& siblings =
        open.empty() ? fragment.nodes : open.back()->children;
    siblings.push_back(std::move(node));
    return &siblings.back();
  }

  static void close_element(std::vector<HtmlNode*>& open,
                            const std::string& name) {
    for (size_t i = open.size(); i-- > 0;) {
      if (open[i]->tag == name) {
        open.resize(i);  // implicitly closes anything nested deeper
        return;
      }
    }
    // Unmatched close tag: ignored.
  }

  std::string_view input_;
  size_t pos_ = 0;
};

void serialize_node(const HtmlNode& node, std::string& out) {
  if (node.is_text()) {
    out += escape_text(node.text);
    return;
  }
  out += '<';
  out += node.tag;
  for (const HtmlAttribute& attr : node.attributes) {
    out += ' ';
    out += attr.name;
    if (attr.has_value) {
      out += "=\"";
      for (char c : attr.value) {
        if (c == '&')
          out += "&amp;";
        else if (c == '"')
          out += "&quot;";
        else
          out += c;
      }
      out += '"';
    }
  }
  out += '>';
  if (is_raw_text_element(node.tag)) {
    for (const HtmlNode& child : node.children) out += child.text;
    out += "</" + node.tag + ">";
    return;
  }
  if (is_void_element(node.tag)) return;
  for (const HtmlNode& child : node.children) serialize_node(child, out);
  out += "</" + node.tag + ">";
}

void collect_text(const HtmlNode& node, std::string& out) {
  if (node.is_text()) {
    out += node.text;
    return;
  }
  if (is_raw_text_element(node.tag)) return;  // script/style bodies not shown
  for (const HtmlNode& child : node.children) collect_text(child, out);
}

}  // namespace

const HtmlAttribute* HtmlNode::find_attribute(std::string_view name) const {
  for (const HtmlAttribute& attr : attributes) {
    if (attr.name == name) return &attr;
  }
  return nullptr;
}

std::string HtmlFragment::text_content() const {
  std::string out;
  for (const HtmlNode& node : nodes) collect_text(node, out);
  return out;
}

bool structurally_equal(const HtmlNode& a, const HtmlNode& b) {
  if (a.type != b.type) return false;
  if (a.is_text()) return a.text == b.text;
  if (a.tag != b.tag) return false;
  if (a.attributes.size() != b.attributes.size()) return false;
  for (size_t i = 0; i < a.attributes.size(); ++i) {
    const HtmlAttribute& x = a.attributes[i];
    const HtmlAttribute& y = b.attributes[i];
    if (x.name != y.name || x.has_value != y.has_value || x.value != y.value)
      return false;
  }
  if (a.children.size() != b.children.size()) return false;
  for (size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

bool structurally_equal(const HtmlFragment& a, const HtmlFragment& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    if (!structurally_equal(a.nodes[i], b.nodes[i])) return false;
  }
  return true;
}

HtmlFragment parse_fragment(std::string_view markup) {
  return Parser(markup).run();
}

std::string serialize(const HtmlNode& node) {
  std::string out;
  serialize_node(node, out);
  return out;
}

std::string serialize(const HtmlFragment& fragment) {
  std::string out;
  for (const HtmlNode& node : fragment.nodes) serialize_node(node, out);
  return out;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      size_t semi = text.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 6) {
        std::string_view name = text.substr(i + 1, semi - i - 1);
        if (name == "lt") {
          out += '<';
          i = semi + 1;
          continue;
        }
        if (name == "gt") {
          out += '>';
          i = semi + 1;
          continue;
        }
        if (name == "amp") {
          out += '&';
          i = semi + 1;
          continue;
        }
        if (name == "quot") {
          out += '"';
          i = semi + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace hybridscan
