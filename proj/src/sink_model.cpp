#include "hybridscan/sink_model.hpp"

#include <algorithm>
#include <cctype>

namespace hybridscan {

namespace {

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c)))
      continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

struct CatalogRow {
  SinkKind kind;
  std::vector<std::string> spellings;  // normalized accepted names
};

const std::vector<CatalogRow>& catalog_rows() {
  static const std::vector<CatalogRow> rows = {
      {{"document.write()", SinkFamily::DomApi, true, true},
       {"document.write", "write"}},
      {{"appendChild()", SinkFamily::DomApi, true, true}, {"appendchild"}},
      {{"innerHTML/outerHTML", SinkFamily::DomAttribute, false, true},
       {"innerhtml", "outerhtml", "innerhtml/outerhtml"}},
      {{"innerText/outerText", SinkFamily::DomAttribute, false, false},
       {"innertext", "outertext", "innertext/outertext"}},
      {{"textContent", SinkFamily::DomAttribute, false, false},
       {"textcontent"}},
      {{"html()", SinkFamily::JQueryApi, true, true}, {"html"}},
      {{"append/prepend()", SinkFamily::JQueryApi, true, true},
       {"append", "prepend", "append/prepend"}},
      {{"before/after()", SinkFamily::JQueryApi, true, true},
       {"before", "after", "before/after"}},
      {{"add()", SinkFamily::JQueryApi, true, true}, {"add"}},
      {{"replaceAll/replaceWith()", SinkFamily::JQueryApi, true, true},
       {"replaceall", "replacewith", "replaceall/replacewith"}},
      {{"text()", SinkFamily::JQueryApi, false, false}, {"text"}},
  };
  return rows;
}

// An onerror handler fires on insertion when the element has no usable
// source: the src attribute is missing, empty, or a bareword that cannot
// resolve (no '.', '/' or ':' in it). Anything that looks fetchable is
// treated as possibly loading, so its onerror stays inert.
bool onerror_auto_fires(const HtmlNode& element) {
  if (element.tag != "img" && element.tag != "script") return false;
  const HtmlAttribute* src = element.find_attribute("src");
  if (src == nullptr || !src->has_value || src->value.empty()) return true;
  const std::string& v = src->value;
  return v.find('.') == std::string::npos &&
         v.find('/') == std::string::npos && v.find(':') == std::string::npos;
}

void walk_activation(const HtmlNode& node, const SinkKind& sink,
                     ActivationResult& result) {
  if (node.is_text()) return;

  if (node.tag == "script") {
    std::string body;
    for (const HtmlNode& child : node.children) body += child.text;
    const HtmlAttribute* src = node.find_attribute("src");
    if (sink.executes_script_tag) {
      if (src != nullptr && src->has_value && !src->value.empty()) {
        result.external_loads.push_back(src->value);
      }
      if (!body.empty()) result.executed_code.push_back(body);
    } else {
      result.inert_markup.push_back(
          {serialize(node), "script tag not executed by this sink"});
    }
    return;
  }

  for (const HtmlAttribute& attr : node.attributes) {
    bool is_event = attr.name.size() > 2 && attr.name.compare(0, 2, "on") == 0;
    if (!is_event || !attr.has_value || attr.value.empty()) continue;
    if (!sink.executes_event_attribute) {
      result.inert_markup.push_back(
          {serialize(node), "event attributes not executed by this sink"});
      continue;
    }
    if (attr.name == "onerror") {
      if (onerror_auto_fires(node)) {
        result.executed_code.push_back(attr.value);
      } else {
        result.inert_markup.push_back(
            {serialize(node), "source may load; onerror not guaranteed"});
      }
    } else {
      result.inert_markup.push_back({serialize(node), "requires user event"});
    }
  }

  for (const HtmlNode& child : node.children)
    walk_activation(child, sink, result);
}

}  // namespace

const std::vector<SinkKind>& sink_catalog() {
  static const std::vector<SinkKind> catalog = [] {
    std::vector<SinkKind> out;
    for (const CatalogRow& row : catalog_rows()) out.push_back(row.kind);
    return out;
  }();
  return catalog;
}

std::optional<SinkKind> classify_sink(std::string_view api_name) {
  std::string wanted = normalize_name(api_name);
  if (wanted.empty()) return std::nullopt;
  for (const CatalogRow& row : catalog_rows()) {
    for (const std::string& spelling : row.spellings) {
      if (spelling == wanted) return row.kind;
    }
    if (normalize_name(row.kind.api_name) == wanted) return row.kind;
  }
  return std::nullopt;
}

ActivationResult evaluate_sink(const SinkKind& sink, std::string_view payload) {
  ActivationResult result;
  if (sink.is_text_only()) {
    result.rendered_text = std::string(payload);
    return result;
  }
  HtmlFragment fragment = parse_fragment(payload);
  result.rendered_text = fragment.text_content();
  for (const HtmlNode& node : fragment.nodes)
    walk_activation(node, sink, result);
  return result;
}

std::string_view canonical_script_payload() {
  return "<script>alert('attack')</script>...Data...";
}

std::string_view canonical_event_payload() {
  return "<IMG src=x onerror=\"alert('attack')\">...Data...";
}

std::vector<ActivationCell> activation_matrix() {
  std::vector<ActivationCell> cells;
  cells.reserve(sink_catalog().size());
  for (const SinkKind& sink : sink_catalog()) {
    ActivationCell cell;
    cell.sink_name = sink.api_name;
    cell.script_tag_triggers =
        !evaluate_sink(sink, canonical_script_payload()).executed_code.empty();
    cell.event_attribute_triggers =
        !evaluate_sink(sink, canonical_event_payload()).executed_code.empty();
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace hybridscan
