#include "hybridscan/plugin_auditor.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace hybridscan {

namespace {

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string trimmed(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool is_native_ext(std::string_view ext) {
  return ext == ".java" || ext == ".kt" || ext == ".m" || ext == ".mm" ||
         ext == ".cs" || ext == ".swift" || ext == ".h";
}

bool is_companion_ext(std::string_view ext) {
  return ext == ".js" || ext == ".html" || ext == ".htm";
}

bool is_manifest_name(std::string_view filename) {
  return filename == "plugin.xml" || filename == "config.xml";
}

// Callback invocation shapes that hand data back to the page. Matched on
// lowercased text across native and JS halves.
const std::vector<std::string>& success_call_markers() {
  static const std::vector<std::string> kMarkers = {
      "callbackcontext.success(", "successcallback(", "callbacksuccess(",
      "sendpluginresult(",        "success(",
  };
  return kMarkers;
}

// Splits a balanced argument list on top-level commas.
std::vector<std::string> split_args(std::string_view args) {
  std::vector<std::string> out;
  int depth = 0;
  char quote = '\0';
  std::string cur;
  for (char c : args) {
    if (quote != '\0') {
      cur += c;
      if (c == quote) quote = '\0';
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      cur += c;
      continue;
    }
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trimmed(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  std::string last = trimmed(cur);
  if (!last.empty()) out.push_back(last);
  return out;
}

bool is_constant_arg(std::string_view arg) {
  if (arg.empty()) return true;
  char c = arg.front();
  if (c == '"' || c == '\'') return true;
  if (std::isdigit(static_cast<unsigned char>(c))) return true;
  std::string low = lowered(arg);
  return low == "true" || low == "false" || low == "null" || low == "ok";
}

// Finds the balanced argument text starting right after an opening paren.
std::optional<std::string> balanced_args(std::string_view text, size_t open) {
  int depth = 1;
  char quote = '\0';
  std::string args;
  for (size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (quote != '\0') {
      if (c == quote) quote = '\0';
      args += c;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      args += c;
      continue;
    }
    if (c == '(') ++depth;
    if (c == ')') {
      --depth;
      if (depth == 0) return args;
    }
    args += c;
  }
  return std::nullopt;
}

struct CallbackScan {
  bool any_args = false;      // some invocation carries arguments
  bool non_constant = false;  // some argument is not a literal
};

void scan_callback_invocations(std::string_view content, CallbackScan& scan) {
  std::string low = lowered(content);
  for (const std::string& marker : success_call_markers()) {
    size_t pos = 0;
    while ((pos = low.find(marker, pos)) != std::string::npos) {
      // Bare "success(" must not match inside a longer identifier.
      if (marker == "success(" && pos > 0) {
        char prev = low[pos - 1];
        if (std::isalnum(static_cast<unsigned char>(prev)) || prev == '_' ||
            prev == '$' || prev == '.') {
          pos += marker.size();
          continue;
        }
      }
      size_t open = pos + marker.size();
      std::optional<std::string> args = balanced_args(low, open);
      pos = open;
      if (!args.has_value()) continue;
      std::vector<std::string> parts = split_args(*args);
      if (marker == "sendpluginresult(" && !parts.empty()) {
        // new PluginResult(Status.OK, data): the payload rides after the
        // status argument.
        size_t inner = parts[0].find('(');
        if (inner != std::string::npos) {
          std::optional<std::string> inner_args =
              balanced_args(parts[0], inner + 1);
          if (inner_args.has_value()) {
            std::vector<std::string> result_parts = split_args(*inner_args);
            parts.assign(result_parts.begin() + (result_parts.empty() ? 0 : 1),
                         result_parts.end());
          }
        }
      }
      if (parts.empty()) continue;
      scan.any_args = true;
      for (const std::string& part : parts) {
        if (!is_constant_arg(part)) scan.non_constant = true;
      }
    }
  }
}

std::string plugin_name_from_manifest(const std::string& text,
                                      const std::string& fallback) {
  HtmlFragment tree = parse_fragment(text);
  std::vector<const HtmlNode*> queue;
  for (const HtmlNode& n : tree.nodes) queue.push_back(&n);
  std::string id;
  std::string display;
  while (!queue.empty()) {
    const HtmlNode* node = queue.back();
    queue.pop_back();
    if (node->is_element() && node->tag == "plugin") {
      if (const HtmlAttribute* attr = node->find_attribute("id")) {
        if (attr->has_value) id = attr->value;
      }
    }
    if (node->is_element() && node->tag == "name" && !node->children.empty() &&
        node->children.front().is_text()) {
      display = trimmed(node->children.front().text);
    }
    for (const HtmlNode& child : node->children) queue.push_back(&child);
  }
  if (!display.empty()) return display;
  if (!id.empty()) return id;
  return fallback;
}

bool is_sample_path(std::string_view rel_path) {
  std::string low = lowered(rel_path);
  if (low.size() >= 5 && (low.ends_with(".html") || low.ends_with(".htm")))
    return true;
  return low.find("example") != std::string::npos ||
         low.find("demo") != std::string::npos ||
         low.find("sample") != std::string::npos ||
         low.find("test") != std::string::npos;
}

}  // namespace

EvidenceTable default_evidence_table() {
  EvidenceTable table;
  auto add = [&](DataControllability c, std::initializer_list<const char*> words) {
    for (const char* w : words) table.keywords.push_back({w, c});
  };
  add(DataControllability::ExternalEntity,
      {"bluetooth", "ssid", "wifi", "nfc", "ndef", "sms", "barcode", "qrcode",
       "scanresult", "rfid", "id3", "exif", "metadata", "speech",
       "recognition", "card.io", "cardscan"});
  add(DataControllability::WebControlled,
      {"http://", "https://", "xmlhttprequest", "fetch(", "facebook",
       "twitter", "oauth", "rss", "ajax"});
  add(DataControllability::InternalResource,
      {"contact", "calendar", "sqlite", "storage", "gallery", "mediastore",
       "filesystem", "album"});
  add(DataControllability::Fixed,
      {"version", "battery", "level", "status", "state", "enabled",
       "orientation", "locale", "rooted"});
  table.untested_keywords = {"speech", "recognition", "card.io", "cardscan",
                             "creditcard"};
  return table;
}

EvidenceTable apply_evidence_overrides(EvidenceTable table,
                                       std::string_view override_text) {
  std::istringstream lines{std::string(override_text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string line = trimmed(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string klass, keyword;
    fields >> klass >> keyword;
    klass = lowered(klass);
    keyword = lowered(keyword);
    if (keyword.empty()) {
      table.warnings.push_back("line " + std::to_string(line_no) +
                               ": expected `class keyword` (" + line + ")");
      continue;
    }
    if (klass == "external") {
      table.keywords.push_back({keyword, DataControllability::ExternalEntity});
    } else if (klass == "internal") {
      table.keywords.push_back({keyword, DataControllability::InternalResource});
    } else if (klass == "web") {
      table.keywords.push_back({keyword, DataControllability::WebControlled});
    } else if (klass == "fixed") {
      table.keywords.push_back({keyword, DataControllability::Fixed});
    } else if (klass == "untested") {
      table.untested_keywords.push_back(keyword);
    } else {
      table.warnings.push_back("line " + std::to_string(line_no) +
                               ": unknown class '" + klass + "'");
    }
  }
  return table;
}

EvidenceTable load_evidence_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AnalysisError("cannot open evidence table: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return apply_evidence_overrides(default_evidence_table(), text.str());
}

PluginProfile build_profile(const std::string& plugin_root,
                            const EvidenceTable& table) {
  fs::path root(plugin_root);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw NotAPluginError("not a readable directory: " + plugin_root);
  }

  PluginProfile profile;
  profile.root_path = plugin_root;
  profile.name = root.filename().string();

  std::vector<std::string> manifests;
  std::vector<std::string> all_files;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end;
       it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file()) continue;
    std::string rel = fs::relative(it->path(), root).generic_string();
    all_files.push_back(rel);
    std::string ext = lowered(it->path().extension().string());
    std::string filename = lowered(it->path().filename().string());
    if (is_manifest_name(filename)) manifests.push_back(rel);
    if (is_native_ext(ext)) profile.native_sources.push_back(rel);
    if (is_companion_ext(ext)) profile.companion_js.push_back(rel);
  }
  std::sort(all_files.begin(), all_files.end());
  std::sort(manifests.begin(), manifests.end());
  std::sort(profile.native_sources.begin(), profile.native_sources.end());
  std::sort(profile.companion_js.begin(), profile.companion_js.end());

  bool recognizable_layout =
      !profile.native_sources.empty() && !profile.companion_js.empty();
  if (manifests.empty() && !recognizable_layout) {
    throw NotAPluginError("no plugin manifest or native+JS layout under " +
                          plugin_root);
  }
  if (!manifests.empty()) {
    if (std::optional<std::string> text = read_file(root / manifests.front())) {
      profile.name = plugin_name_from_manifest(*text, profile.name);
    }
  }

  // What do the callbacks carry back?
  CallbackScan callbacks;
  std::map<DataControllability, std::vector<std::string>> hits;
  for (const std::string& rel : all_files) {
    std::string low_path = lowered(rel);
    std::string ext = lowered(fs::path(rel).extension().string());
    std::optional<std::string> content;
    if (is_native_ext(ext) || is_companion_ext(ext)) {
      content = read_file(root / rel);
      if (content.has_value()) scan_callback_invocations(*content, callbacks);
    }
    std::string haystack = low_path;
    if (content.has_value()) haystack += '\n' + lowered(*content);
    for (const auto& [keyword, klass] : table.keywords) {
      if (haystack.find(keyword) != std::string::npos) {
        std::vector<std::string>& bucket = hits[klass];
        std::string note = "keyword '" + keyword + "' in " + rel;
        if (std::find(bucket.begin(), bucket.end(), note) == bucket.end())
          bucket.push_back(note);
      }
    }
  }

  profile.returns_data = callbacks.any_args;
  if (!profile.returns_data) {
    profile.data_controllability = DataControllability::None;
    return profile;
  }
  if (!callbacks.non_constant) {
    profile.data_controllability = DataControllability::Fixed;
    profile.evidence.push_back("callbacks only pass literal values");
    return profile;
  }

  // Precedence: external beats web beats internal; no evidence means the
  // data is treated as fixed/status.
  const DataControllability order[] = {DataControllability::ExternalEntity,
                                       DataControllability::WebControlled,
                                       DataControllability::InternalResource};
  profile.data_controllability = DataControllability::Fixed;
  for (DataControllability klass : order) {
    auto it = hits.find(klass);
    if (it != hits.end() && !it->second.empty()) {
      profile.data_controllability = klass;
      profile.evidence = it->second;
      break;
    }
  }
  if (profile.data_controllability == DataControllability::Fixed) {
    auto it = hits.find(DataControllability::Fixed);
    if (it != hits.end()) {
      profile.evidence = it->second;
    } else {
      profile.evidence.push_back("no channel evidence; data treated as status");
    }
  }

  if (profile.data_controllability == DataControllability::ExternalEntity) {
    std::string joined;
    for (const std::string& e : profile.evidence) joined += lowered(e) + '\n';
    for (const std::string& keyword : table.untested_keywords) {
      if (joined.find(keyword) != std::string::npos) {
        profile.untested_channel = true;
        break;
      }
    }
  }
  return profile;
}

PluginCategory classify_plugin(const PluginProfile& profile) {
  if (!profile.returns_data) return PluginCategory::NoData;
  switch (profile.data_controllability) {
    case DataControllability::None:
      return PluginCategory::NoData;
    case DataControllability::Fixed:
      return PluginCategory::NonExploitableData;
    case DataControllability::WebControlled:
      return PluginCategory::WebData;
    case DataControllability::InternalResource:
      return PluginCategory::InternalData;
    case DataControllability::ExternalEntity:
      return PluginCategory::ExternalData;
  }
  return PluginCategory::NonExploitableData;
}

CompanionAuditResult audit_companion_js(const PluginProfile& profile,
                                        const SourceCatalog& catalog) {
  CompanionAuditResult result;
  if (profile.companion_js.empty()) {
    result.purpose = CompanionPurpose::NoJs;
    return result;
  }

  bool any_sample = false;
  bool any_library = false;
  for (const std::string& rel : profile.companion_js) {
    if (is_sample_path(rel)) {
      any_sample = true;
    } else {
      any_library = true;
    }
  }
  if (any_sample && any_library) {
    result.purpose = CompanionPurpose::Both;
  } else if (any_sample) {
    result.purpose = CompanionPurpose::SampleCode;
  } else {
    result.purpose = CompanionPurpose::Library;
  }

  AppPackage pkg = make_package_from_files(profile.root_path,
                                           profile.companion_js);
  std::vector<SourceUse> sources = find_sources(pkg, catalog);
  std::vector<SinkUse> sinks = find_sinks(pkg);
  std::vector<Finding> findings = taint_flow(pkg, sources, sinks);

  std::set<std::tuple<std::string, int, std::string>> seen;
  for (const Finding& finding : findings) {
    if (finding.confidence != Confidence::Confirmed) continue;
    std::tuple<std::string, int, std::string> key = {
        finding.sink.location.path, finding.sink.location.line,
        finding.sink.sink.api_name};
    if (!seen.insert(key).second) continue;
    result.vulnerable_displays.push_back({finding.sink.location.path,
                                          finding.sink.location.line,
                                          finding.sink.sink.api_name});
  }
  std::sort(result.vulnerable_displays.begin(),
            result.vulnerable_displays.end(),
            [](const VulnerableDisplay& a, const VulnerableDisplay& b) {
              if (a.file != b.file) return a.file < b.file;
              if (a.line != b.line) return a.line < b.line;
              return a.sink_api < b.sink_api;
            });
  return result;
}

std::map<PluginCategory, int> taxonomy_counts(
    const std::vector<PluginProfile>& profiles) {
  std::map<PluginCategory, int> counts = {
      {PluginCategory::NoData, 0},
      {PluginCategory::NonExploitableData, 0},
      {PluginCategory::WebData, 0},
      {PluginCategory::InternalData, 0},
      {PluginCategory::ExternalData, 0},
  };
  for (const PluginProfile& profile : profiles)
    ++counts[classify_plugin(profile)];
  return counts;
}

std::string_view to_string(PluginCategory category) {
  switch (category) {
    case PluginCategory::NoData: return "no_data";
    case PluginCategory::NonExploitableData: return "non_exploitable_data";
    case PluginCategory::WebData: return "web_data";
    case PluginCategory::InternalData: return "internal_data";
    case PluginCategory::ExternalData: return "external_data";
  }
  return "no_data";
}

std::string_view to_string(DataControllability controllability) {
  switch (controllability) {
    case DataControllability::None: return "none";
    case DataControllability::Fixed: return "fixed";
    case DataControllability::WebControlled: return "web_controlled";
    case DataControllability::InternalResource: return "internal_resource";
    case DataControllability::ExternalEntity: return "external_entity";
  }
  return "none";
}

std::string_view to_string(CompanionPurpose purpose) {
  switch (purpose) {
    case CompanionPurpose::SampleCode: return "sample_code";
    case CompanionPurpose::Library: return "library";
    case CompanionPurpose::Both: return "both";
    case CompanionPurpose::NoJs: return "no_js";
  }
  return "no_js";
}

}  // namespace hybridscan
