#include "hybridscan/js_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
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

bool location_less(const SourceLocation& a, const SourceLocation& b) {
  if (a.path != b.path) return a.path < b.path;
  if (a.line != b.line) return a.line < b.line;
  return a.column < b.column;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

int line_of_offset(std::string_view text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void collect_script_elements(const HtmlNode& node,
                             std::vector<const HtmlNode*>& out) {
  if (node.is_element() && node.tag == "script") out.push_back(&node);
  for (const HtmlNode& child : node.children)
    collect_script_elements(child, out);
}

std::string service_channel(std::string_view service) {
  std::string s = lowered(service);
  auto has = [&](std::string_view needle) {
    return s.find(needle) != std::string::npos;
  };
  if (has("barcode") || has("qr")) return "QRCode";
  if (has("wifi")) return "WiFi";
  if (has("bluetooth")) return "Bluetooth";
  if (has("nfc") || has("ndef")) return "NFC";
  if (has("sms")) return "SMS";
  if (has("metadata") || has("id3")) return "MP3MP4";
  if (has("facebook") || has("twitter") || has("http")) return "Web";
  return "Internal";
}

// Resolves the callback argument of a call to a function in the same unit:
// either an inline function literal or the name of one declared nearby.
const JsFunction* resolve_callback(const JsIndex& index, const TokenSpan& arg,
                                   int* function_index) {
  *function_index = -1;
  if (arg.empty()) return nullptr;
  for (size_t i = 0; i < index.functions.size(); ++i) {
    const JsFunction& fn = index.functions[i];
    if (fn.header_tok >= arg.begin && fn.header_tok < arg.end) {
      *function_index = static_cast<int>(i);
      return &fn;
    }
  }
  if (arg.end - arg.begin == 1 &&
      index.tokens[arg.begin].kind == TokenKind::Identifier) {
    const JsFunction* fn = index.find_function(index.tokens[arg.begin].text);
    if (fn != nullptr) {
      *function_index =
          static_cast<int>(fn - index.functions.data());
      return fn;
    }
  }
  return nullptr;
}

struct SourceScan {
  std::vector<SourceUse> resolved;
  int unresolved_external_matches = 0;
};

SourceScan scan_sources(const AppPackage& pkg, const SourceCatalog& catalog) {
  SourceScan out;
  for (size_t u = 0; u < pkg.units.size(); ++u) {
    const AppPackage::Unit& unit = pkg.units[u];
    const JsIndex& index = unit.index;
    const std::string& path = pkg.documents[unit.doc].path;
    for (const JsCall& call : index.calls) {
      std::string channel;
      int callback_arg = 0;
      bool matched = false;
      for (const SourceSpec& spec : catalog.entries) {
        if (call.chain.find(spec.callee_substring) != std::string::npos) {
          channel = spec.channel;
          callback_arg = spec.callback_arg;
          matched = true;
          break;
        }
      }
      if (!matched) {
        // Generic bridge invocation: a five-argument exec-style call whose
        // first argument is the success callback.
        bool exec_like = call.chain == "exec" ||
                         (call.chain.size() > 5 &&
                          call.chain.compare(call.chain.size() - 5, 5,
                                             ".exec") == 0);
        if (exec_like && call.args_sliced && call.args.size() == 5) {
          std::string service;
          const TokenSpan& svc = call.args[2];
          if (svc.end - svc.begin == 1 &&
              index.tokens[svc.begin].kind == TokenKind::String) {
            service = index.tokens[svc.begin].value;
          }
          channel = service_channel(service);
          callback_arg = 0;
          matched = true;
        }
      }
      if (!matched) continue;

      SourceUse use;
      use.location = {path, call.line, call.column};
      use.channel = channel;
      use.api = index.text_of({call.chain_tok, call.method_tok + 1}, 120);
      use.unit = u;

      const JsFunction* callback = nullptr;
      if (call.args_sliced &&
          static_cast<size_t>(callback_arg) < call.args.size()) {
        callback = resolve_callback(index, call.args[callback_arg],
                                    &use.callback_function);
      }
      if (callback == nullptr || callback->params.empty()) {
        if (is_external_channel(channel)) ++out.unresolved_external_matches;
        continue;
      }
      use.tainted_bindings = callback->params;
      out.resolved.push_back(std::move(use));
    }
  }
  return out;
}

const std::vector<std::string>& jquery_sink_methods() {
  static const std::vector<std::string> kMethods = {
      "html",   "append", "prepend",    "before", "after",
      "add",    "replaceAll", "replaceWith", "text"};
  return kMethods;
}

const std::vector<std::string>& attribute_sinks() {
  static const std::vector<std::string> kAttrs = {
      "innerHTML", "outerHTML", "innerText", "outerText", "textContent"};
  return kAttrs;
}

bool ends_with(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

bool is_external_channel(std::string_view channel) {
  return channel == "WiFi" || channel == "Bluetooth" || channel == "NFC" ||
         channel == "SMS" || channel == "QRCode" || channel == "MP3MP4" ||
         channel == "JPEG";
}

SourceCatalog default_source_catalog() {
  SourceCatalog catalog;
  auto add = [&](std::string channel, std::string substring, int arg) {
    catalog.entries.push_back({std::move(channel), std::move(substring), arg});
  };
  // Wi-Fi scanning
  add("WiFi", "wifi.scan", 0);
  add("WiFi", "wifi.getscanresults", 0);
  add("WiFi", "wifi.listnetworks", 0);
  add("WiFi", "wifiwizard.scan", 0);
  add("WiFi", "wifiwizard.getscanresults", 0);
  // Bluetooth discovery
  add("Bluetooth", "bluetooth.discover", 0);
  add("Bluetooth", "bluetooth.discoverdevices", 0);
  add("Bluetooth", "bluetooth.list", 0);
  add("Bluetooth", "bluetooth.startdiscovery", 0);
  add("Bluetooth", "bluetoothserial.list", 0);
  add("Bluetooth", "bluetoothserial.discoverunpaired", 0);
  // SMS reception
  add("SMS", "sms.startwatch", 0);
  add("SMS", "sms.receive", 0);
  add("SMS", "sms.listen", 0);
  add("SMS", "smsreceiver.startreception", 0);
  add("SMS", "smsinbox.getmessages", 0);
  // NFC reading
  add("NFC", "nfc.addndeflistener", 0);
  add("NFC", "nfc.addtagdiscoveredlistener", 0);
  add("NFC", "nfc.addmimetypelistener", 0);
  add("NFC", "nfc.read", 0);
  // Barcode / QR scanning
  add("QRCode", "barcodescanner.scan", 0);
  add("QRCode", "barcode.scan", 0);
  add("QRCode", "scanner.scan", 0);
  // Media metadata
  add("MP3MP4", "media.getmetadata", 0);
  add("MP3MP4", "metadata.read", 0);
  add("MP3MP4", "id3.read", 0);
  add("MP3MP4", "musicmetadata.get", 0);
  return catalog;
}

SourceCatalog apply_source_overrides(SourceCatalog catalog,
                                     std::string_view override_text) {
  std::istringstream lines{std::string(override_text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string line = trimmed(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string channel, substring, arg_text;
    fields >> channel >> substring >> arg_text;
    int arg = 0;
    bool arg_ok = true;
    if (!arg_text.empty()) {
      try {
        arg = std::stoi(arg_text);
      } catch (const std::exception&) {
        arg_ok = false;
      }
    }
    if (channel.empty() || substring.empty() || !arg_ok || arg < 0) {
      catalog.warnings.push_back("line " + std::to_string(line_no) +
                                 ": expected `channel callee_substring "
                                 "callback_arg` (" + line + ")");
      continue;
    }
    catalog.entries.push_back({channel, lowered(substring), arg});
  }
  return catalog;
}

SourceCatalog load_source_catalog(const std::string& override_path) {
  std::ifstream in(override_path);
  if (!in) {
    throw AnalysisError("cannot open source catalog override: " +
                        override_path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return apply_source_overrides(default_source_catalog(), text.str());
}

AppPackage make_package_from_files(const std::string& root_path,
                                   const std::vector<std::string>& files) {
  AppPackage pkg;
  pkg.root_path = root_path;
  fs::path root(root_path);
  pkg.app_id = root.filename().string();
  if (pkg.app_id.empty()) pkg.app_id = root.parent_path().filename().string();

  std::vector<std::string> sorted_files = files;
  std::sort(sorted_files.begin(), sorted_files.end());

  bool bridge_script_ref = false;

  for (const std::string& rel : sorted_files) {
    fs::path full = root / rel;
    std::string ext = lowered(full.extension().string());
    if (ext != ".html" && ext != ".htm" && ext != ".js") continue;
    std::optional<std::string> text = read_file(full);
    if (!text.has_value()) {
      pkg.warnings.push_back("unreadable file skipped: " + rel);
      continue;
    }
    AppPackage::Doc doc;
    doc.path = rel;
    doc.kind = (ext == ".js") ? DocKind::Js : DocKind::Html;
    doc.text = std::move(*text);
    pkg.documents.push_back(std::move(doc));
  }

  for (size_t d = 0; d < pkg.documents.size(); ++d) {
    const AppPackage::Doc& doc = pkg.documents[d];
    if (doc.kind == DocKind::Js) {
      AppPackage::Unit unit;
      unit.doc = d;
      unit.line_base = 1;
      unit.index = index_js(doc.text, 1);
      pkg.units.push_back(std::move(unit));
      continue;
    }
    HtmlFragment tree = parse_fragment(doc.text);
    std::vector<const HtmlNode*> scripts;
    for (const HtmlNode& node : tree.nodes)
      collect_script_elements(node, scripts);
    for (const HtmlNode* script : scripts) {
      const HtmlAttribute* src = script->find_attribute("src");
      if (src != nullptr && src->has_value && !src->value.empty()) {
        std::string ref = lowered(src->value);
        if (ref.find("phonegap") != std::string::npos ||
            ref.find("cordova") != std::string::npos) {
          bridge_script_ref = true;
        }
        continue;
      }
      if (script->children.empty()) continue;
      const HtmlNode& body = script->children.front();
      if (!body.is_text() || body.text.empty()) continue;
      AppPackage::Unit unit;
      unit.doc = d;
      unit.line_base =
          body.source_offset == static_cast<size_t>(-1)
              ? 1
              : line_of_offset(doc.text, body.source_offset);
      unit.index = index_js(body.text, unit.line_base);
      pkg.units.push_back(std::move(unit));
    }
  }

  // Framework markers: a bridge bootstrap script reference, an exec-style
  // five-argument call, or a plugin manifest.
  bool exec_call = false;
  for (const AppPackage::Unit& unit : pkg.units) {
    for (const JsCall& call : unit.index.calls) {
      bool exec_like =
          call.chain == "exec" || ends_with(call.chain, ".exec");
      if (exec_like && call.args_sliced && call.args.size() == 5) {
        exec_call = true;
        break;
      }
    }
    if (exec_call) break;
  }
  bool manifest = !pkg.declared_plugins.empty();
  pkg.framework = (bridge_script_ref || exec_call || manifest)
                      ? Framework::PhoneGapLike
                      : Framework::Unknown;
  return pkg;
}

AppPackage ingest_app(const std::string& root_path) {
  fs::path root(root_path);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw AnalysisError("app root is not a readable directory: " + root_path);
  }

  std::vector<std::string> files;
  std::vector<std::string> manifests;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end;
       it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file()) continue;
    fs::path rel = fs::relative(it->path(), root);
    std::string ext = lowered(rel.extension().string());
    if (ext == ".html" || ext == ".htm" || ext == ".js") {
      files.push_back(rel.generic_string());
    }
    std::string filename = lowered(rel.filename().string());
    if (filename == "config.xml" || filename == "plugin.xml") {
      manifests.push_back(rel.generic_string());
    }
  }
  if (files.empty()) {
    throw EmptyPackageError("no HTML or JS documents under " + root_path);
  }

  AppPackage pkg = make_package_from_files(root_path, files);

  std::sort(manifests.begin(), manifests.end());
  for (const std::string& rel : manifests) {
    std::optional<std::string> text = read_file(root / rel);
    if (!text.has_value()) {
      pkg.warnings.push_back("unreadable manifest skipped: " + rel);
      continue;
    }
    HtmlFragment tree = parse_fragment(*text);
    std::vector<const HtmlNode*> queue;
    for (const HtmlNode& n : tree.nodes) queue.push_back(&n);
    while (!queue.empty()) {
      const HtmlNode* node = queue.back();
      queue.pop_back();
      if (node->is_element() &&
          (node->tag == "plugin" || node->tag == "feature")) {
        const HtmlAttribute* name = node->find_attribute("name");
        if (name == nullptr) name = node->find_attribute("id");
        if (name != nullptr && name->has_value && !name->value.empty()) {
          pkg.declared_plugins.push_back(name->value);
        }
      }
      for (const HtmlNode& child : node->children) queue.push_back(&child);
    }
  }
  std::sort(pkg.declared_plugins.begin(), pkg.declared_plugins.end());
  pkg.declared_plugins.erase(
      std::unique(pkg.declared_plugins.begin(), pkg.declared_plugins.end()),
      pkg.declared_plugins.end());
  if (!pkg.declared_plugins.empty()) pkg.framework = Framework::PhoneGapLike;
  return pkg;
}

std::vector<SourceUse> find_sources(const AppPackage& pkg,
                                    const SourceCatalog& catalog) {
  return scan_sources(pkg, catalog).resolved;
}

std::vector<SinkUse> find_sinks(const AppPackage& pkg) {
  std::vector<SinkUse> sinks;
  for (size_t u = 0; u < pkg.units.size(); ++u) {
    const AppPackage::Unit& unit = pkg.units[u];
    const JsIndex& index = unit.index;
    const std::string& path = pkg.documents[unit.doc].path;

    for (const JsCall& call : index.calls) {
      std::optional<SinkKind> kind;
      if (call.method == "write") {
        if (ends_with(call.chain, "document.write")) {
          kind = classify_sink("document.write");
        }
      } else if (call.method == "appendChild") {
        kind = classify_sink("appendChild");
      } else {
        const std::vector<std::string>& methods = jquery_sink_methods();
        if (std::find(methods.begin(), methods.end(), call.method) !=
            methods.end()) {
          kind = classify_sink(call.method);
        }
      }
      if (!kind.has_value()) continue;
      if (call.args_sliced && call.args.empty()) continue;  // getter form

      SinkUse use;
      use.location = {path, call.line, call.column};
      use.sink = *kind;
      use.matched_name = call.method;
      use.unit = u;
      if (call.args_sliced) {
        use.arg_span = call.args.front();
        use.argument_expr = index.text_of(use.arg_span, 80);
      } else {
        use.lexical_only = true;
      }
      sinks.push_back(std::move(use));
    }

    for (const JsAssignment& assignment : index.assignments) {
      const std::vector<std::string>& attrs = attribute_sinks();
      if (std::find(attrs.begin(), attrs.end(), assignment.lhs_property) ==
          attrs.end()) {
        continue;
      }
      std::optional<SinkKind> kind = classify_sink(assignment.lhs_property);
      if (!kind.has_value()) continue;
      SinkUse use;
      use.location = {path, assignment.line, assignment.column};
      use.sink = *kind;
      use.matched_name = assignment.lhs_property;
      use.unit = u;
      use.arg_span = assignment.rhs;
      use.argument_expr = index.text_of(assignment.rhs, 80);
      sinks.push_back(std::move(use));
    }
  }
  std::sort(sinks.begin(), sinks.end(), [](const SinkUse& a, const SinkUse& b) {
    return location_less(a.location, b.location);
  });
  return sinks;
}

std::vector<Finding> taint_flow(const AppPackage& pkg,
                                const std::vector<SourceUse>& sources,
                                const std::vector<SinkUse>& sinks) {
  std::vector<Finding> findings;
  std::set<std::pair<size_t, size_t>> confirmed_pairs;

  for (size_t si = 0; si < sources.size(); ++si) {
    const SourceUse& source = sources[si];
    const JsIndex& index = pkg.units[source.unit].index;
    const std::string& path = pkg.documents[pkg.units[source.unit].doc].path;
    int scope = source.callback_function;

    struct TaintInfo {
      const JsAssignment* via = nullptr;  // null for seed bindings
      std::string from;
    };
    std::map<std::string, TaintInfo> tainted;
    for (const std::string& binding : source.tainted_bindings)
      tainted[binding] = {};

    bool changed = true;
    while (changed) {
      changed = false;
      for (const JsAssignment& assignment : index.assignments) {
        if (assignment.lhs_root.empty()) continue;  // opaque receiver
        if (tainted.count(assignment.lhs_root) > 0) continue;
        if (!index.in_function(assignment.op_tok, scope)) continue;
        std::vector<std::string> ids = index.identifiers_in(assignment.rhs);
        for (const std::string& id : ids) {
          if (tainted.count(id) == 0) continue;
          tainted[assignment.lhs_root] = {&assignment, id};
          changed = true;
          break;
        }
      }
    }

    for (size_t ki = 0; ki < sinks.size(); ++ki) {
      const SinkUse& sink = sinks[ki];
      if (sink.unit != source.unit) continue;
      if (!sink.sink.parses_markup()) continue;
      if (sink.lexical_only || sink.arg_span.empty()) continue;
      if (!index.in_function(sink.arg_span.begin, scope)) continue;

      std::vector<std::string> ids = index.identifiers_in(sink.arg_span);
      std::string hit;
      for (const std::string& id : ids) {
        if (tainted.count(id) > 0) {
          hit = id;
          break;
        }
      }
      if (hit.empty()) continue;

      Finding finding;
      finding.confidence = Confidence::Confirmed;
      finding.source = source;
      finding.sink = sink;

      std::vector<FlowStep> chain;
      std::string cursor = hit;
      while (true) {
        const TaintInfo& info = tainted[cursor];
        if (info.via == nullptr) break;
        chain.push_back({{path, info.via->line, info.via->column},
                         info.via->lhs_text +
                             (info.via->compound ? " += " : " = ") +
                             index.text_of(info.via->rhs, 60)});
        cursor = info.from;
      }
      std::reverse(chain.begin(), chain.end());

      std::string bindings;
      for (size_t b = 0; b < source.tainted_bindings.size(); ++b) {
        if (b > 0) bindings += ", ";
        bindings += source.tainted_bindings[b];
      }
      finding.path.push_back(
          {source.location, "callback parameter(s) " + bindings +
                                " receive " + source.channel + " data via " +
                                source.api});
      for (FlowStep& step : chain) finding.path.push_back(std::move(step));
      finding.path.push_back(
          {sink.location, sink.matched_name + " displays " +
                              sink.argument_expr});

      confirmed_pairs.insert({si, ki});
      findings.push_back(std::move(finding));
    }
  }

  // Co-occurrence tier: source and executing sink in the same document
  // without a recovered flow.
  for (size_t si = 0; si < sources.size(); ++si) {
    for (size_t ki = 0; ki < sinks.size(); ++ki) {
      const SinkUse& sink = sinks[ki];
      if (!sink.sink.parses_markup()) continue;
      if (pkg.units[sources[si].unit].doc != pkg.units[sink.unit].doc)
        continue;
      if (confirmed_pairs.count({si, ki}) > 0) continue;
      Finding finding;
      finding.confidence = Confidence::Cooccurrence;
      finding.source = sources[si];
      finding.sink = sink;
      findings.push_back(std::move(finding));
    }
  }

  std::sort(findings.begin(), findings.end(),
            [](const Finding& a, const Finding& b) {
              if (a.confidence != b.confidence)
                return a.confidence == Confidence::Confirmed;
              if (location_less(a.source.location, b.source.location))
                return true;
              if (location_less(b.source.location, a.source.location))
                return false;
              return location_less(a.sink.location, b.sink.location);
            });
  return findings;
}

Verdict judge(const Conditions& conditions, bool accept_cooccurrence) {
  if (conditions.reads_channels && conditions.uses_vulnerable_sinks &&
      conditions.flow_confirmed) {
    return Verdict::Vulnerable;
  }
  if (accept_cooccurrence && conditions.reads_channels &&
      conditions.uses_vulnerable_sinks) {
    return Verdict::PotentiallyVulnerable;
  }
  return Verdict::NotVulnerable;
}

ScanReport scan_app(const std::string& root_path, const ScanOptions& options) {
  AppPackage pkg = ingest_app(root_path);
  SourceScan sources = scan_sources(pkg, options.sources);
  std::vector<SinkUse> sinks = find_sinks(pkg);
  std::vector<Finding> findings = taint_flow(pkg, sources.resolved, sinks);

  ScanReport report;
  report.app_id = pkg.app_id;
  report.root_path = pkg.root_path;
  report.framework = pkg.framework;
  report.document_count = static_cast<int>(pkg.documents.size());
  report.declared_plugins = pkg.declared_plugins;
  report.warnings = pkg.warnings;

  bool external_source =
      sources.unresolved_external_matches > 0 ||
      std::any_of(sources.resolved.begin(), sources.resolved.end(),
                  [](const SourceUse& s) {
                    return is_external_channel(s.channel);
                  });
  bool executing_sink =
      std::any_of(sinks.begin(), sinks.end(), [](const SinkUse& s) {
        return s.sink.parses_markup();
      });
  bool confirmed_external =
      std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
        return f.confidence == Confidence::Confirmed &&
               is_external_channel(f.source.channel);
      });

  report.conditions = {external_source, executing_sink, confirmed_external};
  report.verdict = judge(report.conditions, options.accept_cooccurrence);
  report.findings = std::move(findings);
  report.sources = std::move(sources.resolved);
  report.sinks = std::move(sinks);
  for (const SinkUse& use : report.sinks) ++report.sink_usage[use.sink.api_name];
  return report;
}

CorpusStats corpus_stats(const std::vector<std::string>& roots,
                         const ScanOptions& options) {
  if (roots.empty()) throw AnalysisError("no scannable roots given");

  auto scan_one = [&options](const std::string& root) -> ScanReport {
    try {
      return scan_app(root, options);
    } catch (const AnalysisError&) {
      // Unscannable or empty apps still count toward the denominator.
      ScanReport blank;
      blank.app_id = fs::path(root).filename().string();
      blank.root_path = root;
      return blank;
    }
  };

  std::vector<ScanReport> reports;
  reports.reserve(roots.size());
  if (roots.size() > 1) {
    std::vector<std::future<ScanReport>> jobs;
    jobs.reserve(roots.size());
    for (const std::string& root : roots)
      jobs.push_back(std::async(std::launch::async, scan_one, root));
    for (std::future<ScanReport>& job : jobs) reports.push_back(job.get());
  } else {
    reports.push_back(scan_one(roots.front()));
  }

  CorpusStats stats;
  stats.apps_total = static_cast<int>(reports.size());
  for (const ScanReport& report : reports) {
    for (const auto& [api, count] : report.sink_usage) {
      if (count > 0) ++stats.api_app_counts[api];
    }
    if (report.conditions.reads_channels) ++stats.reads_channels;
    if (report.conditions.uses_vulnerable_sinks) ++stats.uses_vulnerable_sinks;
    if (report.conditions.reads_channels &&
        report.conditions.uses_vulnerable_sinks) {
      ++stats.both_conditions;
    }
    if (report.conditions.flow_confirmed &&
        report.conditions.reads_channels &&
        report.conditions.uses_vulnerable_sinks) {
      ++stats.all_three;
    }
    stats.app_verdicts.push_back({report.app_id, report.verdict});
  }
  std::sort(stats.app_verdicts.begin(), stats.app_verdicts.end());
  return stats;
}

std::string_view to_string(Framework framework) {
  return framework == Framework::PhoneGapLike ? "phonegap_like" : "unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Vulnerable: return "vulnerable";
    case Verdict::PotentiallyVulnerable: return "potentially_vulnerable";
    case Verdict::NotVulnerable: return "not_vulnerable";
  }
  return "not_vulnerable";
}

std::string_view to_string(Confidence confidence) {
  return confidence == Confidence::Confirmed ? "confirmed" : "cooccurrence";
}

}  // namespace hybridscan
