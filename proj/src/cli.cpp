#include "hybridscan/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybridscan/channel_catalog.hpp"
#include "hybridscan/js_analysis.hpp"
#include "hybridscan/payload_forge.hpp"
#include "hybridscan/plugin_auditor.hpp"
#include "hybridscan/poc_payloads.hpp"
#include "hybridscan/report.hpp"
#include "hybridscan/sink_model.hpp"

namespace fs = std::filesystem;

namespace hybridscan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVulnerable = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
  std::string format = "text";
  bool deterministic = false;

  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_flag("--deterministic", opts.deterministic,
                "Omit timestamps so identical inputs give identical bytes");
}

void emit_json(std::ostream& out, std::string_view kind, nlohmann::json payload,
               bool deterministic) {
  out << envelope(kind, std::move(payload), deterministic).dump(2) << "\n";
}

LoaderStyle parse_style(const std::string& name) {
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  if (low == "script" || low == "scripttag") return LoaderStyle::ScriptTagLoader;
  if (low == "imgdynamic" || low == "dynamic")
    return LoaderStyle::ImgOnErrorDynamic;
  if (low == "jquery" || low == "getscript")
    return LoaderStyle::JQueryGetScript;
  throw CLI::ValidationError("--style",
                             "expected script, imgdynamic or jquery");
}

// Loader plus optional fragmentation, shared by `forge` and `plan`.
struct ForgeRequest {
  std::string url;
  std::string style = "jquery";
  std::string code;  // overrides the loader's inner code when given
  std::optional<int> limit;
};

struct ForgeOutcome {
  std::optional<Payload> loader;
  std::string inner_code;
  std::vector<Fragment> fragments;
};

ForgeOutcome run_forge(const ForgeRequest& request) {
  ForgeOutcome outcome;
  if (!request.code.empty()) {
    outcome.inner_code = request.code;
  } else {
    if (request.url.empty())
      throw ForgeError("either --url or --code is required");
    outcome.loader = make_loader(request.url, parse_style(request.style));
    outcome.inner_code = outcome.loader->inner_code;
  }
  if (request.limit.has_value()) {
    if (outcome.inner_code.empty()) {
      throw ForgeError(
          "the script-tag loader carries no inline code to fragment; use "
          "--style jquery or imgdynamic");
    }
    outcome.fragments = fragment_payload(outcome.inner_code, *request.limit);
  }
  return outcome;
}

// `stats <dir>` over a directory of apps: when the single argument has no
// documents of its own but does have subdirectories, each subdirectory is
// treated as one app.
std::vector<std::string> expand_corpus_roots(std::vector<std::string> roots) {
  if (roots.size() != 1) return roots;
  fs::path root(roots.front());
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return roots;
  bool own_docs = false;
  std::vector<std::string> subdirs;
  for (const fs::directory_entry& entry : fs::directory_iterator(root, ec)) {
    if (entry.is_directory()) {
      subdirs.push_back(entry.path().string());
      continue;
    }
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    if (ext == ".html" || ext == ".htm" || ext == ".js") own_docs = true;
  }
  if (own_docs || subdirs.empty()) return roots;
  std::sort(subdirs.begin(), subdirs.end());
  return subdirs;
}

int cmd_scan(const std::vector<std::string>& roots, const CommonOpts& opts,
             const ScanOptions& scan_opts, std::ostream& out, bool color) {
  std::vector<ScanReport> reports;
  reports.reserve(roots.size());
  for (const std::string& root : roots)
    reports.push_back(scan_app(root, scan_opts));

  if (opts.json()) {
    if (reports.size() == 1) {
      emit_json(out, "scan_report", scan_report_json(reports.front()),
                opts.deterministic);
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const ScanReport& report : reports)
        arr.push_back(scan_report_json(report));
      emit_json(out, "scan_reports", std::move(arr), opts.deterministic);
    }
  } else {
    std::ostringstream text;  // assembled fully, written once
    for (size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) text << "\n";
      text << scan_report_text(reports[i], color);
    }
    out << text.str();
  }
  bool any_flagged =
      std::any_of(reports.begin(), reports.end(), [](const ScanReport& r) {
        return r.verdict != Verdict::NotVulnerable;
      });
  return any_flagged ? kExitVulnerable : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err, bool color) {
  CLI::App app{"Static analysis of code-injection risk in HTML5-based "
               "hybrid apps, with length-constrained payload planning"};
  app.require_subcommand(1);

  // scan
  CommonOpts scan_common;
  std::vector<std::string> scan_roots;
  std::string scan_sources_path;
  bool accept_cooccurrence = false;
  CLI::App* scan = app.add_subcommand("scan", "Scan app trees for "
                                              "channel-to-sink injection flows");
  scan->add_option("roots", scan_roots, "App directories")
      ->required()
      ->expected(-1);
  scan->add_option("--sources", scan_sources_path,
                   "Source catalog override file");
  scan->add_flag("--accept-cooccurrence", accept_cooccurrence,
                 "Keep source+sink co-occurrence (conditions 1+2) as "
                 "potentially vulnerable");
  add_common(scan, scan_common);

  // stats
  CommonOpts stats_common;
  std::vector<std::string> stats_roots;
  std::string stats_sources_path;
  CLI::App* stats = app.add_subcommand(
      "stats", "Aggregate sink usage and the detection funnel over a corpus");
  stats->add_option("roots", stats_roots, "App directories (or one directory "
                                          "of app directories)")
      ->required()
      ->expected(-1);
  stats->add_option("--sources", stats_sources_path,
                    "Source catalog override file");
  add_common(stats, stats_common);

  // forge
  CommonOpts forge_common;
  ForgeRequest forge_request;
  int forge_limit = 0;
  CLI::App* forge = app.add_subcommand(
      "forge", "Emit a loader payload and optionally fragment it");
  forge->add_option("--url", forge_request.url, "Second-stage script URL");
  forge->add_option("--style", forge_request.style,
                    "Loader style: script | imgdynamic | jquery")
      ->capture_default_str();
  forge->add_option("--code", forge_request.code,
                    "Fragment this code instead of a loader");
  CLI::Option* forge_limit_opt =
      forge->add_option("--limit", forge_limit, "Per-fragment length limit");
  add_common(forge, forge_common);

  // plan
  CommonOpts plan_common;
  ForgeRequest plan_request;
  int plan_limit = 0;
  std::string plan_channel;
  std::string plan_channels_path;
  std::vector<std::string> plan_fields;
  CLI::App* plan = app.add_subcommand(
      "plan", "Forge a payload and map its fragments onto a channel");
  plan->add_option("--channel", plan_channel, "Target channel name")
      ->required();
  plan->add_option("--url", plan_request.url, "Second-stage script URL");
  plan->add_option("--style", plan_request.style,
                   "Loader style: script | imgdynamic | jquery")
      ->capture_default_str();
  plan->add_option("--code", plan_request.code,
                   "Plan this code instead of a loader");
  CLI::Option* plan_limit_opt =
      plan->add_option("--limit", plan_limit,
                       "Per-fragment length limit (default: the channel's "
                       "tightest field)");
  plan->add_option("--channels", plan_channels_path,
                   "Channel catalog override file");
  plan->add_option("--field", plan_fields, "Preferred field order");
  add_common(plan, plan_common);

  // emulate
  CommonOpts emulate_common;
  std::string emulate_sink;
  std::string emulate_payload;
  CLI::App* emulate = app.add_subcommand(
      "emulate", "Decide what a payload would trigger through a sink");
  emulate->add_option("--sink", emulate_sink, "Sink API or attribute name")
      ->required();
  emulate->add_option("--payload", emulate_payload, "Payload string")
      ->required();
  add_common(emulate, emulate_common);

  // audit-plugin
  CommonOpts audit_common;
  std::vector<std::string> audit_roots;
  std::string audit_evidence_path;
  std::string audit_sources_path;
  CLI::App* audit = app.add_subcommand(
      "audit-plugin", "Classify plugins and audit their companion JS");
  audit->add_option("roots", audit_roots, "Plugin directories")
      ->required()
      ->expected(-1);
  audit->add_option("--evidence", audit_evidence_path,
                    "Controllability evidence override file");
  audit->add_option("--sources", audit_sources_path,
                    "Source catalog override file");
  add_common(audit, audit_common);

  // fixtures
  CommonOpts fixtures_common;
  std::string fixtures_out;
  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "Emit the bundled proof-of-concept payload texts (inert)");
  fixtures->add_option("--out", fixtures_out,
                       "Write payload text files into this directory");
  add_common(fixtures, fixtures_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (scan->parsed()) {
      ScanOptions options;
      if (!scan_sources_path.empty())
        options.sources = load_source_catalog(scan_sources_path);
      options.accept_cooccurrence = accept_cooccurrence;
      return cmd_scan(scan_roots, scan_common, options, out, color);
    }

    if (stats->parsed()) {
      ScanOptions options;
      if (!stats_sources_path.empty())
        options.sources = load_source_catalog(stats_sources_path);
      CorpusStats result =
          corpus_stats(expand_corpus_roots(stats_roots), options);
      if (stats_common.json()) {
        emit_json(out, "corpus_stats", corpus_stats_json(result),
                  stats_common.deterministic);
      } else {
        out << corpus_stats_text(result);
      }
      return kExitOk;
    }

    if (forge->parsed()) {
      if (forge_limit_opt->count() > 0) forge_request.limit = forge_limit;
      ForgeOutcome outcome = run_forge(forge_request);
      if (forge_common.json()) {
        nlohmann::json payload;
        if (outcome.loader.has_value())
          payload["loader"] = payload_json(*outcome.loader);
        payload["inner_code"] = outcome.inner_code;
        if (!outcome.fragments.empty())
          payload["fragments"] = fragments_json(outcome.fragments);
        emit_json(out, "forge_result", std::move(payload),
                  forge_common.deterministic);
      } else if (!outcome.fragments.empty()) {
        out << fragments_text(outcome.fragments);
      } else if (outcome.loader.has_value()) {
        out << outcome.loader->markup << "\n";
        out << "length: " << outcome.loader->length << "\n";
        if (!outcome.loader->note.empty())
          out << "note: " << outcome.loader->note << "\n";
      }
      return kExitOk;
    }

    if (plan->parsed()) {
      ChannelCatalog catalog = plan_channels_path.empty()
                                   ? load_channel_catalog()
                                   : load_channel_catalog(plan_channels_path);
      const Channel* channel = catalog.find(plan_channel);
      if (channel == nullptr) {
        err << "unknown channel: " << plan_channel << "\n";
        return kExitError;
      }
      if (plan_limit_opt->count() > 0) {
        plan_request.limit = plan_limit;
      } else {
        // Default per-fragment budget: the widest field the channel offers.
        int widest = 0;
        for (const FieldSpec& field : channel->fields)
          widest = std::max(widest, field.max_length);
        plan_request.limit = widest;
      }
      ForgeOutcome outcome = run_forge(plan_request);
      InjectionPlan injection =
          plan_injection(outcome.fragments, *channel, plan_fields);
      VerificationResult verification =
          verify_plan(injection, *classify_sink("innerHTML"),
                      outcome.inner_code);
      if (plan_common.json()) {
        emit_json(out, "injection_plan",
                  plan_json(injection, &verification),
                  plan_common.deterministic);
      } else {
        out << plan_text(injection);
      }
      return verification.verified ? kExitOk : kExitError;
    }

    if (emulate->parsed()) {
      std::optional<SinkKind> sink = classify_sink(emulate_sink);
      if (!sink.has_value()) {
        err << "not a catalog sink: " << emulate_sink << "\n";
        return kExitError;
      }
      ActivationResult result = evaluate_sink(*sink, emulate_payload);
      if (emulate_common.json()) {
        nlohmann::json payload = activation_json(result);
        payload["sink"] = sink->api_name;
        emit_json(out, "activation_result", std::move(payload),
                  emulate_common.deterministic);
      } else {
        out << "sink: " << sink->api_name << "\n" << activation_text(result);
      }
      return kExitOk;
    }

    if (audit->parsed()) {
      EvidenceTable table = audit_evidence_path.empty()
                                ? default_evidence_table()
                                : load_evidence_table(audit_evidence_path);
      SourceCatalog sources = audit_sources_path.empty()
                                  ? default_source_catalog()
                                  : load_source_catalog(audit_sources_path);
      std::vector<PluginProfile> profiles;
      std::vector<std::string> errors;
      nlohmann::json plugin_reports = nlohmann::json::array();
      std::ostringstream text_out;
      for (const std::string& root : audit_roots) {
        try {
          PluginProfile profile = build_profile(root, table);
          CompanionAuditResult companion = audit_companion_js(profile, sources);
          plugin_reports.push_back(plugin_report_json(profile, companion));
          text_out << plugin_report_text(profile, companion) << "\n";
          profiles.push_back(std::move(profile));
        } catch (const NotAPluginError& e) {
          errors.push_back(std::string(e.what()));
        }
      }
      std::map<PluginCategory, int> counts = taxonomy_counts(profiles);
      if (audit_common.json()) {
        nlohmann::json payload = {{"plugins", plugin_reports},
                                  {"taxonomy", taxonomy_json(counts)},
                                  {"errors", errors}};
        emit_json(out, "plugin_audit", std::move(payload),
                  audit_common.deterministic);
      } else {
        out << text_out.str();
        out << taxonomy_text(counts);
        for (const std::string& e : errors) out << "error: " << e << "\n";
      }
      return profiles.empty() ? kExitError : kExitOk;
    }

    if (fixtures->parsed()) {
      if (!fixtures_out.empty()) {
        fs::create_directories(fixtures_out);
        std::ofstream contacts(fs::path(fixtures_out) /
                               "poc_contacts_exfiltration.txt");
        contacts << poc_contacts_exfiltration() << "\n";
        std::ofstream geo(fs::path(fixtures_out) / "poc_geolocation_watch.txt");
        geo << poc_geolocation_watch() << "\n";
        out << "wrote 2 payload fixtures under " << fixtures_out << "\n";
        return kExitOk;
      }
      if (fixtures_common.json()) {
        nlohmann::json payload = {
            {"poc_payloads",
             {{"contacts_exfiltration", std::string(poc_contacts_exfiltration())},
              {"geolocation_watch", std::string(poc_geolocation_watch())}}}};
        emit_json(out, "fixtures", std::move(payload),
                  fixtures_common.deterministic);
      } else {
        out << "# contacts exfiltration (inert fixture)\n"
            << poc_contacts_exfiltration() << "\n\n"
            << "# geolocation watch (inert fixture)\n"
            << poc_geolocation_watch() << "\n";
      }
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace hybridscan
