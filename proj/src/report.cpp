#include "hybridscan/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace hybridscan {

namespace {

using nlohmann::json;

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json location_json(const SourceLocation& location) {
  return {{"path", location.path},
          {"line", location.line},
          {"column", location.column}};
}

json source_use_json(const SourceUse& use) {
  json j = location_json(use.location);
  j["channel"] = use.channel;
  j["api"] = use.api;
  j["tainted_bindings"] = use.tainted_bindings;
  return j;
}

json sink_use_json(const SinkUse& use) {
  json j = location_json(use.location);
  j["sink"] = use.sink.api_name;
  j["matched_name"] = use.matched_name;
  j["argument_expr"] = use.argument_expr;
  j["executing"] = use.sink.parses_markup();
  if (use.lexical_only) j["lexical_only"] = true;
  return j;
}

std::string verdict_tag(Verdict verdict, bool color) {
  std::string text(to_string(verdict));
  if (!color) return text;
  const char* code = verdict == Verdict::Vulnerable          ? "\033[31m"
                     : verdict == Verdict::PotentiallyVulnerable ? "\033[33m"
                                                                 : "\033[32m";
  return std::string(code) + text + "\033[0m";
}

}  // namespace

std::string_view to_string(FragmentRole role) {
  switch (role) {
    case FragmentRole::Piece: return "piece";
    case FragmentRole::Combiner: return "combiner";
    case FragmentRole::Trigger: return "trigger";
    case FragmentRole::Direct: return "direct";
  }
  return "piece";
}

std::string_view to_string(PlanMode mode) {
  return mode == PlanMode::TimedSequence ? "timed_sequence" : "multi_field";
}

json envelope(std::string_view kind, json payload, bool deterministic) {
  json j;
  j["tool_version"] = std::string(kToolVersion);
  if (!deterministic) j["generated_at"] = iso8601_now();
  j["kind"] = std::string(kind);
  j["payload"] = std::move(payload);
  return j;
}

json activation_json(const ActivationResult& result) {
  json inert = json::array();
  for (const InertMarkup& entry : result.inert_markup) {
    inert.push_back({{"markup", entry.markup}, {"reason", entry.reason}});
  }
  return {{"executed_code", result.executed_code},
          {"rendered_text", result.rendered_text},
          {"inert_markup", inert},
          {"external_loads", result.external_loads}};
}

json payload_json(const Payload& payload) {
  json vector = {{"style", payload.vector.style == PayloadStyle::ScriptTag
                               ? "script_tag"
                               : "event_attribute"}};
  if (payload.vector.style == PayloadStyle::EventAttribute) {
    vector["tag_name"] = payload.vector.tag_name;
    vector["event_name"] = payload.vector.event_name;
  }
  json j = {{"markup", payload.markup},
            {"length", payload.length},
            {"inner_code", payload.inner_code},
            {"vector", vector}};
  if (!payload.note.empty()) j["note"] = payload.note;
  return j;
}

json fragment_json(const Fragment& fragment) {
  json j = {{"index", fragment.index},
            {"role", std::string(to_string(fragment.role))},
            {"markup", fragment.markup},
            {"length", fragment.length}};
  if (!fragment.var_name.empty()) j["var_name"] = fragment.var_name;
  if (fragment.role == FragmentRole::Piece ||
      fragment.role == FragmentRole::Direct) {
    j["chunk"] = fragment.chunk;
  }
  return j;
}

json fragments_json(const std::vector<Fragment>& fragments) {
  json arr = json::array();
  for (const Fragment& f : fragments) arr.push_back(fragment_json(f));
  return arr;
}

json plan_json(const InjectionPlan& plan,
               const VerificationResult* verification) {
  json assignments = json::array();
  for (const Assignment& a : plan.assignments) {
    json entry = {{"field_name", a.field_name}, {"value", a.value}};
    if (a.time_slot >= 0) entry["time_slot"] = a.time_slot;
    if (a.fragment_index >= 0) entry["fragment_index"] = a.fragment_index;
    assignments.push_back(std::move(entry));
  }
  json j = {{"channel", plan.channel.name},
            {"mode", std::string(to_string(plan.mode))},
            {"assignments", assignments},
            {"fragments", fragments_json(plan.fragments)}};
  if (verification != nullptr) {
    json v = {{"verified", verification->verified}};
    if (!verification->recovered_code.empty())
      v["recovered_code"] = verification->recovered_code;
    if (!verification->reason.empty()) v["reason"] = verification->reason;
    if (verification->failed_index >= 0)
      v["failed_index"] = verification->failed_index;
    j["verification"] = std::move(v);
  }
  return j;
}

json scan_report_json(const ScanReport& report) {
  json findings = json::array();
  for (const Finding& finding : report.findings) {
    json steps = json::array();
    for (const FlowStep& step : finding.path) {
      json s = location_json(step.location);
      s["description"] = step.description;
      steps.push_back(std::move(s));
    }
    findings.push_back({{"confidence", std::string(to_string(finding.confidence))},
                        {"source", source_use_json(finding.source)},
                        {"sink", sink_use_json(finding.sink)},
                        {"path", steps}});
  }
  json sources = json::array();
  for (const SourceUse& use : report.sources)
    sources.push_back(source_use_json(use));
  json sinks = json::array();
  for (const SinkUse& use : report.sinks) sinks.push_back(sink_use_json(use));

  return {{"app_id", report.app_id},
          {"root_path", report.root_path},
          {"framework", std::string(to_string(report.framework))},
          {"document_count", report.document_count},
          {"declared_plugins", report.declared_plugins},
          {"conditions",
           {{"reads_channels", report.conditions.reads_channels},
            {"uses_vulnerable_sinks", report.conditions.uses_vulnerable_sinks},
            {"flow_confirmed", report.conditions.flow_confirmed}}},
          {"verdict", std::string(to_string(report.verdict))},
          {"findings", findings},
          {"sources", sources},
          {"sinks", sinks},
          {"sink_usage", report.sink_usage},
          {"warnings", report.warnings}};
}

json corpus_stats_json(const CorpusStats& stats) {
  json usage;
  for (const auto& [api, count] : stats.api_app_counts) {
    double fraction =
        stats.apps_total > 0
            ? static_cast<double>(count) / stats.apps_total
            : 0.0;
    usage[api] = {{"apps", count}, {"fraction", fraction}};
  }
  json verdicts = json::array();
  for (const auto& [app_id, verdict] : stats.app_verdicts) {
    verdicts.push_back(
        {{"app_id", app_id}, {"verdict", std::string(to_string(verdict))}});
  }
  return {{"apps_total", stats.apps_total},
          {"api_usage", usage},
          {"funnel",
           {{"reads_channels", stats.reads_channels},
            {"uses_vulnerable_sinks", stats.uses_vulnerable_sinks},
            {"both_conditions", stats.both_conditions},
            {"all_three", stats.all_three}}},
          {"verdicts", verdicts}};
}

json plugin_report_json(const PluginProfile& profile,
                        const CompanionAuditResult& audit) {
  json displays = json::array();
  for (const VulnerableDisplay& d : audit.vulnerable_displays) {
    displays.push_back(
        {{"file", d.file}, {"line", d.line}, {"sink_api", d.sink_api}});
  }
  return {{"name", profile.name},
          {"root_path", profile.root_path},
          {"category", std::string(to_string(classify_plugin(profile)))},
          {"returns_data", profile.returns_data},
          {"data_controllability",
           std::string(to_string(profile.data_controllability))},
          {"untested_channel", profile.untested_channel},
          {"evidence", profile.evidence},
          {"native_sources", profile.native_sources},
          {"companion_js", profile.companion_js},
          {"companion_audit",
           {{"purpose", std::string(to_string(audit.purpose))},
            {"vulnerable_displays", displays}}}};
}

json taxonomy_json(const std::map<PluginCategory, int>& counts) {
  json j;
  int total = 0;
  for (const auto& [category, count] : counts) {
    j[std::string(to_string(category))] = count;
    total += count;
  }
  j["total"] = total;
  return j;
}

std::string activation_text(const ActivationResult& result) {
  std::ostringstream out;
  out << "executed_code: " << result.executed_code.size() << "\n";
  for (size_t i = 0; i < result.executed_code.size(); ++i) {
    out << "  [" << i << "] " << result.executed_code[i] << "\n";
  }
  if (!result.external_loads.empty()) {
    out << "external_loads:\n";
    for (const std::string& url : result.external_loads)
      out << "  " << url << "\n";
  }
  out << "rendered_text: " << result.rendered_text << "\n";
  if (!result.inert_markup.empty()) {
    out << "inert_markup:\n";
    for (const InertMarkup& entry : result.inert_markup) {
      out << "  " << entry.markup << "  (" << entry.reason << ")\n";
    }
  }
  return out.str();
}

std::string plan_text(const InjectionPlan& plan) {
  std::ostringstream out;
  for (const Assignment& a : plan.assignments) out << a.value << "\n";
  return out.str();
}

std::string fragments_text(const std::vector<Fragment>& fragments) {
  std::ostringstream out;
  for (const Fragment& f : fragments) out << f.markup << "\n";
  return out.str();
}

std::string scan_report_text(const ScanReport& report, bool color) {
  std::ostringstream out;
  out << "app: " << report.app_id << "  (" << report.root_path << ")\n";
  out << "framework: " << to_string(report.framework)
      << "  documents: " << report.document_count << "\n";
  out << "conditions: reads_channels="
      << (report.conditions.reads_channels ? "yes" : "no")
      << " uses_vulnerable_sinks="
      << (report.conditions.uses_vulnerable_sinks ? "yes" : "no")
      << " flow_confirmed=" << (report.conditions.flow_confirmed ? "yes" : "no")
      << "\n";
  out << "verdict: " << verdict_tag(report.verdict, color) << "\n";
  if (!report.findings.empty()) {
    out << "findings:\n";
    for (const Finding& finding : report.findings) {
      out << "  [" << to_string(finding.confidence) << "] "
          << finding.source.channel << " data via " << finding.source.api
          << " -> " << finding.sink.matched_name << " at "
          << finding.sink.location.path << ":" << finding.sink.location.line
          << ":" << finding.sink.location.column << "\n";
      for (const FlowStep& step : finding.path) {
        out << "      " << step.location.path << ":" << step.location.line
            << ": " << step.description << "\n";
      }
    }
  }
  if (!report.sink_usage.empty()) {
    out << "sink usage:\n";
    for (const auto& [api, count] : report.sink_usage) {
      out << "  " << std::left << std::setw(26) << api << count << "\n";
    }
  }
  for (const std::string& warning : report.warnings) {
    out << "warning: " << warning << "\n";
  }
  return out.str();
}

std::string corpus_stats_text(const CorpusStats& stats) {
  std::ostringstream out;
  out << "apps scanned: " << stats.apps_total << "\n";
  out << "api usage (apps using each display API):\n";
  for (const auto& [api, count] : stats.api_app_counts) {
    double fraction = stats.apps_total > 0
                          ? 100.0 * count / stats.apps_total
                          : 0.0;
    out << "  " << std::left << std::setw(26) << api << std::right
        << std::setw(4) << count << "  " << std::fixed << std::setprecision(2)
        << fraction << "%\n";
  }
  out << "condition funnel:\n";
  out << "  reads channels:          " << stats.reads_channels << "\n";
  out << "  uses vulnerable sinks:   " << stats.uses_vulnerable_sinks << "\n";
  out << "  both conditions:         " << stats.both_conditions << "\n";
  out << "  all three (flow found):  " << stats.all_three << "\n";
  return out.str();
}

std::string plugin_report_text(const PluginProfile& profile,
                               const CompanionAuditResult& audit) {
  std::ostringstream out;
  out << "plugin: " << profile.name << "\n";
  out << "category: " << to_string(classify_plugin(profile))
      << (profile.untested_channel ? "  (untested channel)" : "") << "\n";
  out << "returns_data: " << (profile.returns_data ? "yes" : "no")
      << "  controllability: " << to_string(profile.data_controllability)
      << "\n";
  for (const std::string& e : profile.evidence) out << "  evidence: " << e << "\n";
  out << "companion js purpose: " << to_string(audit.purpose) << "\n";
  for (const VulnerableDisplay& d : audit.vulnerable_displays) {
    out << "  vulnerable display: " << d.file << ":" << d.line << "  "
        << d.sink_api << "\n";
  }
  return out.str();
}

std::string taxonomy_text(const std::map<PluginCategory, int>& counts) {
  std::ostringstream out;
  int total = 0;
  out << std::left << std::setw(24) << "Category" << std::right << std::setw(6)
      << "Count" << "\n";
  static const std::pair<PluginCategory, const char*> kOrder[] = {
      {PluginCategory::NoData, "No Data"},
      {PluginCategory::NonExploitableData, "Non-Exploitable Data"},
      {PluginCategory::WebData, "Web Data"},
      {PluginCategory::InternalData, "Internal Data"},
      {PluginCategory::ExternalData, "External Data"},
  };
  for (const auto& [category, label] : kOrder) {
    auto it = counts.find(category);
    int count = it == counts.end() ? 0 : it->second;
    total += count;
    out << std::left << std::setw(24) << label << std::right << std::setw(6)
        << count << "\n";
  }
  out << std::left << std::setw(24) << "Total" << std::right << std::setw(6)
      << total << "\n";
  return out.str();
}

}  // namespace hybridscan
