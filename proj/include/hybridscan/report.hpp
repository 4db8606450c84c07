/**
 * report.hpp — JSON and text rendering for every tool output.
 *
 * All JSON fields are snake_case; objects serialize with sorted keys, so
 * identical inputs produce byte-identical documents. The envelope carries
 * tool_version and generated_at; the deterministic flag drops the
 * timestamp so consecutive runs diff clean.
 */
#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "hybridscan/js_analysis.hpp"
#include "hybridscan/payload_forge.hpp"
#include "hybridscan/plugin_auditor.hpp"

namespace hybridscan {

inline constexpr std::string_view kToolVersion = "0.1.0";

nlohmann::json envelope(std::string_view kind, nlohmann::json payload,
                        bool deterministic);

nlohmann::json activation_json(const ActivationResult& result);
nlohmann::json payload_json(const Payload& payload);
nlohmann::json fragment_json(const Fragment& fragment);
nlohmann::json fragments_json(const std::vector<Fragment>& fragments);
nlohmann::json plan_json(const InjectionPlan& plan,
                         const VerificationResult* verification = nullptr);
nlohmann::json scan_report_json(const ScanReport& report);
nlohmann::json corpus_stats_json(const CorpusStats& stats);
nlohmann::json plugin_report_json(const PluginProfile& profile,
                                  const CompanionAuditResult& audit);
nlohmann::json taxonomy_json(const std::map<PluginCategory, int>& counts);

std::string activation_text(const ActivationResult& result);
std::string plan_text(const InjectionPlan& plan);  // one field value per line
std::string fragments_text(const std::vector<Fragment>& fragments);
std::string scan_report_text(const ScanReport& report, bool color);
std::string corpus_stats_text(const CorpusStats& stats);
std::string plugin_report_text(const PluginProfile& profile,
                               const CompanionAuditResult& audit);
std::string taxonomy_text(const std::map<PluginCategory, int>& counts);

std::string_view to_string(FragmentRole role);
std::string_view to_string(PlanMode mode);

}  // namespace hybridscan
