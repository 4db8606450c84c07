/**
 * plugin_auditor.hpp — bridge plugin exploitability triage.
 *
 * Profiles a plugin directory (native half, companion JavaScript, what
 * its callbacks return), classifies it into the five-way taxonomy —
 * no data / non-exploitable data / web / internal / external — and
 * audits the companion JavaScript for displays of callback data through
 * executing sinks. Controllability inference is keyword-evidence driven
 * and extensible through an override table.
 */
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hybridscan/js_analysis.hpp"

namespace hybridscan {

class NotAPluginError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

enum class DataControllability {
  None,              // nothing comes back
  Fixed,             // booleans, constants, status values
  WebControlled,     // data fetched from web services
  InternalResource,  // device-resident data (contacts, calendar, storage)
  ExternalEntity,    // data broadcast by outside entities (radios, scans)
};

enum class PluginCategory {
  NoData,
  NonExploitableData,
  WebData,
  InternalData,
  ExternalData,
};

struct EvidenceTable {
  std::vector<std::pair<std::string, DataControllability>> keywords;
  std::vector<std::string> untested_keywords;  // channels nobody exercised
  std::vector<std::string> warnings;
};

EvidenceTable default_evidence_table();
// Override lines: `external|internal|web|fixed|untested <keyword>`.
EvidenceTable apply_evidence_overrides(EvidenceTable table,
                                       std::string_view override_text);
EvidenceTable load_evidence_table(const std::string& path);

struct PluginProfile {
  std::string name;
  std::string root_path;
  std::vector<std::string> native_sources;  // relative paths
  std::vector<std::string> companion_js;    // JS and HTML companions
  bool returns_data = false;
  DataControllability data_controllability = DataControllability::None;
  std::vector<std::string> evidence;  // what drove the classification
  bool untested_channel = false;
};

enum class CompanionPurpose { SampleCode, Library, Both, NoJs };

struct VulnerableDisplay {
  std::string file;
  int line = 0;
  std::string sink_api;  // canonical executing sink name
};

struct CompanionAuditResult {
  std::vector<VulnerableDisplay> vulnerable_displays;
  CompanionPurpose purpose = CompanionPurpose::NoJs;
};

// Profiles the directory. NotAPluginError when there is neither a plugin
// manifest nor a recognizable native+JS layout.
PluginProfile build_profile(const std::string& plugin_root,
                            const EvidenceTable& table = default_evidence_table());

PluginCategory classify_plugin(const PluginProfile& profile);

// Runs sink detection plus the conservative taint pass over the
// companion JavaScript; callback data reaching an executing sink is a
// vulnerable display.
CompanionAuditResult audit_companion_js(
    const PluginProfile& profile,
    const SourceCatalog& catalog = default_source_catalog());

// Category -> count; all five categories always present.
std::map<PluginCategory, int> taxonomy_counts(
    const std::vector<PluginProfile>& profiles);

std::string_view to_string(PluginCategory category);
std::string_view to_string(DataControllability controllability);
std::string_view to_string(CompanionPurpose purpose);

}  // namespace hybridscan
