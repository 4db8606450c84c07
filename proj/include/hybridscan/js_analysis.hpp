/**
 * js_analysis.hpp — static source→sink scanner for hybrid app trees.
 *
 * Answers the three detection questions over an app's HTML/JS files:
 * does it read data from an injection channel, does it display through
 * an executing sink, and does the displayed data come from the channel?
 * Taint is conservative: flow-insensitive, intra-procedural, no
 * sanitizer modeling. Apps where only the first two answers are yes are
 * kept as a co-occurrence tier for manual review.
 */
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridscan/js_scan.hpp"
#include "hybridscan/sink_model.hpp"

namespace hybridscan {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyPackageError : public AnalysisError {
 public:
  using AnalysisError::AnalysisError;
};

enum class DocKind { Html, Js };
enum class Framework { PhoneGapLike, Unknown };

struct SourceLocation {
  std::string path;  // relative to the app root
  int line = 0;
  int column = 0;
};

struct AppPackage {
  std::string root_path;
  std::string app_id;

  struct Doc {
    std::string path;  // relative
    DocKind kind = DocKind::Js;
    std::string text;
  };
  std::vector<Doc> documents;

  Framework framework = Framework::Unknown;
  std::vector<std::string> declared_plugins;
  std::vector<std::string> warnings;

  // Analysis units: one per JS file, one per inline script block.
  struct Unit {
    size_t doc = 0;
    int line_base = 1;
    JsIndex index;
  };
  std::vector<Unit> units;
};

// Source catalog: bridge / plugin entry points that hand external data to
// a callback. `callee_substring` is matched (lowercased) against the call
// chain; `callback_arg` names the argument whose parameters get tainted.
struct SourceSpec {
  std::string channel;
  std::string callee_substring;
  int callback_arg = 0;
};

struct SourceCatalog {
  std::vector<SourceSpec> entries;
  std::vector<std::string> warnings;
};

SourceCatalog default_source_catalog();
// Adds entries from an override file: `channel callee_substring callback_arg`
// per line, '#' comments.
SourceCatalog apply_source_overrides(SourceCatalog catalog,
                                     std::string_view override_text);
SourceCatalog load_source_catalog(const std::string& override_path);

// True for the channels that carry data in from outside the device.
bool is_external_channel(std::string_view channel);

struct SourceUse {
  SourceLocation location;
  std::string channel;  // catalog channel, or "Internal" / "Web"
  std::string api;      // the matched call chain as written
  std::vector<std::string> tainted_bindings;
  // Internals for the taint pass:
  size_t unit = 0;
  int callback_function = -1;  // index into the unit's functions
};

struct SinkUse {
  SourceLocation location;
  SinkKind sink;
  std::string matched_name;   // spelling at the use site
  std::string argument_expr;  // summarized argument / right-hand side
  bool lexical_only = false;  // argument list could not be recovered
  // Internals for the taint pass:
  size_t unit = 0;
  TokenSpan arg_span;
};

enum class Confidence { Confirmed, Cooccurrence };

struct FlowStep {
  SourceLocation location;
  std::string description;
};

struct Finding {
  SourceUse source;
  SinkUse sink;
  std::vector<FlowStep> path;  // empty for co-occurrence findings
  Confidence confidence = Confidence::Cooccurrence;
};

struct Conditions {
  bool reads_channels = false;
  bool uses_vulnerable_sinks = false;
  bool flow_confirmed = false;
};

enum class Verdict { Vulnerable, PotentiallyVulnerable, NotVulnerable };

struct ScanReport {
  std::string app_id;
  std::string root_path;
  Framework framework = Framework::Unknown;
  int document_count = 0;
  Conditions conditions;
  Verdict verdict = Verdict::NotVulnerable;
  std::vector<Finding> findings;
  std::vector<SourceUse> sources;
  std::vector<SinkUse> sinks;
  std::map<std::string, int> sink_usage;  // canonical sink name -> uses
  std::vector<std::string> declared_plugins;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  SourceCatalog sources = default_source_catalog();
  bool accept_cooccurrence = false;
};

// Walks root_path for .html/.htm/.js files, extracts inline script blocks,
// detects framework markers and manifest plugin declarations.
// EmptyPackageError when no documents are found.
AppPackage ingest_app(const std::string& root_path);

// Builds a package from an explicit file list (plugin auditing reuses this).
AppPackage make_package_from_files(const std::string& root_path,
                                   const std::vector<std::string>& files);

std::vector<SourceUse> find_sources(
    const AppPackage& pkg, const SourceCatalog& catalog = default_source_catalog());

std::vector<SinkUse> find_sinks(const AppPackage& pkg);

std::vector<Finding> taint_flow(const AppPackage& pkg,
                                const std::vector<SourceUse>& sources,
                                const std::vector<SinkUse>& sinks);

ScanReport scan_app(const std::string& root_path,
                    const ScanOptions& options = ScanOptions{});

Verdict judge(const Conditions& conditions, bool accept_cooccurrence);

struct CorpusStats {
  int apps_total = 0;
  std::map<std::string, int> api_app_counts;  // apps using each sink API
  int reads_channels = 0;        // condition 1
  int uses_vulnerable_sinks = 0; // condition 2
  int both_conditions = 0;
  int all_three = 0;
  std::vector<std::pair<std::string, Verdict>> app_verdicts;  // by app id
};

CorpusStats corpus_stats(const std::vector<std::string>& roots,
                         const ScanOptions& options = ScanOptions{});

std::string_view to_string(Framework framework);
std::string_view to_string(Verdict verdict);
std::string_view to_string(Confidence confidence);

}  // namespace hybridscan
