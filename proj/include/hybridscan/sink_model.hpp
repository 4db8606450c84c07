/**
 * sink_model.hpp — semantics of the DOM / jQuery display sinks.
 *
 * The catalog covers the eleven display APIs and attributes a hybrid app
 * uses to put strings on screen, each flagged with whether it triggers
 * script elements and whether it triggers tag event attributes. The
 * emulator decides, for a given sink and payload string, exactly which
 * JavaScript would run — without ever executing any of it.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridscan/html.hpp"

namespace hybridscan {

enum class SinkFamily { DomApi, DomAttribute, JQueryApi };

struct SinkKind {
  std::string api_name;  // canonical catalog row label, e.g. "innerHTML/outerHTML"
  SinkFamily family = SinkFamily::DomApi;
  bool executes_script_tag = false;
  bool executes_event_attribute = false;

  bool parses_markup() const {
    return executes_script_tag || executes_event_attribute;
  }
  bool is_text_only() const { return !parses_markup(); }
};

enum class PayloadStyle { ScriptTag, EventAttribute };

struct PayloadVector {
  PayloadStyle style = PayloadStyle::EventAttribute;
  // EventAttribute only:
  std::string tag_name = "img";
  std::string event_name = "onerror";
};

struct InertMarkup {
  std::string markup;  // canonical serialization of the construct
  std::string reason;
};

struct ActivationResult {
  std::vector<std::string> executed_code;  // JS source strings that would run
  std::string rendered_text;               // what the user would see
  std::vector<InertMarkup> inert_markup;   // present but not triggered
  std::vector<std::string> external_loads; // script src fetches that would run
};

// The full catalog, in table order. Stable across calls.
const std::vector<SinkKind>& sink_catalog();

// Look up a sink by API or attribute name. Paired rows match either
// spelling ("innerHTML" and "outerHTML" both hit the same row); a
// trailing "()" and letter case are ignored. Names outside the catalog
// yield nullopt — not an error.
std::optional<SinkKind> classify_sink(std::string_view api_name);

// What would run if `payload` were displayed through `sink`.
ActivationResult evaluate_sink(const SinkKind& sink, std::string_view payload);

struct ActivationCell {
  std::string sink_name;
  bool script_tag_triggers = false;
  bool event_attribute_triggers = false;
};

// Runs the emulator over every catalog sink with one canonical payload
// per embedding style; 11 x 2 trigger booleans.
std::vector<ActivationCell> activation_matrix();

// The canonical probe payloads used by activation_matrix().
std::string_view canonical_script_payload();
std::string_view canonical_event_payload();

}  // namespace hybridscan
