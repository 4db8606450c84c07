/**
 * channel_catalog.hpp — injection channels and their field length limits.
 *
 * Seven built-in channels (Wi-Fi SSID through JPEG metadata) with the
 * per-field limits an attacker has to fit a payload into. Limits are
 * counted in printable-ASCII characters. Fields whose capacity is only
 * known to exceed 2000 are modeled as a lower bound: values up to 2000
 * validate cleanly, longer ones come back flagged as unverified.
 */
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hybridscan {

enum class Delivery {
  MultiField,        // several metadata fields, one fragment each
  SingleFieldTimed,  // one field, values broadcast over time
  SingleShot,        // one field, one opportunity
};

struct FieldSpec {
  std::string name;
  int max_length = 1;            // characters
  bool lower_bound_only = false; // true: accepts up to max_length, warns beyond
};

struct Channel {
  std::string name;
  std::vector<FieldSpec> fields;
  Delivery delivery = Delivery::SingleShot;

  const FieldSpec* find_field(std::string_view field_name) const;
};

enum class ValidationStatus {
  Ok,
  Unverified,   // beyond a lower-bound-only limit; not known to fit
  Violation,
  UnknownField,
};

struct ValidationResult {
  ValidationStatus status = ValidationStatus::Ok;
  int limit = 0;  // the limit consulted, when applicable
  std::string message;

  bool ok() const { return status == ValidationStatus::Ok; }
};

// The seven built-in channels in stable order:
// WiFi, Bluetooth, NFC, SMS, QRCode, MP3MP4, JPEG.
std::vector<Channel> builtin_channels();

ValidationResult validate_value(const Channel& channel,
                                std::string_view field_name,
                                std::string_view value);

struct ChannelCatalog {
  std::vector<Channel> channels;
  std::vector<std::string> warnings;  // rejected override lines

  const Channel* find(std::string_view name) const;  // case-insensitive
};

ChannelCatalog load_channel_catalog();

// Applies an override file: one `channel.field=limit` record per line,
// '#' comments. Overrides may add channels or tighten built-in limits;
// attempts to loosen a built-in are recorded as warnings and ignored.
ChannelCatalog load_channel_catalog(const std::string& override_path);
ChannelCatalog apply_channel_overrides(ChannelCatalog catalog,
                                       std::string_view override_text);

}  // namespace hybridscan
