#include "hybridscan/channel_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hybridscan {

namespace {

constexpr int kLowerBound = 2000;

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

FieldSpec bounded(std::string name, int limit) {
  return FieldSpec{std::move(name), limit, false};
}

FieldSpec at_least_2000(std::string name) {
  return FieldSpec{std::move(name), kLowerBound, true};
}

bool is_printable_ascii(std::string_view value) {
  return std::all_of(value.begin(), value.end(), [](unsigned char c) {
    return c >= 0x20 && c <= 0x7E;
  });
}

}  // namespace

const FieldSpec* Channel::find_field(std::string_view field_name) const {
  std::string wanted = lowered(field_name);
  for (const FieldSpec& field : fields) {
    if (lowered(field.name) == wanted) return &field;
  }
  return nullptr;
}

std::vector<Channel> builtin_channels() {
  std::vector<Channel> channels;
  channels.push_back(
      {"WiFi", {bounded("SSID", 32)}, Delivery::SingleFieldTimed});
  channels.push_back(
      {"Bluetooth", {bounded("DeviceName", 248)}, Delivery::SingleFieldTimed});
  channels.push_back({"NFC", {at_least_2000("Content")}, Delivery::SingleShot});
  channels.push_back(
      {"SMS", {bounded("MessageBody", 140)}, Delivery::SingleShot});
  channels.push_back(
      {"QRCode", {at_least_2000("Content")}, Delivery::SingleShot});
  channels.push_back({"MP3MP4",
                      {at_least_2000("Title"), at_least_2000("Artist"),
                       at_least_2000("Album"), at_least_2000("Composer"),
                       at_least_2000("Genre"), at_least_2000("Comment"),
                       at_least_2000("Copyright")},
                      Delivery::MultiField});
  channels.push_back({"JPEG",
                      {at_least_2000("Title"), at_least_2000("Artist"),
                       at_least_2000("Comment"), at_least_2000("Copyright"),
                       at_least_2000("Tag"), at_least_2000("Subject"),
                       bounded("Model", 32), bounded("Maker", 42)},
                      Delivery::MultiField});
  return channels;
}

ValidationResult validate_value(const Channel& channel,
                                std::string_view field_name,
                                std::string_view value) {
  const FieldSpec* field = channel.find_field(field_name);
  if (field == nullptr) {
    return {ValidationStatus::UnknownField, 0,
            "no field named '" + std::string(field_name) + "' on channel " +
                channel.name};
  }
  if (!is_printable_ascii(value)) {
    return {ValidationStatus::Violation, field->max_length,
            "non-ASCII content; limits are defined over printable ASCII"};
  }
  int length = static_cast<int>(value.size());
  if (length <= field->max_length) return {ValidationStatus::Ok,
                                           field->max_length, ""};
  if (field->lower_bound_only) {
    return {ValidationStatus::Unverified, field->max_length,
            "unverified beyond the " + std::to_string(field->max_length) +
                "-character bound"};
  }
  return {ValidationStatus::Violation, field->max_length,
          std::to_string(length) + " characters exceed the " +
              std::to_string(field->max_length) + "-character limit"};
}

const Channel* ChannelCatalog::find(std::string_view name) const {
  std::string wanted = lowered(name);
  for (const Channel& channel : channels) {
    if (lowered(channel.name) == wanted) return &channel;
  }
  return nullptr;
}

ChannelCatalog load_channel_catalog() {
  return ChannelCatalog{builtin_channels(), {}};
}

ChannelCatalog load_channel_catalog(const std::string& override_path) {
  std::ifstream in(override_path);
  if (!in) {
    throw std::runtime_error("cannot open channel override file: " +
                             override_path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return apply_channel_overrides(load_channel_catalog(), text.str());
}

ChannelCatalog apply_channel_overrides(ChannelCatalog catalog,
                                       std::string_view override_text) {
  const std::vector<Channel> builtins = builtin_channels();
  auto is_builtin = [&](std::string_view name) {
    std::string wanted = lowered(name);
    return std::any_of(builtins.begin(), builtins.end(),
                       [&](const Channel& c) { return lowered(c.name) == wanted; });
  };

  std::istringstream lines{std::string(override_text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string line = trimmed(raw);
    if (line.empty() || line[0] == '#') continue;
    auto reject = [&](const std::string& why) {
      catalog.warnings.push_back("line " + std::to_string(line_no) + ": " +
                                 why + " (" + line + ")");
    };

    size_t eq = line.find('=');
    size_t dot = line.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq ||
        dot == 0 || dot + 1 == eq) {
      reject("expected channel.field=limit");
      continue;
    }
    std::string channel_name = trimmed(line.substr(0, dot));
    std::string field_name = trimmed(line.substr(dot + 1, eq - dot - 1));
    std::string limit_text = trimmed(line.substr(eq + 1));
    int limit = 0;
    try {
      size_t used = 0;
      limit = std::stoi(limit_text, &used);
      if (used != limit_text.size()) throw std::invalid_argument(limit_text);
    } catch (const std::exception&) {
      reject("limit is not an integer");
      continue;
    }
    if (limit < 1) {
      reject("limit must be >= 1");
      continue;
    }

    Channel* channel = nullptr;
    for (Channel& c : catalog.channels) {
      if (lowered(c.name) == lowered(channel_name)) {
        channel = &c;
        break;
      }
    }
    if (channel == nullptr) {
      catalog.channels.push_back(
          {channel_name, {bounded(field_name, limit)}, Delivery::SingleShot});
      continue;
    }

    FieldSpec* field = nullptr;
    for (FieldSpec& f : channel->fields) {
      if (lowered(f.name) == lowered(field_name)) {
        field = &f;
        break;
      }
    }
    if (field == nullptr) {
      if (is_builtin(channel->name)) {
        reject("built-in channels cannot grow new fields");
      } else {
        channel->fields.push_back(bounded(field_name, limit));
        if (channel->fields.size() > 1) channel->delivery = Delivery::MultiField;
      }
      continue;
    }
    if (is_builtin(channel->name) && limit > field->max_length) {
      reject("built-in limits cannot be loosened");
      continue;
    }
    field->max_length = limit;
    field->lower_bound_only = false;  // an explicit override pins the bound
  }
  return catalog;
}

}  // namespace hybridscan
