/**
 * payload_forge.hpp — loader payloads, length-limited fragmentation and
 * delivery planning.
 *
 * A loader is the shortest markup that pulls second-stage JavaScript from
 * a URL. When even the loader exceeds a channel's field limit, the forge
 * splits its code into variable-assignment pieces carried by img-onerror
 * fragments and appends an eval trigger that concatenates the variables
 * back together. The trigger is always delivered last.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridscan/channel_catalog.hpp"
#include "hybridscan/sink_model.hpp"

namespace hybridscan {

class ForgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidUrlError : public ForgeError {
 public:
  using ForgeError::ForgeError;
};

class LimitTooSmallError : public ForgeError {
 public:
  using ForgeError::ForgeError;
};

class UnescapableChunkError : public ForgeError {
 public:
  using ForgeError::ForgeError;
};

class InsufficientCapacityError : public ForgeError {
 public:
  using ForgeError::ForgeError;
};

enum class LoaderStyle { ScriptTagLoader, ImgOnErrorDynamic, JQueryGetScript };

struct Payload {
  std::string markup;
  PayloadVector vector;
  std::string inner_code;  // inline JS the payload runs ("" for script src)
  int length = 0;          // character count of markup
  std::string note;        // remarks on how the length was counted
};

// Emits the canonical single-line loader form for `url`.
// InvalidUrlError: whitespace/quote/angle characters in the URL, or a
// missing scheme where the style requires one (getScript).
Payload make_loader(std::string_view url, LoaderStyle style);

enum class FragmentRole {
  Piece,     // carries a chunk of the code in a variable assignment
  Combiner,  // concatenates earlier variables into a new one
  Trigger,   // eval of the concatenated variables; always last
  Direct,    // whole code fits one fragment; carries and triggers it
};

struct Fragment {
  int index = 0;
  FragmentRole role = FragmentRole::Piece;
  std::string markup;
  std::string var_name;  // Piece / Combiner
  std::string chunk;     // Piece / Direct: the code substring carried
  int length = 0;        // character count of markup
};

// Piece/Direct chunks concatenated in index order.
std::string reassemble(const std::vector<Fragment>& fragments);

// Splits inner_code so every fragment's markup fits within `limit`.
// LimitTooSmallError when not even a one-character chunk (or the trigger)
// fits; UnescapableChunkError when the code contains a character the
// wrapper cannot carry (whitespace, '"' or '>').
std::vector<Fragment> fragment_payload(
    std::string_view inner_code, int limit,
    const PayloadVector& wrapper = PayloadVector{});

struct Assignment {
  std::string field_name;
  int time_slot = -1;       // delivery position for timed sequences
  int fragment_index = -1;  // -1: value is the whole combined payload
  std::string value;        // the string written into the field
};

enum class PlanMode { MultiField, TimedSequence };

struct InjectionPlan {
  Channel channel;
  PlanMode mode = PlanMode::MultiField;
  std::vector<Assignment> assignments;  // delivery order
  std::vector<Fragment> fragments;      // index order
};

// Maps fragments onto a channel:
//  - MultiField channels assign each fragment to a distinct field that
//    accepts its length;
//  - SingleFieldTimed channels emit a timed sequence of values for the
//    one field, trigger last;
//  - SingleShot channels take the whole payload concatenated into the
//    single field, or fail.
// InsufficientCapacityError when fields/limits cannot host the payload.
InjectionPlan plan_injection(const std::vector<Fragment>& fragments,
                             const Channel& channel,
                             const std::vector<std::string>& field_preference = {});

struct VerificationResult {
  bool verified = false;
  std::string recovered_code;
  int failed_index = -1;  // delivery position of the first divergence
  std::string reason;
};

// Feeds every assignment through the sink emulator in delivery order and
// replays the variable assignments and the eval symbolically (string
// concatenation only, nothing is executed), then checks the recovered
// code against `expected_code` — by default the plan's own chunks.
VerificationResult verify_plan(const InjectionPlan& plan, const SinkKind& sink,
                               std::optional<std::string> expected_code =
                                   std::nullopt);

// Variable name for piece `index`: a..z, aa..az, ba.. and so on.
std::string fragment_var_name(size_t index);

}  // namespace hybridscan
