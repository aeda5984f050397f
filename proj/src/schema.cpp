#include "gridee/schema.hpp"

#include <algorithm>

namespace gridee {

int Schema::find_event_type(const std::string& name) const {
  for (size_t i = 0; i < event_types.size(); ++i)
    if (event_types[i] == name) return static_cast<int>(i);
  return -1;
}

int Schema::find_role(const std::string& name) const {
  for (size_t i = 0; i < role_types.size(); ++i)
    if (role_types[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Schema::channel_name(int channel) const {
  if (channel == kChannelTriggerSpan) return "S-T";
  if (channel == kChannelArgumentSpan) return "S-A";
  return "R-" + role_types[static_cast<size_t>(channel - kFixedChannels)];
}

namespace {

bool span_ok(const Span& s, int n) { return s.start >= 0 && s.start <= s.end && s.end < n; }

std::string span_str(const Span& s) {
  return "[" + std::to_string(s.start) + "," + std::to_string(s.end) + "]";
}

}  // namespace

std::vector<std::string> validate(const Sentence& sentence, const Schema& schema) {
  std::vector<std::string> errors;
  const int n = static_cast<int>(sentence.tokens.size());
  if (n == 0) errors.push_back("empty token list");
  for (const std::string& tok : sentence.tokens)
    if (tok.empty()) errors.push_back("empty token");

  for (size_t e = 0; e < sentence.events.size(); ++e) {
    const EventRecord& ev = sentence.events[e];
    const std::string where = "event " + std::to_string(e);
    if (ev.event_type < 0 || ev.event_type >= schema.num_event_types())
      errors.push_back(where + ": event type id " + std::to_string(ev.event_type) +
                       " outside schema");
    if (!span_ok(ev.trigger, n))
      errors.push_back(where + ": trigger span " + span_str(ev.trigger) + " out of range");
    for (size_t a = 0; a < ev.arguments.size(); ++a) {
      const Argument& arg = ev.arguments[a];
      if (arg.role < 0 || arg.role >= schema.num_roles())
        errors.push_back(where + ": role id " + std::to_string(arg.role) + " outside schema");
      if (!span_ok(arg.span, n))
        errors.push_back(where + ": argument " + std::to_string(a) + " span " +
                         span_str(arg.span) + " out of range");
      for (size_t b = a + 1; b < ev.arguments.size(); ++b)
        if (arg == ev.arguments[b])
          errors.push_back(where + ": duplicate (role, span) argument " + span_str(arg.span));
    }
  }

  // Within one event type, spans sharing a grid channel must not partially
  // overlap; the span channels cannot represent that (clash resolution would
  // drop one of them on decode).
  for (size_t e = 0; e < sentence.events.size(); ++e) {
    for (size_t f = e + 1; f < sentence.events.size(); ++f) {
      const EventRecord& a = sentence.events[e];
      const EventRecord& b = sentence.events[f];
      if (a.event_type != b.event_type) continue;
      const std::string pair =
          "events " + std::to_string(e) + "/" + std::to_string(f);
      if (a.trigger.partial_overlap(b.trigger))
        errors.push_back(pair + ": trigger spans partially overlap");
      for (const Argument& x : a.arguments)
        for (const Argument& y : b.arguments)
          if (x.span.partial_overlap(y.span))
            errors.push_back(pair + ": argument spans " + span_str(x.span) + " and " +
                             span_str(y.span) + " partially overlap");
    }
    const EventRecord& ev = sentence.events[e];
    for (size_t a = 0; a < ev.arguments.size(); ++a)
      for (size_t b = a + 1; b < ev.arguments.size(); ++b)
        if (ev.arguments[a].span.partial_overlap(ev.arguments[b].span))
          errors.push_back("event " + std::to_string(e) + ": argument spans partially overlap");
  }
  return errors;
}

void canonicalize(std::vector<EventRecord>& events) {
  for (EventRecord& ev : events) std::sort(ev.arguments.begin(), ev.arguments.end());
  std::sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
    if (a.trigger != b.trigger) return a.trigger < b.trigger;
    if (a.event_type != b.event_type) return a.event_type < b.event_type;
    return a.arguments < b.arguments;
  });
}

void canonicalize(Sentence& sentence) { canonicalize(sentence.events); }

bool sentence_overlapped(const Sentence& sentence) {
  const auto& evs = sentence.events;
  for (size_t e = 0; e < evs.size(); ++e)
    for (size_t f = e + 1; f < evs.size(); ++f) {
      if (evs[e].trigger == evs[f].trigger) return true;
      for (const Argument& x : evs[e].arguments)
        for (const Argument& y : evs[f].arguments)
          if (x.span == y.span) return true;
    }
  return false;
}

bool sentence_nested(const Sentence& sentence) {
  const auto& evs = sentence.events;
  for (size_t e = 0; e < evs.size(); ++e)
    for (size_t f = 0; f < evs.size(); ++f) {
      if (e == f) continue;
      for (const Argument& arg : evs[f].arguments)
        if (arg.span.contains(evs[e].trigger)) return true;
    }
  return false;
}

}  // namespace gridee
