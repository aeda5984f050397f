#pragma once

#include <string>
#include <vector>

namespace gridee {

// Inclusive word-index span: [start, end], end >= start.
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool operator==(const Span& o) const = default;
  auto operator<=>(const Span& o) const = default;

  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool disjoint(const Span& o) const { return end < o.start || o.end < start; }
  // Overlapping without one containing the other.
  bool partial_overlap(const Span& o) const {
    return !disjoint(o) && !contains(o) && !o.contains(*this);
  }
};

struct Argument {
  int role = 0;  // index into Schema::role_types
  Span span;

  bool operator==(const Argument& o) const = default;
  auto operator<=>(const Argument& o) const = default;
};

struct EventRecord {
  int event_type = 0;  // index into Schema::event_types
  Span trigger;
  std::vector<Argument> arguments;

  bool operator==(const EventRecord& o) const = default;
  auto operator<=>(const EventRecord& o) const = default;
};

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<EventRecord> events;

  bool operator==(const Sentence& o) const = default;
};

// Label channel layout of a word-pair grid: two span channels followed by one
// channel per role.
inline constexpr int kChannelTriggerSpan = 0;
inline constexpr int kChannelArgumentSpan = 1;
inline constexpr int kFixedChannels = 2;

struct Schema {
  std::vector<std::string> event_types;
  std::vector<std::string> role_types;

  int num_event_types() const { return static_cast<int>(event_types.size()); }
  int num_roles() const { return static_cast<int>(role_types.size()); }
  int num_channels() const { return kFixedChannels + num_roles(); }
  int find_event_type(const std::string& name) const;
  int find_role(const std::string& name) const;
  std::string channel_name(int channel) const;

  bool operator==(const Schema& o) const = default;
};

// Structural checks for one sentence against a schema; returns one message
// per violation, empty when the sentence is well formed.
std::vector<std::string> validate(const Sentence& sentence, const Schema& schema);

// Sorts events by (trigger, type) and arguments by (role, span); decode and
// the generator both emit this order so record comparisons are stable.
void canonicalize(Sentence& sentence);
void canonicalize(std::vector<EventRecord>& events);

// Structure queries used for corpus statistics and subset evaluation.
// Overlapped: two events share a trigger span or an argument span.
// Nested: one event's trigger span lies inside another event's argument span.
bool sentence_overlapped(const Sentence& sentence);
bool sentence_nested(const Sentence& sentence);

}  // namespace gridee
