#include "gridee/codec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gridee {

namespace {

void check_span(const Span& s, int n, const char* what) {
  if (s.start < 0 || s.start > s.end || s.end >= n)
    throw std::invalid_argument(std::string("encode: ") + what + " span [" +
                                std::to_string(s.start) + "," + std::to_string(s.end) +
                                "] out of range for n=" + std::to_string(n));
}

void check_no_partial_overlap(const std::vector<Span>& spans, const char* channel) {
  for (size_t i = 0; i < spans.size(); ++i)
    for (size_t j = i + 1; j < spans.size(); ++j)
      if (spans[i].partial_overlap(spans[j]))
        throw std::invalid_argument(std::string("encode: partially overlapping ") + channel +
                                    " spans cannot share a channel");
}

bool grid_tagged(const LabelGrid& g, int c, int i, int j) { return g.tag(c, i, j); }
bool grid_tagged(const ScoreGrid& g, int c, int i, int j) { return g.tagged(c, i, j); }
double grid_score(const LabelGrid& g, int c, int i, int j) {
  return g.tag(c, i, j) ? 1.0 : 0.0;
}
double grid_score(const ScoreGrid& g, int c, int i, int j) { return g.score(c, i, j); }

// Cells a strategy prescribes for one (trigger, argument) pair.
template <typename Fn>
void for_each_role_cell(const Span& trigger, const Span& argument, RoleStrategy strategy,
                        Fn&& fn) {
  switch (strategy) {
    case RoleStrategy::kHeadHead:
      fn(trigger.start, argument.start);
      break;
    case RoleStrategy::kWordHead:
      for (int t = trigger.start; t <= trigger.end; ++t) fn(t, argument.start);
      break;
    case RoleStrategy::kHeadWord:
      for (int a = argument.start; a <= argument.end; ++a) fn(trigger.start, a);
      break;
    case RoleStrategy::kWordWord:
      for (int t = trigger.start; t <= trigger.end; ++t)
        for (int a = argument.start; a <= argument.end; ++a) fn(t, a);
      break;
  }
}

template <typename Grid>
bool link_roles_impl(const Grid& grid, int role_channel, const Span& trigger,
                     const Span& argument, RoleStrategy strategy) {
  if (role_channel < kFixedChannels || role_channel >= grid.channels)
    throw std::invalid_argument("link_roles: channel " + std::to_string(role_channel) +
                                " is not a role channel");
  int total = 0, hit = 0;
  for_each_role_cell(trigger, argument, strategy, [&](int t, int a) {
    ++total;
    if (grid_tagged(grid, role_channel, t, a)) ++hit;
  });
  if (strategy == RoleStrategy::kWordWord) return 2 * hit > total;  // strict majority
  return hit == total;
}

template <typename Grid>
std::vector<ScoredSpan> collect_spans(const Grid& grid, int channel) {
  std::vector<ScoredSpan> out;
  for (int i = 0; i < grid.n; ++i)
    for (int j = i; j < grid.n; ++j)
      if (grid_tagged(grid, channel, i, j))
        out.push_back({Span{i, j}, grid_score(grid, channel, i, j)});
  return out;
}

template <typename Grid>
std::vector<EventRecord> decode_impl(const Grid& grid, const Schema& schema,
                                     RoleStrategy strategy) {
  if (grid.channels != schema.num_channels())
    throw std::invalid_argument("decode: grid channel count does not match schema");

  // 1) span candidates, 2) clash resolution per span channel
  const std::vector<ScoredSpan> triggers =
      resolve_span_clashes(collect_spans(grid, kChannelTriggerSpan));
  const std::vector<ScoredSpan> arguments =
      resolve_span_clashes(collect_spans(grid, kChannelArgumentSpan));

  // 3) role linking, 4) event assembly
  std::vector<EventRecord> events;
  for (const ScoredSpan& trig : triggers) {
    EventRecord ev;
    ev.event_type = grid.event_type;
    ev.trigger = trig.span;
    for (int role = 0; role < schema.num_roles(); ++role) {
      const int channel = kFixedChannels + role;
      for (const ScoredSpan& arg : arguments)
        if (link_roles_impl(grid, channel, trig.span, arg.span, strategy))
          ev.arguments.push_back({role, arg.span});
    }
    events.push_back(std::move(ev));
  }
  canonicalize(events);
  return events;
}

}  // namespace

LabelGrid encode(const std::vector<EventRecord>& events, int event_type, int n,
                 const Schema& schema, RoleStrategy strategy) {
  if (n <= 0) throw std::invalid_argument("encode: n must be positive");
  std::vector<Span> trigger_spans, argument_spans;
  for (const EventRecord& ev : events) {
    if (ev.event_type != event_type)
      throw std::invalid_argument("encode: event type " + std::to_string(ev.event_type) +
                                  " does not match grid type " + std::to_string(event_type));
    check_span(ev.trigger, n, "trigger");
    trigger_spans.push_back(ev.trigger);
    for (const Argument& arg : ev.arguments) {
      if (arg.role < 0 || arg.role >= schema.num_roles())
        throw std::invalid_argument("encode: role id out of range");
      check_span(arg.span, n, "argument");
      argument_spans.push_back(arg.span);
    }
  }
  check_no_partial_overlap(trigger_spans, "trigger");
  check_no_partial_overlap(argument_spans, "argument");

  LabelGrid grid(event_type, n, schema.num_channels());
  for (const EventRecord& ev : events) {
    grid.set(kChannelTriggerSpan, ev.trigger.start, ev.trigger.end);
    for (const Argument& arg : ev.arguments) {
      grid.set(kChannelArgumentSpan, arg.span.start, arg.span.end);
      for_each_role_cell(ev.trigger, arg.span, strategy,
                         [&](int t, int a) { grid.set(kFixedChannels + arg.role, t, a); });
    }
  }
  return grid;
}

std::vector<ScoredSpan> resolve_span_clashes(std::vector<ScoredSpan> spans) {
  std::sort(spans.begin(), spans.end(), [](const ScoredSpan& a, const ScoredSpan& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.span < b.span;
  });
  std::vector<ScoredSpan> kept;
  for (const ScoredSpan& cand : spans) {
    bool clashes = false;
    for (const ScoredSpan& k : kept)
      if (cand.span.partial_overlap(k.span)) {
        clashes = true;
        break;
      }
    if (!clashes) kept.push_back(cand);
  }
  std::sort(kept.begin(), kept.end(),
            [](const ScoredSpan& a, const ScoredSpan& b) { return a.span < b.span; });
  return kept;
}

bool link_roles(const LabelGrid& grid, int role_channel, const Span& trigger,
                const Span& argument, RoleStrategy strategy) {
  return link_roles_impl(grid, role_channel, trigger, argument, strategy);
}

bool link_roles(const ScoreGrid& grid, int role_channel, const Span& trigger,
                const Span& argument, RoleStrategy strategy) {
  return link_roles_impl(grid, role_channel, trigger, argument, strategy);
}

std::vector<EventRecord> decode(const LabelGrid& grid, const Schema& schema,
                                RoleStrategy strategy) {
  return decode_impl(grid, schema, strategy);
}

std::vector<EventRecord> decode(const ScoreGrid& grid, const Schema& schema,
                                RoleStrategy strategy) {
  return decode_impl(grid, schema, strategy);
}

}  // namespace gridee
