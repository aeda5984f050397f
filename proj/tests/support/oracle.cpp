#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace testoracle {

namespace {

using gridee::Argument;
using gridee::EventRecord;
using gridee::RoleStrategy;
using gridee::Schema;

struct Cand {
  int s = 0, e = 0;
  double score = 0.0;
};

bool partially_overlapping(int as, int ae, int bs, int be) {
  const bool share_word = !(ae < bs || be < as);
  const bool a_inside_b = bs <= as && ae <= be;
  const bool b_inside_a = as <= bs && be <= ae;
  return share_word && !a_inside_b && !b_inside_a;
}

struct GridView {
  int n = 0;
  int channels = 0;
  std::function<bool(int, int, int)> tagged;
  std::function<double(int, int, int)> score;
};

// Greedy by repeated extraction of the best remaining candidate (score, then
// smaller start, then smaller end); a candidate survives unless it partially
// overlaps something already kept.
std::vector<Cand> pick_spans(const GridView& g, int channel) {
  std::vector<Cand> cands;
  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      if (g.tagged(channel, i, j)) cands.push_back(Cand{i, j, g.score(channel, i, j)});

  std::vector<bool> used(cands.size(), false);
  std::vector<Cand> kept;
  for (size_t round = 0; round < cands.size(); ++round) {
    int best = -1;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (used[i]) continue;
      if (best < 0) {
        best = static_cast<int>(i);
        continue;
      }
      const Cand& a = cands[i];
      const Cand& b = cands[static_cast<size_t>(best)];
      if (a.score > b.score ||
          (a.score == b.score && (a.s < b.s || (a.s == b.s && a.e < b.e))))
        best = static_cast<int>(i);
    }
    used[static_cast<size_t>(best)] = true;
    bool clash = false;
    for (const Cand& k : kept)
      clash = clash || partially_overlapping(cands[static_cast<size_t>(best)].s,
                                             cands[static_cast<size_t>(best)].e, k.s, k.e);
    if (!clash) kept.push_back(cands[static_cast<size_t>(best)]);
  }
  return kept;
}

bool linked(const GridView& g, int channel, const Cand& trig, const Cand& arg,
            RoleStrategy strategy) {
  int hits = 0, total = 0;
  const bool trig_head_only =
      strategy == RoleStrategy::kHeadHead || strategy == RoleStrategy::kHeadWord;
  const bool arg_head_only =
      strategy == RoleStrategy::kHeadHead || strategy == RoleStrategy::kWordHead;
  const int t_hi = trig_head_only ? trig.s : trig.e;
  const int a_hi = arg_head_only ? arg.s : arg.e;
  for (int i = trig.s; i <= t_hi; ++i) {
    for (int j = arg.s; j <= a_hi; ++j) {
      ++total;
      hits += g.tagged(channel, i, j) ? 1 : 0;
    }
  }
  if (strategy == RoleStrategy::kWordWord) return 2 * hits > total;
  return hits == total;
}

std::vector<EventRecord> run(const GridView& g, int event_type, const Schema& schema,
                             RoleStrategy strategy) {
  if (g.n > 8) throw std::invalid_argument("oracle_decode: n too large for brute force");
  if (g.channels != schema.num_channels())
    throw std::invalid_argument("oracle_decode: channel count mismatch");

  const auto triggers = pick_spans(g, gridee::kChannelTriggerSpan);
  const auto args = pick_spans(g, gridee::kChannelArgumentSpan);

  std::vector<EventRecord> events;
  for (const Cand& t : triggers) {
    EventRecord ev;
    ev.event_type = event_type;
    ev.trigger = gridee::Span{t.s, t.e};
    for (int r = 0; r < schema.num_roles(); ++r)
      for (const Cand& a : args)
        if (linked(g, gridee::kFixedChannels + r, t, a, strategy))
          ev.arguments.push_back(Argument{r, gridee::Span{a.s, a.e}});
    std::sort(ev.arguments.begin(), ev.arguments.end(), [](const Argument& x, const Argument& y) {
      if (x.role != y.role) return x.role < y.role;
      if (x.span.start != y.span.start) return x.span.start < y.span.start;
      return x.span.end < y.span.end;
    });
    events.push_back(std::move(ev));
  }
  std::sort(events.begin(), events.end(), [](const EventRecord& x, const EventRecord& y) {
    if (x.trigger.start != y.trigger.start) return x.trigger.start < y.trigger.start;
    if (x.trigger.end != y.trigger.end) return x.trigger.end < y.trigger.end;
    if (x.event_type != y.event_type) return x.event_type < y.event_type;
    return x.arguments < y.arguments;
  });
  return events;
}

}  // namespace

std::vector<EventRecord> oracle_decode(const gridee::LabelGrid& grid, const Schema& schema,
                                       RoleStrategy strategy) {
  GridView g;
  g.n = grid.n;
  g.channels = grid.channels;
  g.tagged = [&grid](int c, int i, int j) { return grid.tag(c, i, j); };
  g.score = [&grid](int c, int i, int j) { return grid.tag(c, i, j) ? 1.0 : 0.0; };
  return run(g, grid.event_type, schema, strategy);
}

std::vector<EventRecord> oracle_decode(const gridee::ScoreGrid& grid, const Schema& schema,
                                       RoleStrategy strategy) {
  GridView g;
  g.n = grid.n;
  g.channels = grid.channels;
  g.tagged = [&grid](int c, int i, int j) { return grid.score(c, i, j) > grid.delta; };
  g.score = [&grid](int c, int i, int j) { return grid.score(c, i, j); };
  return run(g, grid.event_type, schema, strategy);
}

}  // namespace testoracle
