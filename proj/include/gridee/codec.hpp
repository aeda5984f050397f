#pragma once

#include <vector>

#include "gridee/grid.hpp"
#include "gridee/schema.hpp"

namespace gridee {

// Tags the grid for all events of one type. Every event in `events` must have
// event_type == event_type; spans sharing a channel must not partially
// overlap (throws std::invalid_argument otherwise).
LabelGrid encode(const std::vector<EventRecord>& events, int event_type, int n,
                 const Schema& schema, RoleStrategy strategy);

// Span clash resolution: keeps the higher-scoring span of any partially
// overlapping pair, greedily in descending score order; ties fall to the
// smaller start index (then smaller end). Nested, identical and disjoint
// spans all survive. Returns kept spans sorted by (start, end).
struct ScoredSpan {
  Span span;
  double score = 0.0;
};
std::vector<ScoredSpan> resolve_span_clashes(std::vector<ScoredSpan> spans);

// Strategy link rule for one (trigger, argument, role channel) triple.
// WordWord requires a strict majority of the |trigger| x |argument| cells;
// the other strategies require every prescribed cell.
bool link_roles(const LabelGrid& grid, int role_channel, const Span& trigger,
                const Span& argument, RoleStrategy strategy);
bool link_roles(const ScoreGrid& grid, int role_channel, const Span& trigger,
                const Span& argument, RoleStrategy strategy);

// Grid -> events: collect spans, resolve clashes, link roles, stamp the type.
// Triggers with no linked arguments still produce events. Output is canonical
// (sorted by trigger span, arguments by role then span).
std::vector<EventRecord> decode(const LabelGrid& grid, const Schema& schema,
                                RoleStrategy strategy);
std::vector<EventRecord> decode(const ScoreGrid& grid, const Schema& schema,
                                RoleStrategy strategy);

}  // namespace gridee
