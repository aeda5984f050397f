#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gridee/codec.hpp"
#include "gridee/grid.hpp"
#include "support/oracle.hpp"
#include "support/testutil.hpp"

using namespace gridee;
using testutil::event;
using testutil::tiny_schema;

namespace {

// Random event sets that the grid can represent without information loss:
// pairwise disjoint triggers, argument spans disjoint or identical.
std::vector<EventRecord> random_codable_events(std::mt19937_64& rng, int n, int type,
                                               int roles) {
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<int> pos(0, n - 1);
  std::uniform_int_distribution<int> len(1, 3);
  std::uniform_int_distribution<int> role(0, roles - 1);
  std::uniform_int_distribution<int> argc(0, 2);

  auto draw_span = [&]() {
    const int s = pos(rng);
    const int e = std::min(n - 1, s + len(rng) - 1);
    return Span{s, e};
  };

  std::vector<Span> triggers;
  for (int tries = 0; tries < 40 && static_cast<int>(triggers.size()) < count(rng) + 1;
       ++tries) {
    const Span cand = draw_span();
    bool ok = true;
    for (const Span& t : triggers) ok = ok && cand.disjoint(t);
    if (ok) triggers.push_back(cand);
  }

  std::vector<Span> arg_pool;
  for (int tries = 0; tries < 40 && arg_pool.size() < 4; ++tries) {
    const Span cand = draw_span();
    bool ok = true;
    for (const Span& a : arg_pool) ok = ok && cand.disjoint(a);
    if (ok) arg_pool.push_back(cand);
  }

  std::vector<EventRecord> events;
  for (const Span& t : triggers) {
    EventRecord ev;
    ev.event_type = type;
    ev.trigger = t;
    const int k = arg_pool.empty() ? 0 : argc(rng);
    std::set<std::pair<int, int>> used;
    for (int a = 0; a < k; ++a) {
      const Span span = arg_pool[rng() % arg_pool.size()];
      const int r = role(rng);
      if (!used.insert({r, span.start}).second) continue;
      ev.arguments.push_back(Argument{r, span});
    }
    events.push_back(std::move(ev));
  }
  canonicalize(events);
  return events;
}

}  // namespace

TEST_CASE("role strategy names") {
  CHECK(parse_role_strategy("th-ah") == RoleStrategy::kHeadHead);
  CHECK(parse_role_strategy("tw-ah") == RoleStrategy::kWordHead);
  CHECK(parse_role_strategy("th-aw") == RoleStrategy::kHeadWord);
  CHECK(parse_role_strategy("tw-aw") == RoleStrategy::kWordWord);
  CHECK_THROWS_AS(parse_role_strategy("nope"), std::invalid_argument);
  for (RoleStrategy s : all_role_strategies()) CHECK(parse_role_strategy(to_string(s)) == s);
}

TEST_CASE("worked example: single event on five words") {
  // Event of type 0 with trigger (2,2) and one subject argument (0,1).
  const Schema schema = tiny_schema(1, 1);
  const std::vector<EventRecord> events = {event(0, {2, 2}, {{0, {0, 1}}})};
  const LabelGrid grid = encode(events, 0, 5, schema, RoleStrategy::kWordWord);

  std::set<std::tuple<int, int, int>> tagged;
  for (int c = 0; c < grid.channels; ++c)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (grid.tag(c, i, j)) tagged.insert({c, i, j});

  const std::set<std::tuple<int, int, int>> expected = {
      {kChannelTriggerSpan, 2, 2},  // S-T: trigger span cell
      {kChannelArgumentSpan, 0, 1},  // S-A: argument span cell
      {2, 2, 0},  // R-subject: trigger word 2 -> argument word 0
      {2, 2, 1},  //            trigger word 2 -> argument word 1
  };
  CHECK(tagged == expected);

  const auto decoded = decode(grid, schema, RoleStrategy::kWordWord);
  CHECK(decoded == events);
}

TEST_CASE("strategies prescribe different role cells") {
  const Schema schema = tiny_schema(1, 1);
  // Two-word trigger (1,2), two-word argument (4,5) in a 6-word sentence.
  const std::vector<EventRecord> events = {event(0, {1, 2}, {{0, {4, 5}}})};

  auto role_cells = [&](RoleStrategy s) {
    const LabelGrid g = encode(events, 0, 6, schema, s);
    std::set<std::pair<int, int>> cells;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (g.tag(2, i, j)) cells.insert({i, j});
    return cells;
  };

  CHECK(role_cells(RoleStrategy::kHeadHead) == std::set<std::pair<int, int>>{{1, 4}});
  CHECK(role_cells(RoleStrategy::kWordHead) ==
        std::set<std::pair<int, int>>{{1, 4}, {2, 4}});
  CHECK(role_cells(RoleStrategy::kHeadWord) ==
        std::set<std::pair<int, int>>{{1, 4}, {1, 5}});
  CHECK(role_cells(RoleStrategy::kWordWord) ==
        std::set<std::pair<int, int>>{{1, 4}, {1, 5}, {2, 4}, {2, 5}});

  for (RoleStrategy s : all_role_strategies())
    CHECK(decode(encode(events, 0, 6, schema, s), schema, s) == events);
}

TEST_CASE("encode validates inputs") {
  const Schema schema = tiny_schema(2, 1);
  CHECK_THROWS_AS(encode({event(1, {0, 0})}, 0, 4, schema, RoleStrategy::kWordWord),
                  std::invalid_argument);  // wrong type
  CHECK_THROWS_AS(encode({event(0, {2, 4})}, 0, 4, schema, RoleStrategy::kWordWord),
                  std::invalid_argument);  // span out of range
  CHECK_THROWS_AS(
      encode({event(0, {0, 2}), event(0, {1, 3})}, 0, 6, schema, RoleStrategy::kWordWord),
      std::invalid_argument);  // partially overlapping triggers
}

TEST_CASE("word-word linking needs a strict majority") {
  const Schema schema = tiny_schema(1, 1);
  LabelGrid grid(0, 6, schema.num_channels());
  grid.set(kChannelTriggerSpan, 1, 2);
  grid.set(kChannelArgumentSpan, 4, 5);
  const Span trig{1, 2}, arg{4, 5};

  // 2 of 4 cells: not a strict majority.
  grid.set(2, 1, 4);
  grid.set(2, 2, 5);
  CHECK(!link_roles(grid, 2, trig, arg, RoleStrategy::kWordWord));
  // 3 of 4: linked.
  grid.set(2, 1, 5);
  CHECK(link_roles(grid, 2, trig, arg, RoleStrategy::kWordWord));
  // The all-cells strategies still miss one cell.
  CHECK(!link_roles(grid, 2, trig, arg, RoleStrategy::kWordHead));

  const auto events = decode(grid, schema, RoleStrategy::kWordWord);
  REQUIRE(events.size() == 1);
  CHECK(events[0].arguments == std::vector<Argument>{{0, {4, 5}}});
}

TEST_CASE("bare triggers become events without arguments") {
  const Schema schema = tiny_schema(1, 1);
  LabelGrid grid(0, 4, schema.num_channels());
  grid.set(kChannelTriggerSpan, 1, 1);
  grid.set(kChannelArgumentSpan, 2, 3);  // argument span with no role link
  const auto events = decode(grid, schema, RoleStrategy::kWordWord);
  REQUIRE(events.size() == 1);
  CHECK(events[0].trigger == Span{1, 1});
  CHECK(events[0].arguments.empty());
}

TEST_CASE("clash resolution") {
  SUBCASE("higher score wins a partial overlap") {
    auto kept = resolve_span_clashes({{{0, 2}, 0.5}, {{1, 3}, 0.9}});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].span == Span{1, 3});
  }
  SUBCASE("score tie prefers the smaller start") {
    auto kept = resolve_span_clashes({{{1, 3}, 0.7}, {{0, 2}, 0.7}});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].span == Span{0, 2});
  }
  SUBCASE("score and start tie prefers the smaller end") {
    auto kept = resolve_span_clashes({{{1, 3}, 0.7}, {{1, 2}, 0.7}});
    REQUIRE(kept.size() == 2);  // (1,2) nests inside (1,3): both stay
    auto kept2 = resolve_span_clashes({{{1, 4}, 0.7}, {{1, 2}, 0.7}, {{2, 5}, 0.7}});
    // (1,2) survives with (1,4); (2,5) clashes with (1,4).
    REQUIRE(kept2.size() == 2);
    CHECK(kept2[0].span == Span{1, 2});
    CHECK(kept2[1].span == Span{1, 4});
  }
  SUBCASE("nested, identical and disjoint spans coexist") {
    auto kept = resolve_span_clashes({{{0, 4}, 0.2}, {{1, 2}, 0.1}, {{6, 7}, 0.9}});
    CHECK(kept.size() == 3);
  }
  SUBCASE("greedy chain: dropping the middle spares the ends") {
    auto kept = resolve_span_clashes({{{0, 2}, 0.9}, {{2, 4}, 0.5}, {{4, 6}, 0.8}});
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].span == Span{0, 2});
    CHECK(kept[1].span == Span{4, 6});
  }
  SUBCASE("results sorted by span") {
    auto kept = resolve_span_clashes({{{5, 6}, 0.1}, {{0, 1}, 0.2}});
    CHECK(kept[0].span == Span{0, 1});
    CHECK(kept[1].span == Span{5, 6});
  }
}

TEST_CASE("score grids decode through thresholds and scores") {
  const Schema schema = tiny_schema(1, 1);
  ScoreGrid grid(0, 5, schema.num_channels(), 0.0);
  // Two partially overlapping trigger candidates; higher score survives.
  grid.score(kChannelTriggerSpan, 0, 2) = 0.4;
  grid.score(kChannelTriggerSpan, 1, 3) = 0.8;
  grid.score(kChannelArgumentSpan, 4, 4) = 0.6;
  grid.score(2, 1, 4) = 0.5;
  grid.score(2, 2, 4) = 0.5;
  grid.score(2, 3, 4) = 0.5;

  const auto events = decode(grid, schema, RoleStrategy::kWordWord);
  REQUIRE(events.size() == 1);
  CHECK(events[0].trigger == Span{1, 3});
  REQUIRE(events[0].arguments.size() == 1);
  CHECK(events[0].arguments[0].span == Span{4, 4});

  // Below or at the threshold means untagged.
  ScoreGrid cold(0, 3, schema.num_channels(), 0.5);
  cold.score(kChannelTriggerSpan, 0, 0) = 0.5;
  CHECK(decode(cold, schema, RoleStrategy::kWordWord).empty());
}

TEST_CASE("encode/decode round trip on random codable event sets") {
  const Schema schema = tiny_schema(3, 3);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> n_dist(3, 10);
  for (int iter = 0; iter < 500; ++iter) {
    const int n = n_dist(rng);
    const int type = static_cast<int>(rng() % 3);
    const auto events = random_codable_events(rng, n, type, schema.num_roles());
    for (RoleStrategy s : all_role_strategies()) {
      const LabelGrid grid = encode(events, type, n, schema, s);
      CHECK(decode(grid, schema, s) == events);
    }
  }
}

TEST_CASE("decode agrees with the brute-force oracle on random grids") {
  const Schema schema = tiny_schema(2, 2);
  std::mt19937_64 rng(515);
  std::uniform_int_distribution<int> n_dist(1, 6);
  std::uniform_real_distribution<double> dens(0.05, 0.5);

  for (int iter = 0; iter < 300; ++iter) {
    const int n = n_dist(rng);
    const LabelGrid grid = testutil::random_label_grid(rng, n, schema.num_channels(), dens(rng));
    for (RoleStrategy s : all_role_strategies())
      CHECK(decode(grid, schema, s) == testoracle::oracle_decode(grid, schema, s));
  }
  for (int iter = 0; iter < 300; ++iter) {
    const int n = n_dist(rng);
    const ScoreGrid grid = testutil::random_score_grid(rng, n, schema.num_channels(), 0.3);
    for (RoleStrategy s : all_role_strategies())
      CHECK(decode(grid, schema, s) == testoracle::oracle_decode(grid, schema, s));
  }
}

TEST_CASE("score grid JSON round trip") {
  const Schema schema = tiny_schema(2, 2);
  std::mt19937_64 rng(8);
  ScoreGrid grid = testutil::random_score_grid(rng, 4, schema.num_channels(), 0.25);
  grid.event_type = 1;

  Schema schema_back;
  const ScoreGrid back = score_grid_from_json(score_grid_to_json(grid, schema), &schema_back);
  CHECK(schema_back == schema);
  CHECK(back.event_type == 1);
  CHECK(back.n == 4);
  CHECK(back.delta == 0.25);
  CHECK(back.scores == grid.scores);

  CHECK_THROWS_AS(score_grid_from_json("{}", &schema_back), std::runtime_error);
}
