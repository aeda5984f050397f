#pragma once

#include <random>
#include <string>
#include <vector>

#include "gridee/codec.hpp"
#include "gridee/schema.hpp"

namespace testutil {

inline gridee::Schema tiny_schema(int events = 2, int roles = 2) {
  gridee::Schema s;
  const char* enames[] = {"alpha", "beta", "gamma", "delta"};
  const char* rnames[] = {"subject", "object", "target"};
  for (int i = 0; i < events; ++i) s.event_types.push_back(enames[i]);
  for (int i = 0; i < roles; ++i) s.role_types.push_back(rnames[i]);
  return s;
}

inline gridee::EventRecord event(int type, gridee::Span trigger,
                                 std::vector<gridee::Argument> args = {}) {
  gridee::EventRecord ev;
  ev.event_type = type;
  ev.trigger = trigger;
  ev.arguments = std::move(args);
  return ev;
}

inline gridee::LabelGrid random_label_grid(std::mt19937_64& rng, int n, int channels,
                                           double density) {
  gridee::LabelGrid grid(0, n, channels);
  std::bernoulli_distribution flip(density);
  for (int c = 0; c < channels; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (flip(rng)) grid.set(c, i, j);
  return grid;
}

inline gridee::ScoreGrid random_score_grid(std::mt19937_64& rng, int n, int channels,
                                           double delta) {
  gridee::ScoreGrid grid(0, n, channels, delta);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < channels; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) grid.score(c, i, j) = u(rng);
  return grid;
}

}  // namespace testutil
