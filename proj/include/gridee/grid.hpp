#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridee/schema.hpp"

namespace gridee {

// How role cells connect trigger words to argument words.
//   HeadHead: trigger head -> argument head
//   WordHead: every trigger word -> argument head
//   HeadWord: trigger head -> every argument word
//   WordWord: every trigger word -> every argument word
enum class RoleStrategy { kHeadHead, kWordHead, kHeadWord, kWordWord };

RoleStrategy parse_role_strategy(const std::string& name);  // "th-ah" etc.
std::string to_string(RoleStrategy s);
const std::vector<RoleStrategy>& all_role_strategies();

// Boolean word-pair grid for one event type. Channel layout follows
// Schema::num_channels(); span channels only use the upper triangle (i <= j),
// role channels are directed so every cell is meaningful.
struct LabelGrid {
  int event_type = 0;
  int n = 0;
  int channels = 0;
  std::vector<uint8_t> tags;

  LabelGrid() = default;
  LabelGrid(int event_type, int n, int channels)
      : event_type(event_type), n(n), channels(channels),
        tags(static_cast<size_t>(channels) * n * n, 0) {}

  bool tag(int c, int i, int j) const { return tags[index(c, i, j)] != 0; }
  void set(int c, int i, int j, bool v = true) { tags[index(c, i, j)] = v ? 1 : 0; }
  size_t index(int c, int i, int j) const {
    return (static_cast<size_t>(c) * n + i) * n + j;
  }

  bool operator==(const LabelGrid& o) const = default;
};

// Real-valued counterpart produced by the scorer; a cell counts as tagged
// when its score exceeds delta.
struct ScoreGrid {
  int event_type = 0;
  int n = 0;
  int channels = 0;
  double delta = 0.0;
  std::vector<double> scores;

  ScoreGrid() = default;
  ScoreGrid(int event_type, int n, int channels, double delta = 0.0)
      : event_type(event_type), n(n), channels(channels), delta(delta),
        scores(static_cast<size_t>(channels) * n * n, 0.0) {}

  double score(int c, int i, int j) const { return scores[index(c, i, j)]; }
  double& score(int c, int i, int j) { return scores[index(c, i, j)]; }
  bool tagged(int c, int i, int j) const { return score(c, i, j) > delta; }
  size_t index(int c, int i, int j) const {
    return (static_cast<size_t>(c) * n + i) * n + j;
  }
};

// JSON round trip for score grids (debugging surface for the decode tool).
std::string score_grid_to_json(const ScoreGrid& grid, const Schema& schema);
ScoreGrid score_grid_from_json(const std::string& text, Schema* schema_out);

}  // namespace gridee
