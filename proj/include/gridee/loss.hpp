#pragma once

#include <vector>

#include "gridee/codec.hpp"
#include "gridee/model.hpp"

namespace gridee {

// Flat n*n cell indices of one channel of a gold grid, split into tagged
// cells and untagged-but-valid cells. Span channels only score the upper
// triangle (i <= j); role channels score every cell.
struct PairSets {
  std::vector<int> positive;
  std::vector<int> negative;
};

PairSets pair_sets(const LabelGrid& gold, int channel);

// Threshold-anchored ranking loss over one channel:
//   log(e^delta + sum_pos e^{-s}) + log(e^delta + sum_neg e^{s})
// Tagged scores are pushed above delta, untagged below. Either set may be
// empty, in which case its term degenerates to delta.
double circle_loss(const std::vector<double>& positive, const std::vector<double>& negative,
                   double delta);
Var circle_loss(Graph& g, Var grid, const PairSets& sets, double delta);

// Sum over the sampled event types and all channels for one sentence. Types
// absent from the gold events contribute all-negative grids.
Var total_loss(Graph& g, Model& model, const Sentence& sentence,
               const std::vector<int>& event_types);

}  // namespace gridee
