#include "gridee/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridee {

PairSets pair_sets(const LabelGrid& gold, int channel) {
  if (channel < 0 || channel >= gold.channels)
    throw std::invalid_argument("pair_sets: channel out of range");
  const bool upper_only = channel < kFixedChannels;
  PairSets sets;
  const int n = gold.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (upper_only && j < i) continue;
      if (gold.tag(channel, i, j))
        sets.positive.push_back(i * n + j);
      else
        sets.negative.push_back(i * n + j);
    }
  }
  return sets;
}

namespace {

double logsumexp_with_floor(double floor, const std::vector<double>& xs) {
  double m = floor;
  for (double x : xs) m = std::max(m, x);
  double s = std::exp(floor - m);
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

double circle_loss(const std::vector<double>& positive, const std::vector<double>& negative,
                   double delta) {
  std::vector<double> neg_pos(positive.size());
  std::transform(positive.begin(), positive.end(), neg_pos.begin(),
                 [](double s) { return -s; });
  return logsumexp_with_floor(delta, neg_pos) + logsumexp_with_floor(delta, negative);
}

Var circle_loss(Graph& g, Var grid, const PairSets& sets, double delta) {
  Var pos = g.gather_cells(grid, sets.positive);
  Var neg = g.gather_cells(grid, sets.negative);
  Var l_pos = g.logsumexp_floor(g.scale(pos, -1.0), delta);
  Var l_neg = g.logsumexp_floor(neg, delta);
  return g.add(l_pos, l_neg);
}

Var total_loss(Graph& g, Model& model, const Sentence& sentence,
               const std::vector<int>& event_types) {
  if (event_types.empty()) throw std::invalid_argument("total_loss: no event types sampled");
  const int n = static_cast<int>(sentence.tokens.size());
  Var h = model.encode(g, sentence.tokens);
  std::vector<Var> terms;
  for (int t : event_types) {
    std::vector<EventRecord> gold_events;
    for (const auto& ev : sentence.events)
      if (ev.event_type == t) gold_events.push_back(ev);
    const LabelGrid gold =
        encode(gold_events, t, n, model.schema, model.config.strategy);
    std::vector<Var> grids = model.forward_type(g, h, t);
    for (int c = 0; c < model.num_channels(); ++c)
      terms.push_back(circle_loss(g, grids[static_cast<size_t>(c)], pair_sets(gold, c),
                                  model.config.delta));
  }
  return g.add_many(terms);
}

}  // namespace gridee
