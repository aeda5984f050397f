#include "gridee/sampler.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace gridee {

std::vector<int> sample_event_types(const std::vector<int>& gold_types, int num_event_types,
                                    int k, int rotation, std::mt19937_64& rng) {
  if (num_event_types < 1) throw std::invalid_argument("sampler: no event types");
  if (k < 1) throw std::invalid_argument("sampler: k must be at least 1");
  if (rotation < 0) throw std::invalid_argument("sampler: negative rotation");

  std::set<int> gold;
  for (int t : gold_types) {
    if (t < 0 || t >= num_event_types)
      throw std::invalid_argument("sampler: gold type " + std::to_string(t) + " out of range");
    gold.insert(t);
  }

  std::vector<int> absent;
  for (int t = 0; t < num_event_types; ++t)
    if (!gold.count(t)) absent.push_back(t);

  const int target = std::min(k, num_event_types);
  std::vector<int> picked;
  picked.reserve(static_cast<size_t>(target));

  if (!gold.empty()) {
    std::vector<int> gold_sorted(gold.begin(), gold.end());
    picked.push_back(gold_sorted[static_cast<size_t>(rotation) % gold_sorted.size()]);
  }

  // Partial Fisher-Yates: draw negatives uniformly without replacement.
  const int want_neg = std::min(target - static_cast<int>(picked.size()),
                                static_cast<int>(absent.size()));
  for (int i = 0; i < want_neg; ++i) {
    std::uniform_int_distribution<size_t> pick(static_cast<size_t>(i), absent.size() - 1);
    std::swap(absent[static_cast<size_t>(i)], absent[pick(rng)]);
    picked.push_back(absent[static_cast<size_t>(i)]);
  }

  // Absent types ran out; top up with the sentence's other gold types.
  if (static_cast<int>(picked.size()) < target) {
    for (int t : gold) {
      if (static_cast<int>(picked.size()) >= target) break;
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    }
  }
  return picked;
}

}  // namespace gridee
