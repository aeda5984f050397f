#pragma once

#include <random>
#include <vector>

namespace gridee {

// Picks the event types trained on for one sentence visit: one gold type
// (rotating over the sentence's gold set across visits) plus negatives drawn
// uniformly without replacement from the types absent from the sentence.
// Returns min(k, num_event_types) distinct types. When too few absent types
// exist, the remaining gold types fill the quota; a sentence with no events
// yields negatives only.
std::vector<int> sample_event_types(const std::vector<int>& gold_types, int num_event_types,
                                    int k, int rotation, std::mt19937_64& rng);

}  // namespace gridee
