#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridee/corpus.hpp"

namespace gridee {

struct PRF {
  int64_t gold = 0;
  int64_t predicted = 0;
  int64_t matched = 0;

  double precision() const { return predicted == 0 ? 0.0 : double(matched) / predicted; }
  double recall() const { return gold == 0 ? 0.0 : double(matched) / gold; }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
};

struct DistanceBucket {
  std::string label;
  int64_t gold = 0;
  int64_t matched = 0;
  double recall() const { return gold == 0 ? 0.0 : double(matched) / gold; }
};

struct GroupReport {
  std::string label;
  int64_t sentences = 0;
  PRF ti, tc, ai, ac;
};

// Micro-averaged scores over deduplicated tuples, sentence-local:
//   ti: (trigger span)             tc: (type, trigger span)
//   ai: (type, argument span)      ac: (type, argument span, role)
// A predicted tuple counts once however many events produced it, so an
// argument is correct when any gold event of that type carries it.
struct EvalReport {
  PRF ti, tc, ai, ac;
  std::vector<DistanceBucket> ac_by_distance;   // gold argument recall by
                                                // trigger-argument distance
  std::vector<GroupReport> by_event_count;      // sentences with 1, 2, >2 events
};

EvalReport evaluate(const std::vector<std::vector<EventRecord>>& predictions,
                    const Corpus& gold);

std::string report_to_json(const EvalReport& report);

}  // namespace gridee
