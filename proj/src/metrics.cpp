#include "gridee/metrics.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gridee {

namespace {

using Key = std::array<int, 6>;  // sent, type, start, end, role, unused -1 slots
using KeySet = std::set<Key>;

Key ti_key(int sent, const EventRecord& ev) {
  return {sent, -1, ev.trigger.start, ev.trigger.end, -1, 0};
}
Key tc_key(int sent, const EventRecord& ev) {
  return {sent, ev.event_type, ev.trigger.start, ev.trigger.end, -1, 0};
}
Key ai_key(int sent, int type, const Argument& a) {
  return {sent, type, a.span.start, a.span.end, -1, 0};
}
Key ac_key(int sent, int type, const Argument& a) {
  return {sent, type, a.span.start, a.span.end, a.role, 0};
}

struct TupleSets {
  KeySet ti, tc, ai, ac;
};

TupleSets collect(int sent, const std::vector<EventRecord>& events) {
  TupleSets s;
  for (const auto& ev : events) {
    s.ti.insert(ti_key(sent, ev));
    s.tc.insert(tc_key(sent, ev));
    for (const auto& a : ev.arguments) {
      s.ai.insert(ai_key(sent, ev.event_type, a));
      s.ac.insert(ac_key(sent, ev.event_type, a));
    }
  }
  return s;
}

void merge(KeySet* into, const KeySet& from) { into->insert(from.begin(), from.end()); }

PRF score(const KeySet& pred, const KeySet& gold) {
  PRF out;
  out.gold = static_cast<int64_t>(gold.size());
  out.predicted = static_cast<int64_t>(pred.size());
  for (const auto& k : pred) out.matched += gold.count(k);
  return out;
}

PRF score_filtered(const KeySet& pred, const KeySet& gold, const std::vector<int>& group_of,
                   int group) {
  KeySet p, g;
  for (const auto& k : pred)
    if (group_of[static_cast<size_t>(k[0])] == group) p.insert(k);
  for (const auto& k : gold)
    if (group_of[static_cast<size_t>(k[0])] == group) g.insert(k);
  return score(p, g);
}

constexpr int kNumBuckets = 6;

int bucket_of(int distance) {
  if (distance > 50) return kNumBuckets - 1;
  return std::max(0, (distance - 1) / 10);
}

const char* kBucketLabels[kNumBuckets] = {"1-10", "11-20", "21-30", "31-40", "41-50", ">50"};

nlohmann::json prf_json(const PRF& x) {
  return nlohmann::json{{"gold", x.gold},          {"predicted", x.predicted},
                        {"matched", x.matched},    {"precision", x.precision()},
                        {"recall", x.recall()},    {"f1", x.f1()}};
}

}  // namespace

EvalReport evaluate(const std::vector<std::vector<EventRecord>>& predictions,
                    const Corpus& gold) {
  if (predictions.size() != gold.sentences.size())
    throw std::invalid_argument("evaluate: prediction count does not match corpus");

  KeySet pred_ti, pred_tc, pred_ai, pred_ac;
  KeySet gold_ti, gold_tc, gold_ai, gold_ac;
  std::vector<int> group_of(gold.sentences.size(), -1);

  for (size_t s = 0; s < gold.sentences.size(); ++s) {
    const TupleSets p = collect(static_cast<int>(s), predictions[s]);
    const TupleSets g = collect(static_cast<int>(s), gold.sentences[s].events);
    merge(&pred_ti, p.ti);
    merge(&pred_tc, p.tc);
    merge(&pred_ai, p.ai);
    merge(&pred_ac, p.ac);
    merge(&gold_ti, g.ti);
    merge(&gold_tc, g.tc);
    merge(&gold_ai, g.ai);
    merge(&gold_ac, g.ac);
    const size_t n_events = gold.sentences[s].events.size();
    if (n_events == 1)
      group_of[s] = 0;
    else if (n_events == 2)
      group_of[s] = 1;
    else if (n_events > 2)
      group_of[s] = 2;
  }

  EvalReport report;
  report.ti = score(pred_ti, gold_ti);
  report.tc = score(pred_tc, gold_tc);
  report.ai = score(pred_ai, gold_ai);
  report.ac = score(pred_ac, gold_ac);

  for (int b = 0; b < kNumBuckets; ++b)
    report.ac_by_distance.push_back(DistanceBucket{kBucketLabels[b], 0, 0});
  for (const auto& key : gold_ac) {
    const Sentence& sent = gold.sentences[static_cast<size_t>(key[0])];
    // Several gold events can carry the same argument tuple; bucket it by the
    // closest of their triggers.
    int best = -1;
    for (const auto& ev : sent.events) {
      if (ev.event_type != key[1]) continue;
      for (const auto& a : ev.arguments) {
        if (a.span.start != key[2] || a.span.end != key[3] || a.role != key[4]) continue;
        const int d = std::abs(ev.trigger.start - a.span.start);
        if (best < 0 || d < best) best = d;
      }
    }
    DistanceBucket& bucket = report.ac_by_distance[static_cast<size_t>(bucket_of(best))];
    bucket.gold += 1;
    bucket.matched += pred_ac.count(key);
  }

  const char* group_labels[3] = {"1", "2", ">2"};
  for (int grp = 0; grp < 3; ++grp) {
    GroupReport gr;
    gr.label = group_labels[grp];
    for (int g : group_of) gr.sentences += g == grp;
    gr.ti = score_filtered(pred_ti, gold_ti, group_of, grp);
    gr.tc = score_filtered(pred_tc, gold_tc, group_of, grp);
    gr.ai = score_filtered(pred_ai, gold_ai, group_of, grp);
    gr.ac = score_filtered(pred_ac, gold_ac, group_of, grp);
    report.by_event_count.push_back(gr);
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["ti"] = prf_json(report.ti);
  doc["tc"] = prf_json(report.tc);
  doc["ai"] = prf_json(report.ai);
  doc["ac"] = prf_json(report.ac);
  doc["ac_by_distance"] = nlohmann::json::array();
  for (const auto& b : report.ac_by_distance)
    doc["ac_by_distance"].push_back(nlohmann::json{
        {"bucket", b.label}, {"gold", b.gold}, {"matched", b.matched}, {"recall", b.recall()}});
  doc["by_event_count"] = nlohmann::json::array();
  for (const auto& g : report.by_event_count)
    doc["by_event_count"].push_back(nlohmann::json{{"group", g.label},
                                                   {"sentences", g.sentences},
                                                   {"ti", prf_json(g.ti)},
                                                   {"tc", prf_json(g.tc)},
                                                   {"ai", prf_json(g.ai)},
                                                   {"ac", prf_json(g.ac)}});
  return doc.dump(2);
}

}  // namespace gridee
