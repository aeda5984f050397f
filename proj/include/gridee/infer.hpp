#pragma once

#include <vector>

#include "gridee/codec.hpp"
#include "gridee/corpus.hpp"
#include "gridee/model.hpp"

namespace gridee {

// Score grids for every event type of one sentence, no-grad path.
std::vector<ScoreGrid> score_sentence(const Model& model, const Sentence& sentence);

// Decode all event types and return the union of their events in canonical
// order. Batched prediction packs the word states of several sentences into
// one matrix per projection and fans windows out across reader threads;
// results are bitwise identical to batch size 1.
std::vector<EventRecord> predict(const Model& model, const Sentence& sentence);
std::vector<std::vector<EventRecord>> predict_batch(const Model& model,
                                                    const std::vector<Sentence>& sentences,
                                                    int batch_size);

struct BenchResult {
  int batch_size = 0;
  int sentences = 0;
  double seconds = 0.0;  // median over the timed passes
  double sentences_per_sec = 0.0;
};

// Median wall time of three timed passes over the corpus, after one untimed
// warmup pass.
BenchResult bench(const Model& model, const Corpus& corpus, int batch_size);

}  // namespace gridee
