#include "gridee/infer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gridee/fusion.hpp"
#include "gridee/predictor.hpp"

namespace gridee {

namespace {

ScoreGrid grid_from_channels(const Model& model, int event_type,
                             const std::vector<Tensor>& channels) {
  const int n = channels.front().rows();
  ScoreGrid grid(event_type, n, model.num_channels(), model.config.delta);
  for (int c = 0; c < model.num_channels(); ++c) {
    const Tensor& t = channels[static_cast<size_t>(c)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) grid.score(c, i, j) = t.at(i, j);
  }
  return grid;
}

std::vector<EventRecord> decode_union(const Model& model,
                                      const std::vector<ScoreGrid>& grids) {
  std::vector<EventRecord> events;
  for (const auto& grid : grids) {
    std::vector<EventRecord> part = decode(grid, model.schema, model.config.strategy);
    events.insert(events.end(), part.begin(), part.end());
  }
  canonicalize(events);
  return events;
}

// One window of up to batch_size sentences, packed so the encoder, fusion and
// the channel projections each run once over the stacked word rows.
void predict_window(const Model& model, const std::vector<Sentence>& sentences,
                    size_t base, size_t count,
                    std::vector<std::vector<EventRecord>>& out) {
  std::vector<std::vector<int>> pieces;
  std::vector<int> sizes, positions, offsets;
  for (size_t s = 0; s < count; ++s) {
    const auto& tokens = sentences[base + s].tokens;
    offsets.push_back(static_cast<int>(positions.size()));
    sizes.push_back(static_cast<int>(tokens.size()));
    auto sp = model.pieces_for(tokens);
    pieces.insert(pieces.end(), sp.begin(), sp.end());
    for (size_t i = 0; i < tokens.size(); ++i) positions.push_back(static_cast<int>(i));
  }

  Tensor h_all = encode_words(model.enc, model.config.encoder(), pieces, sizes);
  Tensor cos_tab, sin_tab;
  model.pred.rotary.tables(positions, &cos_tab, &sin_tab);
  std::vector<Tensor> fused = fuse_all(model.fus, h_all);

  std::vector<std::vector<ScoreGrid>> grids(count);
  for (int t = 0; t < model.num_event_types(); ++t) {
    std::vector<std::vector<Tensor>> channels(count);
    for (int c = 0; c < model.num_channels(); ++c) {
      Tensor a = rotate_pairs(
          matmul_nt(fused[static_cast<size_t>(t)], model.pred.w1[static_cast<size_t>(c)]->value),
          cos_tab, sin_tab);
      Tensor b = rotate_pairs(
          matmul_nt(fused[static_cast<size_t>(t)], model.pred.w2[static_cast<size_t>(c)]->value),
          cos_tab, sin_tab);
      for (size_t s = 0; s < count; ++s) {
        Tensor as = slice_rows(a, offsets[s], sizes[s]);
        Tensor bs = slice_rows(b, offsets[s], sizes[s]);
        channels[s].push_back(matmul_nt(as, bs));
      }
    }
    for (size_t s = 0; s < count; ++s)
      grids[s].push_back(grid_from_channels(model, t, channels[s]));
  }
  for (size_t s = 0; s < count; ++s) out[base + s] = decode_union(model, grids[s]);
}

}  // namespace

std::vector<ScoreGrid> score_sentence(const Model& model, const Sentence& sentence) {
  Tensor h = model.encode(sentence.tokens);
  std::vector<int> positions(static_cast<size_t>(h.rows()));
  std::iota(positions.begin(), positions.end(), 0);
  Tensor cos_tab, sin_tab;
  model.pred.rotary.tables(positions, &cos_tab, &sin_tab);
  std::vector<Tensor> fused = fuse_all(model.fus, h);

  std::vector<ScoreGrid> grids;
  grids.reserve(fused.size());
  for (int t = 0; t < model.num_event_types(); ++t)
    grids.push_back(grid_from_channels(
        model, t, score_grids(model.pred, fused[static_cast<size_t>(t)], cos_tab, sin_tab)));
  return grids;
}

std::vector<EventRecord> predict(const Model& model, const Sentence& sentence) {
  return decode_union(model, score_sentence(model, sentence));
}

std::vector<std::vector<EventRecord>> predict_batch(const Model& model,
                                                    const std::vector<Sentence>& sentences,
                                                    int batch_size) {
  if (batch_size < 1) throw std::invalid_argument("predict_batch: batch_size must be positive");
  std::vector<std::vector<EventRecord>> out(sentences.size());
  const size_t stride = static_cast<size_t>(batch_size);
  const size_t windows = (sentences.size() + stride - 1) / stride;

  auto run_window = [&](size_t w) {
    const size_t base = w * stride;
    predict_window(model, sentences, base, std::min(stride, sentences.size() - base), out);
  };

  // Sentences inside a window share one packed forward pass; whole windows fan
  // out across reader threads. Oversubscribing a CPU-bound pool only adds
  // scheduler noise, so the width is capped at the hardware's concurrency.
  const size_t cores = std::max(1u, std::thread::hardware_concurrency());
  const size_t workers = std::min({stride, windows, cores});

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto drain = [&] {
    try {
      for (size_t w = next.fetch_add(1); w < windows; w = next.fetch_add(1)) {
        if (failed.load()) return;
        run_window(w);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (size_t i = 0; i + 1 < workers; ++i) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

BenchResult bench(const Model& model, const Corpus& corpus, int batch_size) {
  if (corpus.sentences.empty()) throw std::invalid_argument("bench: empty corpus");
  predict_batch(model, corpus.sentences, batch_size);  // warmup, untimed

  std::vector<double> times;
  for (int pass = 0; pass < 3; ++pass) {
    const auto t0 = std::chrono::steady_clock::now();
    predict_batch(model, corpus.sentences, batch_size);
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());

  BenchResult r;
  r.batch_size = batch_size;
  r.sentences = static_cast<int>(corpus.sentences.size());
  r.seconds = times[1];
  r.sentences_per_sec = r.sentences / r.seconds;
  return r;
}

}  // namespace gridee
