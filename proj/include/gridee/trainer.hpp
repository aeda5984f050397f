#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gridee/corpus.hpp"
#include "gridee/metrics.hpp"
#include "gridee/model.hpp"
#include "gridee/optimizer.hpp"

namespace gridee {

struct TrainConfig {
  int epochs = 50;
  int batch_size = 8;
  int k_samples = 4;  // event types scored per sentence visit
  double lr_encoder = 5e-3;
  double lr_other = 5e-3;
  double weight_decay = 0.0;
  uint64_t seed = 42;
};

void check_train_config(const TrainConfig& cfg);

struct EpochLog {
  int epoch = 0;  // 1-based
  double mean_loss = 0.0;
  std::optional<EvalReport> dev;
};

struct TrainResult {
  std::vector<EpochLog> history;
  int best_epoch = -1;          // epoch whose weights the model ends up with
  double best_dev_tc_f1 = 0.0;  // only meaningful with a dev corpus
};

// Mini-batch training with per-sentence type sampling. With a dev corpus the
// model is evaluated after every epoch and finishes holding the weights of
// the best dev trigger-classification F1. A JSONL line per epoch goes to log
// when given. Non-finite losses or gradients abort with the failing epoch
// and step in the message.
TrainResult train(Model& model, const Corpus& train_data, const Corpus* dev_data,
                  const TrainConfig& cfg, std::ostream* log = nullptr);

struct SweepRow {
  int k = 0;
  double dev_tc_f1 = 0.0;
};

// Trains one fresh model per k value (same init seed) and reports dev TC F1.
std::vector<SweepRow> k_sweep(const ModelConfig& model_cfg, const Corpus& train_data,
                              const Corpus& dev_data, const TrainConfig& base,
                              const std::vector<int>& ks, std::ostream* log = nullptr);

}  // namespace gridee
