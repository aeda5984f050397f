#include "gridee/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gridee/infer.hpp"
#include "gridee/loss.hpp"
#include "gridee/sampler.hpp"

namespace gridee {

void check_train_config(const TrainConfig& cfg) {
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be positive");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch_size must be positive");
  if (cfg.k_samples < 1) throw std::invalid_argument("train: k_samples must be positive");
  if (cfg.lr_encoder < 0 || cfg.lr_other < 0)
    throw std::invalid_argument("train: negative learning rate");
  if (cfg.weight_decay < 0) throw std::invalid_argument("train: negative weight decay");
}

namespace {

void check_same_schema(const Schema& a, const Schema& b, const char* what) {
  if (a.event_types != b.event_types || a.role_types != b.role_types)
    throw std::invalid_argument(std::string(what) + " schema does not match the model");
}

std::vector<std::vector<int>> gold_type_sets(const Corpus& corpus) {
  std::vector<std::vector<int>> out;
  out.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) {
    std::set<int> types;
    for (const auto& ev : s.events) types.insert(ev.event_type);
    out.emplace_back(types.begin(), types.end());
  }
  return out;
}

nlohmann::json epoch_json(const EpochLog& el) {
  nlohmann::json j{{"epoch", el.epoch}, {"mean_loss", el.mean_loss}};
  if (el.dev) {
    j["dev"] = nlohmann::json{{"ti_f1", el.dev->ti.f1()},
                              {"tc_f1", el.dev->tc.f1()},
                              {"ai_f1", el.dev->ai.f1()},
                              {"ac_f1", el.dev->ac.f1()}};
  }
  return j;
}

}  // namespace

TrainResult train(Model& model, const Corpus& train_data, const Corpus* dev_data,
                  const TrainConfig& cfg, std::ostream* log) {
  check_train_config(cfg);
  check_same_schema(train_data.schema, model.schema, "train corpus");
  if (dev_data) check_same_schema(dev_data->schema, model.schema, "dev corpus");
  if (train_data.sentences.empty()) throw std::invalid_argument("train: empty corpus");

  std::mt19937_64 rng(cfg.seed);
  AdamW opt(model.params, OptimConfig{cfg.lr_encoder, cfg.lr_other, cfg.weight_decay, 0.9,
                                      0.999, 1e-8});
  const auto gold_types = gold_type_sets(train_data);
  const int m = model.num_event_types();

  std::vector<size_t> order(train_data.sentences.size());
  std::iota(order.begin(), order.end(), size_t{0});

  TrainResult result;
  std::vector<Tensor> best_snapshot;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    int64_t step = 0;

    for (size_t base = 0; base < order.size(); base += static_cast<size_t>(cfg.batch_size)) {
      const size_t count =
          std::min(static_cast<size_t>(cfg.batch_size), order.size() - base);
      ++step;
      model.params.zero_grads();
      for (size_t b = 0; b < count; ++b) {
        const size_t idx = order[base + b];
        const auto types =
            sample_event_types(gold_types[idx], m, cfg.k_samples, epoch - 1, rng);
        Graph g(true);
        Var loss = total_loss(g, model, train_data.sentences[idx], types);
        Var norm = g.scale(loss, 1.0 / static_cast<double>(types.size()));
        const double lv = g.scalar(norm);
        if (!std::isfinite(lv))
          throw std::runtime_error("training diverged at epoch " + std::to_string(epoch) +
                                   " step " + std::to_string(step));
        loss_sum += lv;
        g.backward(norm, 1.0 / static_cast<double>(count));
      }
      try {
        opt.step();
      } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string(e.what()) + " at epoch " +
                                 std::to_string(epoch) + " step " + std::to_string(step));
      }
    }

    EpochLog el;
    el.epoch = epoch;
    el.mean_loss = loss_sum / static_cast<double>(order.size());
    if (dev_data) {
      const auto preds = predict_batch(model, dev_data->sentences, cfg.batch_size);
      el.dev = evaluate(preds, *dev_data);
      const double tc = el.dev->tc.f1();
      if (result.best_epoch < 0 || tc > result.best_dev_tc_f1) {
        result.best_epoch = epoch;
        result.best_dev_tc_f1 = tc;
        best_snapshot = model.snapshot();
      }
    } else {
      result.best_epoch = epoch;
    }
    if (log) *log << epoch_json(el).dump() << "\n";
    result.history.push_back(std::move(el));
  }

  if (dev_data && !best_snapshot.empty()) model.restore(best_snapshot);
  return result;
}

std::vector<SweepRow> k_sweep(const ModelConfig& model_cfg, const Corpus& train_data,
                              const Corpus& dev_data, const TrainConfig& base,
                              const std::vector<int>& ks, std::ostream* log) {
  std::vector<SweepRow> rows;
  for (int k : ks) {
    Model model(model_cfg, train_data.schema, base.seed);
    TrainConfig cfg = base;
    cfg.k_samples = k;
    if (log) *log << "# k=" << k << "\n";
    const TrainResult r = train(model, train_data, &dev_data, cfg, log);
    rows.push_back(SweepRow{k, r.best_dev_tc_f1});
  }
  return rows;
}

}  // namespace gridee
