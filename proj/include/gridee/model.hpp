#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gridee/encoder.hpp"
#include "gridee/fusion.hpp"
#include "gridee/grid.hpp"
#include "gridee/predictor.hpp"
#include "gridee/schema.hpp"
#include "gridee/tokenizer.hpp"

namespace gridee {

struct ModelConfig {
  int d_h = 32;
  int d_p = 0;  // 0 means d_h
  int vocab_size = kDefaultPieceVocab;
  int pieces_per_word = 2;
  bool use_context_mixer = false;
  double rotary_base = 10000.0;
  double delta = 0.0;  // decision threshold on grid scores
  RoleStrategy strategy = RoleStrategy::kWordWord;

  int predictor_dim() const { return d_p > 0 ? d_p : d_h; }
  EncoderConfig encoder() const {
    return EncoderConfig{d_h, vocab_size, pieces_per_word, use_context_mixer};
  }
};

void check_model_config(const ModelConfig& cfg);

// Everything a forward pass needs: the registry owning all parameters plus
// typed views into it. Parameters are created in a fixed order so two models
// built with the same seed are identical.
struct Model {
  ModelConfig config;
  Schema schema;
  ToyTokenizer tokenizer;
  ParamRegistry params;
  EncoderParams enc;
  FusionParams fus;
  PredictorParams pred;

  Model(ModelConfig cfg, Schema sch, uint64_t init_seed);

  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  int num_event_types() const { return static_cast<int>(schema.event_types.size()); }
  int num_channels() const { return schema.num_channels(); }

  std::vector<std::vector<int>> pieces_for(const std::vector<std::string>& tokens) const;

  // Tape forward: word states, then one score grid per channel for the type.
  Var encode(Graph& g, const std::vector<std::string>& tokens);
  std::vector<Var> forward_type(Graph& g, Var h, int event_type);

  // No-grad forward for one sentence and one type.
  Tensor encode(const std::vector<std::string>& tokens) const;
  std::vector<Tensor> forward_type(const Tensor& h, int event_type) const;

  std::vector<Tensor> snapshot() const;
  void restore(const std::vector<Tensor>& values);
};

}  // namespace gridee
