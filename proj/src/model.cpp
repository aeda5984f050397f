#include "gridee/model.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace gridee {

void check_model_config(const ModelConfig& cfg) {
  check_encoder_config(cfg.encoder());
  const int dp = cfg.predictor_dim();
  if (dp < 2 || dp % 2 != 0)
    throw std::invalid_argument("model: predictor dim must be even and at least 2, got " +
                                std::to_string(dp));
  if (cfg.rotary_base <= 1.0) throw std::invalid_argument("model: rotary_base must exceed 1");
}

namespace {

std::vector<std::string> channel_names(const Schema& schema) {
  std::vector<std::string> names;
  for (int c = 0; c < schema.num_channels(); ++c) names.push_back(schema.channel_name(c));
  return names;
}

}  // namespace

Model::Model(ModelConfig cfg, Schema sch, uint64_t init_seed)
    : config(cfg), schema(std::move(sch)), tokenizer(cfg.vocab_size, cfg.pieces_per_word) {
  check_model_config(cfg);
  if (schema.event_types.empty()) throw std::invalid_argument("model: schema has no event types");
  std::mt19937_64 rng(init_seed);
  enc = make_encoder_params(params, config.encoder(), rng);
  fus = make_fusion_params(params, config.d_h, num_event_types(), rng);
  pred = make_predictor_params(params, config.d_h, config.predictor_dim(),
                               channel_names(schema), config.rotary_base, rng);
}

std::vector<std::vector<int>> Model::pieces_for(const std::vector<std::string>& tokens) const {
  std::vector<std::vector<int>> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(tokenizer.pieces(t));
  return out;
}

Var Model::encode(Graph& g, const std::vector<std::string>& tokens) {
  return encode_words(g, enc, config.encoder(), pieces_for(tokens));
}

std::vector<Var> Model::forward_type(Graph& g, Var h, int event_type) {
  Var v = fuse(g, fus, h, event_type);
  std::vector<int> positions(static_cast<size_t>(g.value(h).rows()));
  std::iota(positions.begin(), positions.end(), 0);
  return score_grids(g, pred, v, positions);
}

Tensor Model::encode(const std::vector<std::string>& tokens) const {
  return encode_words(enc, config.encoder(), pieces_for(tokens),
                      {static_cast<int>(tokens.size())});
}

std::vector<Tensor> Model::forward_type(const Tensor& h, int event_type) const {
  Tensor v = fuse(fus, h, event_type);
  std::vector<int> positions(static_cast<size_t>(h.rows()));
  std::iota(positions.begin(), positions.end(), 0);
  return score_grids(pred, v, positions);
}

std::vector<Tensor> Model::snapshot() const {
  std::vector<Tensor> values;
  values.reserve(params.all().size());
  for (const Parameter* p : params.all()) values.push_back(p->value);
  return values;
}

void Model::restore(const std::vector<Tensor>& values) {
  const auto& ps = params.all();
  if (values.size() != ps.size())
    throw std::invalid_argument("model: snapshot size mismatch");
  for (size_t i = 0; i < ps.size(); ++i) {
    if (!values[i].same_shape(ps[i]->value))
      throw std::invalid_argument("model: snapshot shape mismatch for " + ps[i]->name);
    ps[i]->value = values[i];
  }
}

}  // namespace gridee
