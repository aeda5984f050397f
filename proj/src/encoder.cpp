#include "gridee/encoder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gridee {

namespace {

void check_pieces(const std::vector<std::vector<int>>& word_pieces, const EncoderConfig& cfg) {
  for (size_t w = 0; w < word_pieces.size(); ++w) {
    const auto& pcs = word_pieces[w];
    if (pcs.empty() || static_cast<int>(pcs.size()) > cfg.pieces_per_word)
      throw std::invalid_argument("encode_words: word " + std::to_string(w) + " has " +
                                  std::to_string(pcs.size()) + " pieces");
    for (int id : pcs)
      if (id < 0 || id >= cfg.vocab_size)
        throw std::invalid_argument("encode_words: unknown piece id " + std::to_string(id));
  }
  if (word_pieces.empty()) throw std::invalid_argument("encode_words: empty sentence");
}

void flatten(const std::vector<std::vector<int>>& word_pieces, std::vector<int>* flat,
             std::vector<int>* groups) {
  for (const auto& pcs : word_pieces) {
    groups->push_back(static_cast<int>(pcs.size()));
    flat->insert(flat->end(), pcs.begin(), pcs.end());
  }
}

}  // namespace

void check_encoder_config(const EncoderConfig& cfg) {
  if (cfg.d_h < 8 || cfg.d_h % 2 != 0)
    throw std::invalid_argument("encoder: d_h must be even and at least 8, got " +
                                std::to_string(cfg.d_h));
  if (cfg.vocab_size < 1) throw std::invalid_argument("encoder: vocab_size must be positive");
  if (cfg.pieces_per_word < 1)
    throw std::invalid_argument("encoder: pieces_per_word must be positive");
}

EncoderParams make_encoder_params(ParamRegistry& reg, const EncoderConfig& cfg,
                                  std::mt19937_64& rng) {
  check_encoder_config(cfg);
  EncoderParams p;
  p.piece_emb = &reg.create("encoder.piece_emb", {cfg.vocab_size, cfg.d_h}, true);
  init_uniform(*p.piece_emb, rng, -0.1, 0.1);
  if (cfg.use_context_mixer) {
    p.mixer_wq = &reg.create("encoder.mixer.wq", {cfg.d_h, cfg.d_h}, true);
    p.mixer_wk = &reg.create("encoder.mixer.wk", {cfg.d_h, cfg.d_h}, true);
    p.mixer_wv = &reg.create("encoder.mixer.wv", {cfg.d_h, cfg.d_h}, true);
    init_scaled_uniform(*p.mixer_wq, rng);
    init_scaled_uniform(*p.mixer_wk, rng);
    init_scaled_uniform(*p.mixer_wv, rng);
  }
  return p;
}

Var encode_words(Graph& g, const EncoderParams& params, const EncoderConfig& cfg,
                 const std::vector<std::vector<int>>& word_pieces) {
  check_pieces(word_pieces, cfg);
  std::vector<int> flat, groups;
  flatten(word_pieces, &flat, &groups);

  Var table = g.param(*params.piece_emb);
  Var emb = g.gather_rows(table, flat);
  Var h = g.max_pool_rows(emb, groups);
  if (cfg.use_context_mixer) {
    Var q = g.matmul_nt(h, g.param(*params.mixer_wq));
    Var k = g.matmul_nt(h, g.param(*params.mixer_wk));
    Var v = g.matmul_nt(h, g.param(*params.mixer_wv));
    Var attn = g.softmax_rows(g.scale(g.matmul_nt(q, k), 1.0 / std::sqrt(cfg.d_h)));
    h = g.add(h, g.matmul(attn, v));
  }
  return h;
}

Tensor encode_words(const EncoderParams& params, const EncoderConfig& cfg,
                    const std::vector<std::vector<int>>& word_pieces,
                    const std::vector<int>& sentence_sizes) {
  check_pieces(word_pieces, cfg);
  int covered = 0;
  for (int sz : sentence_sizes) {
    if (sz <= 0) throw std::invalid_argument("encode_words: empty sentence in batch");
    covered += sz;
  }
  if (covered != static_cast<int>(word_pieces.size()))
    throw std::invalid_argument("encode_words: sentence_sizes do not cover the words");

  std::vector<int> flat, groups;
  flatten(word_pieces, &flat, &groups);

  Tensor emb = gather_rows(params.piece_emb->value, flat);
  Tensor h = max_pool_rows(emb, groups);
  if (!cfg.use_context_mixer) return h;

  // The mixer attends within one sentence only, so run it per slice. Each
  // slice sees exactly the matrix a standalone call would, keeping the packed
  // result bitwise equal to per-sentence encoding.
  Tensor out({h.rows(), h.cols()});
  int base = 0;
  for (int sz : sentence_sizes) {
    Tensor hs = slice_rows(h, base, sz);
    Tensor q = matmul_nt(hs, params.mixer_wq->value);
    Tensor k = matmul_nt(hs, params.mixer_wk->value);
    Tensor v = matmul_nt(hs, params.mixer_wv->value);
    Tensor attn = softmax_rows(scale(matmul_nt(q, k), 1.0 / std::sqrt(cfg.d_h)));
    Tensor mixed = add(hs, matmul(attn, v));
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < h.cols(); ++j) out.at(base + i, j) = mixed.at(i, j);
    base += sz;
  }
  return out;
}

}  // namespace gridee
