#pragma once

#include <random>
#include <vector>

#include "gridee/graph.hpp"
#include "gridee/params.hpp"
#include "gridee/tokenizer.hpp"

namespace gridee {

struct EncoderConfig {
  int d_h = 32;
  int vocab_size = kDefaultPieceVocab;
  int pieces_per_word = 2;
  bool use_context_mixer = false;
};

void check_encoder_config(const EncoderConfig& cfg);  // d_h even and >= 8, etc.

struct EncoderParams {
  Parameter* piece_emb = nullptr;  // [vocab_size, d_h]
  Parameter* mixer_wq = nullptr;   // [d_h, d_h], only with the context mixer
  Parameter* mixer_wk = nullptr;
  Parameter* mixer_wv = nullptr;
};

EncoderParams make_encoder_params(ParamRegistry& reg, const EncoderConfig& cfg,
                                  std::mt19937_64& rng);

// Piece embeddings, component-wise max over each word's pieces, then the
// optional residual self-attention mixer. word_pieces holds 1..pieces_per_word
// piece ids per word; unknown ids throw.
Var encode_words(Graph& g, const EncoderParams& params, const EncoderConfig& cfg,
                 const std::vector<std::vector<int>>& word_pieces);

// No-grad twin of the above; sentence_sizes delimits the words of each packed
// sentence so the mixer never attends across sentence boundaries. The kernel
// call sequence matches the graph path row for row, so results are bitwise
// identical to per-sentence calls.
Tensor encode_words(const EncoderParams& params, const EncoderConfig& cfg,
                    const std::vector<std::vector<int>>& word_pieces,
                    const std::vector<int>& sentence_sizes);

}  // namespace gridee
