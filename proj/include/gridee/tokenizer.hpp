#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gridee {

// Embedding-table rows reserved for hashed pieces. The default matches what
// the synthetic generator assumes when it steers its marker vocabulary away
// from hash collisions, so keep them in sync.
inline constexpr int kDefaultPieceVocab = 4096;

// Stateless word-to-pieces splitter. Each word maps to one hashed word id,
// plus a hashed suffix id (last three characters) for words of length >= 4.
// Word ids live in the lower three quarters of the table, suffix ids in the
// upper quarter, so the two kinds can never collide with each other.
class ToyTokenizer {
 public:
  explicit ToyTokenizer(int vocab_size = kDefaultPieceVocab, int pieces_per_word = 2);

  std::vector<int> pieces(const std::string& word) const;
  int word_id(const std::string& word) const;
  int vocab_size() const { return vocab_size_; }
  int word_space() const { return word_space_; }

  static uint64_t fnv1a(const std::string& text);

 private:
  int vocab_size_;
  int word_space_;
  int pieces_per_word_;
};

}  // namespace gridee
