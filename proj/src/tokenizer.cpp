#include "gridee/tokenizer.hpp"

#include <stdexcept>

namespace gridee {

ToyTokenizer::ToyTokenizer(int vocab_size, int pieces_per_word)
    : vocab_size_(vocab_size),
      word_space_(vocab_size * 3 / 4),
      pieces_per_word_(pieces_per_word) {
  if (vocab_size < 8) throw std::invalid_argument("tokenizer: vocab too small");
  if (pieces_per_word < 1 || pieces_per_word > 2)
    throw std::invalid_argument("tokenizer: pieces_per_word must be 1 or 2");
}

uint64_t ToyTokenizer::fnv1a(const std::string& text) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

int ToyTokenizer::word_id(const std::string& word) const {
  return static_cast<int>(fnv1a(word) % static_cast<uint64_t>(word_space_));
}

std::vector<int> ToyTokenizer::pieces(const std::string& word) const {
  if (word.empty()) throw std::invalid_argument("tokenizer: empty word");
  std::vector<int> out;
  out.push_back(word_id(word));
  if (pieces_per_word_ >= 2 && word.size() >= 4) {
    const std::string suffix = word.substr(word.size() - 3);
    const int span = vocab_size_ - word_space_;
    out.push_back(word_space_ +
                  static_cast<int>(fnv1a("sfx|" + suffix) % static_cast<uint64_t>(span)));
  }
  return out;
}

}  // namespace gridee
