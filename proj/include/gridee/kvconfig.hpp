#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gridee {

// Flat key=value settings file. '#' starts a comment, blank lines are
// skipped, whitespace around keys and values is trimmed. Typed getters throw
// with the key name on malformed values; defaults apply to missing keys.
class KvConfig {
 public:
  static KvConfig load(const std::string& path);
  static KvConfig from_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get_str(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key, int fallback) const;
  uint64_t get_u64(const std::string& key, uint64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;  // true/false/1/0

  std::vector<std::string> keys() const;

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

}  // namespace gridee
