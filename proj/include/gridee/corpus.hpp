#pragma once

#include <string>
#include <vector>

#include "gridee/schema.hpp"

namespace gridee {

struct Corpus {
  Schema schema;
  std::vector<Sentence> sentences;

  bool operator==(const Corpus& o) const = default;
};

// JSONL layout: first line {"schema": {"event_types": [...], "role_types": [...]}},
// then one {"tokens": [...], "events": [...]} object per sentence. Spans are
// inclusive [start, end] pairs; type and role names are schema strings.
Corpus load_jsonl(const std::string& path);
void save_jsonl(const Corpus& corpus, const std::string& path);

}  // namespace gridee
