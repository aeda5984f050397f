#include "gridee/grid.hpp"

#include <stdexcept>

#include "json.hpp"

namespace gridee {

using nlohmann::json;

RoleStrategy parse_role_strategy(const std::string& name) {
  if (name == "th-ah") return RoleStrategy::kHeadHead;
  if (name == "tw-ah") return RoleStrategy::kWordHead;
  if (name == "th-aw") return RoleStrategy::kHeadWord;
  if (name == "tw-aw") return RoleStrategy::kWordWord;
  throw std::invalid_argument("unknown role strategy: " + name);
}

std::string to_string(RoleStrategy s) {
  switch (s) {
    case RoleStrategy::kHeadHead: return "th-ah";
    case RoleStrategy::kWordHead: return "tw-ah";
    case RoleStrategy::kHeadWord: return "th-aw";
    case RoleStrategy::kWordWord: return "tw-aw";
  }
  return "?";
}

const std::vector<RoleStrategy>& all_role_strategies() {
  static const std::vector<RoleStrategy> all = {
      RoleStrategy::kHeadHead, RoleStrategy::kWordHead, RoleStrategy::kHeadWord,
      RoleStrategy::kWordWord};
  return all;
}

std::string score_grid_to_json(const ScoreGrid& grid, const Schema& schema) {
  json j;
  j["schema"]["event_types"] = schema.event_types;
  j["schema"]["role_types"] = schema.role_types;
  j["event_type"] = schema.event_types.at(static_cast<size_t>(grid.event_type));
  j["n"] = grid.n;
  j["delta"] = grid.delta;
  json channels = json::object();
  for (int c = 0; c < grid.channels; ++c) {
    json rows = json::array();
    for (int i = 0; i < grid.n; ++i) {
      json row = json::array();
      for (int k = 0; k < grid.n; ++k) row.push_back(grid.score(c, i, k));
      rows.push_back(std::move(row));
    }
    channels[schema.channel_name(c)] = std::move(rows);
  }
  j["channels"] = std::move(channels);
  return j.dump(2);
}

ScoreGrid score_grid_from_json(const std::string& text, Schema* schema_out) {
  try {
    const json j = json::parse(text);
    Schema schema;
    schema.event_types = j.at("schema").at("event_types").get<std::vector<std::string>>();
    schema.role_types = j.at("schema").at("role_types").get<std::vector<std::string>>();

    const int type = schema.find_event_type(j.at("event_type").get<std::string>());
    if (type < 0) throw std::runtime_error("score grid: event type not in schema");
    const int n = j.at("n").get<int>();
    if (n <= 0) throw std::runtime_error("score grid: n must be positive");

    ScoreGrid grid(type, n, schema.num_channels(), j.value("delta", 0.0));
    const json& channels = j.at("channels");
    for (int c = 0; c < grid.channels; ++c) {
      const std::string name = schema.channel_name(c);
      if (!channels.contains(name))
        throw std::runtime_error("score grid: missing channel " + name);
      const json& rows = channels[name];
      if (static_cast<int>(rows.size()) != n)
        throw std::runtime_error("score grid: channel " + name + " has wrong row count");
      for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
          throw std::runtime_error("score grid: channel " + name + " has wrong column count");
        for (int k = 0; k < n; ++k)
          grid.score(c, i, k) =
              rows[static_cast<size_t>(i)][static_cast<size_t>(k)].get<double>();
      }
    }
    if (schema_out) *schema_out = schema;
    return grid;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("score grid: ") + e.what());
  }
}

}  // namespace gridee
