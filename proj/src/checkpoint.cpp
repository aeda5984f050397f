#include "gridee/checkpoint.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace gridee {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::runtime_error(path + ": " + msg);
}

json config_to_json(const ModelConfig& cfg) {
  return json{{"d_h", cfg.d_h},
              {"d_p", cfg.d_p},
              {"vocab_size", cfg.vocab_size},
              {"pieces_per_word", cfg.pieces_per_word},
              {"use_context_mixer", cfg.use_context_mixer},
              {"rotary_base", cfg.rotary_base},
              {"delta", cfg.delta},
              {"strategy", to_string(cfg.strategy)}};
}

ModelConfig config_from_json(const std::string& path, const json& j) {
  ModelConfig cfg;
  try {
    cfg.d_h = j.at("d_h").get<int>();
    cfg.d_p = j.at("d_p").get<int>();
    cfg.vocab_size = j.at("vocab_size").get<int>();
    cfg.pieces_per_word = j.at("pieces_per_word").get<int>();
    cfg.use_context_mixer = j.at("use_context_mixer").get<bool>();
    cfg.rotary_base = j.at("rotary_base").get<double>();
    cfg.delta = j.at("delta").get<double>();
    cfg.strategy = parse_role_strategy(j.at("strategy").get<std::string>());
  } catch (const json::exception& e) {
    fail(path, std::string("bad config block: ") + e.what());
  }
  return cfg;
}

json schema_to_json(const Schema& schema) {
  return json{{"event_types", schema.event_types}, {"role_types", schema.role_types}};
}

Schema schema_from_json(const std::string& path, const json& j) {
  Schema schema;
  try {
    schema.event_types = j.at("event_types").get<std::vector<std::string>>();
    schema.role_types = j.at("role_types").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    fail(path, std::string("bad schema block: ") + e.what());
  }
  return schema;
}

}  // namespace

void save_checkpoint(const Model& model, const std::string& path) {
  json doc;
  doc["version"] = kCheckpointVersion;
  doc["config"] = config_to_json(model.config);
  doc["schema"] = schema_to_json(model.schema);
  for (const Parameter* p : model.params.all()) {
    doc[p->name] = json{{"shape", p->value.shape()}, {"data", p->value.vec()}};
  }
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  out << doc.dump() << "\n";
  if (!out) fail(path, "write failed");
}

std::unique_ptr<Model> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(path, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(path, "checkpoint must be a JSON object");
  if (!doc.contains("version") || doc["version"] != kCheckpointVersion)
    fail(path, "unsupported checkpoint version");
  if (!doc.contains("config") || !doc.contains("schema"))
    fail(path, "missing config or schema block");

  ModelConfig cfg = config_from_json(path, doc["config"]);
  Schema schema = schema_from_json(path, doc["schema"]);
  auto model = std::make_unique<Model>(cfg, schema, 0);

  std::set<std::string> seen;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    if (key == "version" || key == "config" || key == "schema") continue;
    const Parameter* found = model->params.find(key);
    if (!found) fail(path, "unknown parameter " + key);
    Parameter& p = model->params.get(key);
    std::vector<int> shape;
    std::vector<double> data;
    try {
      shape = it.value().at("shape").get<std::vector<int>>();
      data = it.value().at("data").get<std::vector<double>>();
    } catch (const json::exception& e) {
      fail(path, "bad entry for " + key + ": " + e.what());
    }
    Tensor t(shape, std::move(data));
    if (!t.same_shape(p.value))
      fail(path, "shape mismatch for " + key + ": " + t.shape_str() + " vs " +
                     p.value.shape_str());
    p.value = std::move(t);
    seen.insert(key);
  }
  for (const Parameter* p : model->params.all())
    if (!seen.count(p->name)) fail(path, "missing parameter " + p->name);
  return model;
}

}  // namespace gridee
