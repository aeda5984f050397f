#include "gridee/corpus.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace gridee {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

Span parse_span(const json& j, const std::string& path, int line) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    fail(path, line, "span must be a [start, end] integer pair");
  return Span{j[0].get<int>(), j[1].get<int>()};
}

json span_json(const Span& s) { return json::array({s.start, s.end}); }

}  // namespace

Corpus load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  Corpus corpus;
  std::string text;
  int line_no = 0;
  bool have_schema = false;

  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(path, line_no, std::string("invalid JSON: ") + e.what());
    }

    if (!have_schema) {
      if (!j.contains("schema")) fail(path, line_no, "first record must carry the schema");
      const json& s = j["schema"];
      if (!s.contains("event_types") || !s.contains("role_types"))
        fail(path, line_no, "schema needs event_types and role_types");
      corpus.schema.event_types = s["event_types"].get<std::vector<std::string>>();
      corpus.schema.role_types = s["role_types"].get<std::vector<std::string>>();
      if (corpus.schema.event_types.empty()) fail(path, line_no, "schema has no event types");
      have_schema = true;
      continue;
    }

    if (!j.contains("tokens") || !j["tokens"].is_array())
      fail(path, line_no, "sentence record needs a tokens array");
    Sentence sent;
    sent.tokens = j["tokens"].get<std::vector<std::string>>();
    for (const json& je : j.value("events", json::array())) {
      EventRecord ev;
      const std::string type_name = je.at("type").get<std::string>();
      ev.event_type = corpus.schema.find_event_type(type_name);
      if (ev.event_type < 0) fail(path, line_no, "unknown event type " + type_name);
      ev.trigger = parse_span(je.at("trigger"), path, line_no);
      for (const json& ja : je.value("args", json::array())) {
        Argument arg;
        const std::string role_name = ja.at("role").get<std::string>();
        arg.role = corpus.schema.find_role(role_name);
        if (arg.role < 0) fail(path, line_no, "unknown role " + role_name);
        arg.span = parse_span(ja.at("span"), path, line_no);
        ev.arguments.push_back(arg);
      }
      sent.events.push_back(std::move(ev));
    }
    const std::vector<std::string> errors = validate(sent, corpus.schema);
    if (!errors.empty()) fail(path, line_no, errors.front());
    corpus.sentences.push_back(std::move(sent));
  }
  if (!have_schema) throw std::runtime_error(path + ": empty corpus, no schema line");
  return corpus;
}

void save_jsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  json header;
  header["schema"]["event_types"] = corpus.schema.event_types;
  header["schema"]["role_types"] = corpus.schema.role_types;
  out << header.dump() << "\n";

  for (const Sentence& sent : corpus.sentences) {
    json j;
    j["tokens"] = sent.tokens;
    j["events"] = json::array();
    for (const EventRecord& ev : sent.events) {
      json je;
      je["type"] = corpus.schema.event_types[static_cast<size_t>(ev.event_type)];
      je["trigger"] = span_json(ev.trigger);
      je["args"] = json::array();
      for (const Argument& arg : ev.arguments) {
        json ja;
        ja["role"] = corpus.schema.role_types[static_cast<size_t>(arg.role)];
        ja["span"] = span_json(arg.span);
        je["args"].push_back(std::move(ja));
      }
      j["events"].push_back(std::move(je));
    }
    out << j.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace gridee
