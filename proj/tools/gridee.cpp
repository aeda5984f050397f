#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gridee/checkpoint.hpp"
#include "gridee/generator.hpp"
#include "gridee/infer.hpp"
#include "gridee/kvconfig.hpp"
#include "gridee/loss.hpp"
#include "gridee/metrics.hpp"
#include "gridee/trainer.hpp"

namespace {

using namespace gridee;

GenConfig gen_config_from(const KvConfig& kv) {
  GenConfig cfg;
  cfg.sentence_count = kv.get_int("sentences", cfg.sentence_count);
  cfg.max_len = kv.get_int("max_len", cfg.max_len);
  cfg.vocab_size = kv.get_int("vocab_size", cfg.vocab_size);
  cfg.overlap_rate = kv.get_double("overlap_rate", cfg.overlap_rate);
  cfg.nest_rate = kv.get_double("nest_rate", cfg.nest_rate);
  cfg.max_events_per_sentence = kv.get_int("max_events", cfg.max_events_per_sentence);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  return cfg;
}

ModelConfig model_config_from(const KvConfig& kv) {
  ModelConfig cfg;
  cfg.d_h = kv.get_int("d_h", cfg.d_h);
  cfg.d_p = kv.get_int("d_p", cfg.d_p);
  cfg.use_context_mixer = kv.get_bool("context_mixer", cfg.use_context_mixer);
  cfg.rotary_base = kv.get_double("rotary_base", cfg.rotary_base);
  cfg.delta = kv.get_double("delta", cfg.delta);
  cfg.strategy = parse_role_strategy(kv.get_str("strategy", to_string(cfg.strategy)));
  return cfg;
}

TrainConfig train_config_from(const KvConfig& kv) {
  TrainConfig cfg;
  cfg.epochs = kv.get_int("epochs", cfg.epochs);
  cfg.batch_size = kv.get_int("batch_size", cfg.batch_size);
  cfg.k_samples = kv.get_int("k_samples", cfg.k_samples);
  const double lr = kv.get_double("lr", 0.0);
  if (lr > 0) cfg.lr_encoder = cfg.lr_other = lr;
  cfg.lr_encoder = kv.get_double("lr_encoder", cfg.lr_encoder);
  cfg.lr_other = kv.get_double("lr_other", cfg.lr_other);
  cfg.weight_decay = kv.get_double("weight_decay", cfg.weight_decay);
  cfg.seed = kv.get_u64("seed", cfg.seed);
  return cfg;
}

int cmd_gen_data(const std::string& config_path, const std::string& out_path) {
  const KvConfig kv = KvConfig::load(config_path);
  const Schema schema =
      make_synthetic_schema(kv.get_int("event_types", 4), kv.get_int("role_types", 3));
  const Corpus corpus = gen_synthetic(gen_config_from(kv), schema);
  save_jsonl(corpus, out_path);
  int overlapped = 0, nested = 0;
  for (const auto& s : corpus.sentences) {
    overlapped += sentence_overlapped(s);
    nested += sentence_nested(s);
  }
  std::cout << "wrote " << corpus.sentences.size() << " sentences to " << out_path << " ("
            << overlapped << " overlapped, " << nested << " nested)\n";
  return 0;
}

int cmd_decode(const std::string& grid_path, const std::string& strategy_name) {
  std::ifstream in(grid_path);
  if (!in) throw std::runtime_error(grid_path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  Schema schema;
  const ScoreGrid grid = score_grid_from_json(buf.str(), &schema);
  const auto events = decode(grid, schema, parse_role_strategy(strategy_name));
  for (const auto& ev : events) {
    std::cout << schema.event_types[ev.event_type] << " trigger=[" << ev.trigger.start << ","
              << ev.trigger.end << "]";
    for (const auto& a : ev.arguments)
      std::cout << " " << schema.role_types[a.role] << "=[" << a.span.start << ","
                << a.span.end << "]";
    std::cout << "\n";
  }
  std::cout << events.size() << " event(s)\n";
  return 0;
}

int cmd_train(const std::string& config_path, const std::string& train_path,
              const std::string& dev_path, const std::string& out_path,
              const std::string& log_path) {
  const KvConfig kv = KvConfig::load(config_path);
  const Corpus train_data = load_jsonl(train_path);
  std::unique_ptr<Corpus> dev_data;
  if (!dev_path.empty()) dev_data = std::make_unique<Corpus>(load_jsonl(dev_path));

  Model model(model_config_from(kv), train_data.schema, kv.get_u64("init_seed", 7));
  const TrainConfig cfg = train_config_from(kv);

  std::ofstream log_file;
  std::ostream* log = &std::cout;
  if (!log_path.empty()) {
    log_file.open(log_path);
    if (!log_file) throw std::runtime_error(log_path + ": cannot open for writing");
    log = &log_file;
  }

  const TrainResult result = train(model, train_data, dev_data.get(), cfg, log);
  save_checkpoint(model, out_path);
  std::cout << "saved " << out_path;
  if (dev_data)
    std::cout << " (best epoch " << result.best_epoch << ", dev tc_f1 "
              << result.best_dev_tc_f1 << ")";
  std::cout << "\n";
  return 0;
}

int cmd_eval(const std::string& ckpt_path, const std::string& data_path,
             const std::string& report_path) {
  const auto model = load_checkpoint(ckpt_path);
  const Corpus data = load_jsonl(data_path);
  const auto preds = predict_batch(*model, data.sentences, 8);
  const EvalReport report = evaluate(preds, data);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error(report_path + ": cannot open for writing");
    out << report_to_json(report) << "\n";
  }
  std::cout << "ti_f1=" << report.ti.f1() << " tc_f1=" << report.tc.f1()
            << " ai_f1=" << report.ai.f1() << " ac_f1=" << report.ac.f1() << "\n";
  return 0;
}

int cmd_bench(const std::string& ckpt_path, const std::string& data_path,
              const std::vector<int>& batches) {
  const auto model = load_checkpoint(ckpt_path);
  const Corpus data = load_jsonl(data_path);
  double first_rate = 0.0;
  for (size_t i = 0; i < batches.size(); ++i) {
    const BenchResult r = bench(*model, data, batches[i]);
    if (i == 0) first_rate = r.sentences_per_sec;
    std::cout << "batch=" << r.batch_size << " sentences=" << r.sentences
              << " median_sec=" << r.seconds << " rate=" << r.sentences_per_sec << "/s";
    if (i > 0) std::cout << " speedup=" << r.sentences_per_sec / first_rate << "x";
    std::cout << "\n";
  }
  return 0;
}

int cmd_ksweep(const std::string& config_path, const std::string& train_path,
               const std::string& dev_path, const std::vector<int>& ks) {
  const KvConfig kv = KvConfig::load(config_path);
  const Corpus train_data = load_jsonl(train_path);
  const Corpus dev_data = load_jsonl(dev_path);
  ModelConfig mcfg = model_config_from(kv);
  TrainConfig tcfg = train_config_from(kv);
  tcfg.seed = kv.get_u64("init_seed", tcfg.seed);
  const auto rows = k_sweep(mcfg, train_data, dev_data, tcfg, ks, nullptr);
  std::cout << "k\tdev_tc_f1\n";
  for (const auto& row : rows) std::cout << row.k << "\t" << row.dev_tc_f1 << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word-pair grid event extraction"};
  app.require_subcommand(1);

  std::string config_path, out_path, grid_path, strategy = "tw-aw";
  std::string train_path, dev_path, ckpt_path, data_path, report_path, log_path;
  std::vector<int> batches{1, 8};
  std::vector<int> ks;

  auto* gen = app.add_subcommand("gen-data", "generate a synthetic corpus");
  gen->add_option("--config", config_path, "key=value settings")->required();
  gen->add_option("--out", out_path, "output JSONL path")->required();

  auto* dec = app.add_subcommand("decode", "decode one score grid JSON file");
  dec->add_option("--grid", grid_path, "score grid JSON")->required();
  dec->add_option("--strategy", strategy, "th-ah, tw-ah, th-aw or tw-aw");

  auto* tr = app.add_subcommand("train", "train a model");
  tr->add_option("--config", config_path, "key=value settings")->required();
  tr->add_option("--train", train_path, "training JSONL")->required();
  tr->add_option("--dev", dev_path, "dev JSONL for model selection");
  tr->add_option("--out", out_path, "checkpoint path")->required();
  tr->add_option("--log", log_path, "epoch log JSONL (default stdout)");

  auto* ev = app.add_subcommand("eval", "evaluate a checkpoint");
  ev->add_option("--ckpt", ckpt_path, "checkpoint path")->required();
  ev->add_option("--data", data_path, "JSONL corpus")->required();
  ev->add_option("--report", report_path, "write the full JSON report here");

  auto* be = app.add_subcommand("bench", "time batched inference");
  be->add_option("--ckpt", ckpt_path, "checkpoint path")->required();
  be->add_option("--data", data_path, "JSONL corpus")->required();
  be->add_option("--batch", batches, "batch sizes to time")->delimiter(',');

  auto* ks_cmd = app.add_subcommand("ksweep", "dev score as a function of k_samples");
  ks_cmd->add_option("--config", config_path, "key=value settings")->required();
  ks_cmd->add_option("--train", train_path, "training JSONL")->required();
  ks_cmd->add_option("--dev", dev_path, "dev JSONL")->required();
  ks_cmd->add_option("--k", ks, "k values to sweep")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(config_path, out_path);
    if (dec->parsed()) return cmd_decode(grid_path, strategy);
    if (tr->parsed()) return cmd_train(config_path, train_path, dev_path, out_path, log_path);
    if (ev->parsed()) return cmd_eval(ckpt_path, data_path, report_path);
    if (be->parsed()) return cmd_bench(ckpt_path, data_path, batches);
    if (ks_cmd->parsed()) return cmd_ksweep(config_path, train_path, dev_path, ks);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
