#include "gridee/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "gridee/tokenizer.hpp"

namespace gridee {

namespace {

// Marker names are steered away from piece-id collisions in the default
// embedding table. A collision would make two markers (or a marker and a
// distractor) share an embedding row, and the corpus would no longer be
// decodable from token identities, so each name claims a fresh word id.
class NamePool {
 public:
  NamePool() : tok_(kDefaultPieceVocab, 2) {}

  std::string claim(const std::string& stem) {
    for (char v = 'a'; v <= 'z'; ++v) {
      std::string name = stem + v;
      if (used_.insert(tok_.word_id(name)).second) return name;
    }
    throw std::runtime_error("generator: no collision-free name for " + stem);
  }

  std::vector<std::string> claim_distractors(int count) {
    std::vector<std::string> out;
    for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
      if (k > 100 * count + 10000)
        throw std::runtime_error("generator: distractor vocabulary does not fit");
      std::string name = "w" + std::to_string(k);
      if (used_.insert(tok_.word_id(name)).second) out.push_back(std::move(name));
    }
    return out;
  }

 private:
  ToyTokenizer tok_;
  std::set<int> used_;
};

using Variants = std::vector<std::string>;

struct MarkerVocab {
  int m = 0, r = 0;
  // [type]
  std::vector<Variants> trig1, trig2b, trig2e;
  // [a*m+b], a < b: triggers shared by two event types
  std::vector<Variants> trig_shared;
  // [type*r + role]
  std::vector<Variants> arg1, argb, argi, arge;
  // [(a*m+b)*r + role], a < b: argument spans shared by two event types
  std::vector<Variants> sharg1, shargb, shargi, sharge;
  // [(inner*m + outer)*r + role]: trigger of `inner` nested in an argument of `outer`
  std::vector<Variants> ntg;
  std::vector<std::string> distractors;

  int pair(int a, int b) const { return a * m + b; }
  int tr(int type, int role) const { return type * r + role; }
};

MarkerVocab build_marker_vocab(const Schema& schema, int distractor_count) {
  NamePool pool;
  MarkerVocab v;
  v.m = schema.num_event_types();
  v.r = schema.num_roles();
  const auto& et = schema.event_types;
  const auto& rt = schema.role_types;

  auto claim2 = [&](const std::string& stem) {
    return Variants{pool.claim(stem), pool.claim(stem)};
  };
  auto claim1 = [&](const std::string& stem) { return Variants{pool.claim(stem)}; };

  for (int t = 0; t < v.m; ++t) {
    v.trig1.push_back(claim2("tg:" + et[t] + ":"));
    v.trig2b.push_back(claim2("tgb:" + et[t] + ":"));
    v.trig2e.push_back(claim2("tge:" + et[t] + ":"));
  }
  v.trig_shared.resize(static_cast<size_t>(v.m) * v.m);
  for (int a = 0; a < v.m; ++a)
    for (int b = a + 1; b < v.m; ++b)
      v.trig_shared[static_cast<size_t>(v.pair(a, b))] =
          claim2("tg2:" + et[a] + "+" + et[b] + ":");

  for (int t = 0; t < v.m; ++t)
    for (int role = 0; role < v.r; ++role) {
      const std::string base = et[t] + ":" + rt[role] + ":";
      v.arg1.push_back(claim2("ag:" + base));
      v.argb.push_back(claim2("agb:" + base));
      v.argi.push_back(claim2("agi:" + base));
      v.arge.push_back(claim2("age:" + base));
    }

  v.sharg1.resize(static_cast<size_t>(v.m) * v.m * std::max(v.r, 1));
  v.shargb.resize(v.sharg1.size());
  v.shargi.resize(v.sharg1.size());
  v.sharge.resize(v.sharg1.size());
  for (int a = 0; a < v.m; ++a)
    for (int b = a + 1; b < v.m; ++b)
      for (int role = 0; role < v.r; ++role) {
        const std::string base = et[a] + "+" + et[b] + ":" + rt[role] + ":";
        const size_t idx = static_cast<size_t>(v.pair(a, b) * v.r + role);
        v.sharg1[idx] = claim1("ag2:" + base);
        v.shargb[idx] = claim1("ag2b:" + base);
        v.shargi[idx] = claim1("ag2i:" + base);
        v.sharge[idx] = claim1("ag2e:" + base);
      }

  v.ntg.resize(static_cast<size_t>(v.m) * v.m * std::max(v.r, 1));
  for (int inner = 0; inner < v.m; ++inner)
    for (int outer = 0; outer < v.m; ++outer) {
      if (inner == outer) continue;
      for (int role = 0; role < v.r; ++role)
        v.ntg[static_cast<size_t>(v.pair(inner, outer) * v.r + role)] =
            claim1("ntg:" + et[inner] + "@" + et[outer] + ":" + rt[role] + ":");
    }

  v.distractors = pool.claim_distractors(distractor_count);
  return v;
}

// ---- sentence planning ----

struct BlockPlan {
  std::vector<std::string> tokens;
  std::vector<int> trigger_of;                  // event indices
  std::vector<std::pair<int, int>> argument_of; // (event index, role)
  int inner_event = -1;                         // nested trigger inside this block
  int inner_offset = -1;
  int pos = -1;
};

struct Plan {
  std::vector<int> event_types;  // by event index
  std::vector<BlockPlan> blocks;

  int total_len() const {
    int n = 0;
    for (const BlockPlan& b : blocks) n += static_cast<int>(b.tokens.size());
    return n;
  }
};

int pick(std::mt19937_64& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

double unif(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return unif(rng) < p; }

const std::string& variant(std::mt19937_64& rng, const Variants& v) {
  return v[static_cast<size_t>(pick(rng, static_cast<int>(v.size())))];
}

int draw_width(std::mt19937_64& rng, int budget, int hard_max) {
  static const int weights[] = {40, 25, 20, 15};  // widths 1..4
  const int cap = std::min(std::max(budget, 1), hard_max);
  int total = 0;
  for (int w = 1; w <= cap; ++w) total += weights[w - 1];
  int roll = pick(rng, total);
  for (int w = 1; w <= cap; ++w) {
    roll -= weights[w - 1];
    if (roll < 0) return w;
  }
  return 1;
}

BlockPlan make_trigger_block(std::mt19937_64& rng, const MarkerVocab& v, int event, int type,
                             int budget) {
  BlockPlan b;
  b.trigger_of.push_back(event);
  if (budget >= 2 && coin(rng, 0.3)) {
    b.tokens.push_back(variant(rng, v.trig2b[static_cast<size_t>(type)]));
    b.tokens.push_back(variant(rng, v.trig2e[static_cast<size_t>(type)]));
  } else {
    b.tokens.push_back(variant(rng, v.trig1[static_cast<size_t>(type)]));
  }
  return b;
}

BlockPlan make_arg_block(std::mt19937_64& rng, const MarkerVocab& v, int event, int type,
                         int role, int budget) {
  BlockPlan b;
  b.argument_of.push_back({event, role});
  const int w = draw_width(rng, budget, 4);
  const size_t idx = static_cast<size_t>(v.tr(type, role));
  if (w == 1) {
    b.tokens.push_back(variant(rng, v.arg1[idx]));
  } else {
    b.tokens.push_back(variant(rng, v.argb[idx]));
    for (int k = 0; k < w - 2; ++k) b.tokens.push_back(variant(rng, v.argi[idx]));
    b.tokens.push_back(variant(rng, v.arge[idx]));
  }
  return b;
}

// Roles are unique per event so argument head words stay unambiguous.
std::vector<int> shuffled_roles(std::mt19937_64& rng, int r) {
  std::vector<int> roles(static_cast<size_t>(r));
  std::iota(roles.begin(), roles.end(), 0);
  std::shuffle(roles.begin(), roles.end(), rng);
  return roles;
}

std::vector<int> shuffled_types(std::mt19937_64& rng, int m) {
  std::vector<int> types(static_cast<size_t>(m));
  std::iota(types.begin(), types.end(), 0);
  std::shuffle(types.begin(), types.end(), rng);
  return types;
}

void add_flat_event(Plan& plan, std::mt19937_64& rng, const MarkerVocab& v, int type,
                    int max_len) {
  const int event = static_cast<int>(plan.event_types.size());
  plan.event_types.push_back(type);
  plan.blocks.push_back(
      make_trigger_block(rng, v, event, type, max_len - plan.total_len()));
  if (v.r == 0) return;
  int args = coin(rng, 0.1) ? 0 : 1;
  if (args == 1 && v.r > 1 && coin(rng, 0.45)) args = 2;
  const std::vector<int> roles = shuffled_roles(rng, v.r);
  for (int a = 0; a < args; ++a) {
    const int budget = max_len - plan.total_len();
    if (budget < 1) break;
    plan.blocks.push_back(make_arg_block(rng, v, event, type, roles[static_cast<size_t>(a)],
                                         budget));
  }
}

Plan plan_flat(std::mt19937_64& rng, const MarkerVocab& v, const GenConfig& cfg) {
  Plan plan;
  const int k_max = std::min(cfg.max_events_per_sentence, v.m);
  static const int weights[] = {45, 30, 15, 7, 3};
  int total = 0;
  for (int k = 1; k <= k_max; ++k) total += weights[std::min(k - 1, 4)];
  int roll = pick(rng, total), k = 1;
  for (int c = 1; c <= k_max; ++c) {
    roll -= weights[std::min(c - 1, 4)];
    if (roll < 0) {
      k = c;
      break;
    }
  }
  const std::vector<int> types = shuffled_types(rng, v.m);
  for (int e = 0; e < k; ++e) {
    if (cfg.max_len - plan.total_len() < 2 && e > 0) break;
    add_flat_event(plan, rng, v, types[static_cast<size_t>(e)], cfg.max_len);
  }
  return plan;
}

Plan plan_overlapped(std::mt19937_64& rng, const MarkerVocab& v, const GenConfig& cfg) {
  Plan plan;
  const std::vector<int> types = shuffled_types(rng, v.m);
  const int ta = std::min(types[0], types[1]);
  const int tb = std::max(types[0], types[1]);
  plan.event_types = {ta, tb};

  if (coin(rng, 0.5)) {
    // Both events fire from one shared trigger word.
    BlockPlan trig;
    trig.trigger_of = {0, 1};
    trig.tokens.push_back(variant(rng, v.trig_shared[static_cast<size_t>(v.pair(ta, tb))]));
    plan.blocks.push_back(std::move(trig));
    for (int e = 0; e < 2; ++e) {
      // The first event leaves one slot for the second one's argument.
      const int reserve = e == 0 ? 1 : 0;
      const int type = plan.event_types[static_cast<size_t>(e)];
      const std::vector<int> roles = shuffled_roles(rng, v.r);
      plan.blocks.push_back(make_arg_block(rng, v, e, type, roles[0],
                                           cfg.max_len - plan.total_len() - reserve));
      if (v.r > 1 && coin(rng, 0.35) && cfg.max_len - plan.total_len() - reserve >= 1)
        plan.blocks.push_back(make_arg_block(rng, v, e, type, roles[1],
                                             cfg.max_len - plan.total_len() - reserve));
    }
  } else {
    // One argument span serves both events under the same role.
    const int role = pick(rng, v.r);
    const size_t idx = static_cast<size_t>(v.pair(ta, tb) * v.r + role);
    BlockPlan shared;
    shared.argument_of = {{0, role}, {1, role}};
    const int w = draw_width(rng, cfg.max_len - 2, 3);
    if (w == 1) {
      shared.tokens.push_back(variant(rng, v.sharg1[idx]));
    } else {
      shared.tokens.push_back(variant(rng, v.shargb[idx]));
      for (int i = 0; i < w - 2; ++i) shared.tokens.push_back(variant(rng, v.shargi[idx]));
      shared.tokens.push_back(variant(rng, v.sharge[idx]));
    }
    plan.blocks.push_back(std::move(shared));
    for (int e = 0; e < 2; ++e) {
      const int reserve = e == 0 ? 1 : 0;  // the other event still needs a trigger
      const int type = plan.event_types[static_cast<size_t>(e)];
      plan.blocks.push_back(
          make_trigger_block(rng, v, e, type, cfg.max_len - plan.total_len() - reserve));
      if (v.r > 1 && coin(rng, 0.4) && cfg.max_len - plan.total_len() - reserve >= 1) {
        std::vector<int> roles = shuffled_roles(rng, v.r);
        roles.erase(std::find(roles.begin(), roles.end(), role));
        plan.blocks.push_back(make_arg_block(rng, v, e, type, roles[0],
                                             cfg.max_len - plan.total_len() - reserve));
      }
    }
  }

  if (cfg.max_events_per_sentence >= 3 && v.m >= 3 && coin(rng, 0.3) &&
      cfg.max_len - plan.total_len() >= 2)
    add_flat_event(plan, rng, v, types[2], cfg.max_len);
  return plan;
}

Plan plan_nested(std::mt19937_64& rng, const MarkerVocab& v, const GenConfig& cfg) {
  Plan plan;
  const std::vector<int> types = shuffled_types(rng, v.m);
  const int outer = types[0], inner = types[1];
  plan.event_types = {outer, inner};
  const int role = pick(rng, v.r);

  // Outer argument hosting the inner trigger strictly between its boundary
  // markers; width 3 or 4.
  const int spare = cfg.max_len - 4;  // 3 for this block + 1 outer trigger minimum
  const int w = (spare >= 1 && coin(rng, 0.35)) ? 4 : 3;
  const int offset = 1 + pick(rng, w - 2);
  BlockPlan nest;
  nest.argument_of = {{0, role}};
  nest.inner_event = 1;
  nest.inner_offset = offset;
  const size_t aidx = static_cast<size_t>(v.tr(outer, role));
  const size_t nidx = static_cast<size_t>(v.pair(inner, outer) * v.r + role);
  nest.tokens.push_back(variant(rng, v.argb[aidx]));
  for (int k = 1; k < w - 1; ++k)
    nest.tokens.push_back(k == offset ? v.ntg[nidx][0] : variant(rng, v.argi[aidx]));
  nest.tokens.push_back(variant(rng, v.arge[aidx]));
  plan.blocks.push_back(std::move(nest));

  plan.blocks.push_back(
      make_trigger_block(rng, v, 0, outer, cfg.max_len - plan.total_len()));
  if (v.r > 1 && coin(rng, 0.35) && cfg.max_len - plan.total_len() >= 1) {
    std::vector<int> roles = shuffled_roles(rng, v.r);
    roles.erase(std::find(roles.begin(), roles.end(), role));
    plan.blocks.push_back(
        make_arg_block(rng, v, 0, outer, roles[0], cfg.max_len - plan.total_len()));
  }
  if (coin(rng, 0.5) && cfg.max_len - plan.total_len() >= 1) {
    const std::vector<int> roles = shuffled_roles(rng, v.r);
    plan.blocks.push_back(
        make_arg_block(rng, v, 1, inner, roles[0], cfg.max_len - plan.total_len()));
  }
  if (cfg.max_events_per_sentence >= 3 && v.m >= 3 && coin(rng, 0.2) &&
      cfg.max_len - plan.total_len() >= 2)
    add_flat_event(plan, rng, v, types[2], cfg.max_len);
  return plan;
}

Sentence realize(Plan plan, std::mt19937_64& rng, const MarkerVocab& v, const GenConfig& cfg) {
  std::vector<int> order(plan.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  const int total = plan.total_len();
  const int slack = pick(rng, cfg.max_len - total + 1);
  std::vector<int> gaps(plan.blocks.size() + 1, 0);
  for (int u = 0; u < slack; ++u) ++gaps[static_cast<size_t>(pick(rng, static_cast<int>(gaps.size())))];

  Sentence sent;
  sent.tokens.assign(static_cast<size_t>(total + slack), {});
  int cursor = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    cursor += gaps[i];
    BlockPlan& b = plan.blocks[static_cast<size_t>(order[i])];
    b.pos = cursor;
    for (const std::string& tok : b.tokens) sent.tokens[static_cast<size_t>(cursor++)] = tok;
  }
  for (std::string& tok : sent.tokens)
    if (tok.empty())
      tok = v.distractors[static_cast<size_t>(pick(rng, static_cast<int>(v.distractors.size())))];

  sent.events.resize(plan.event_types.size());
  for (size_t e = 0; e < plan.event_types.size(); ++e)
    sent.events[e].event_type = plan.event_types[e];
  for (const BlockPlan& b : plan.blocks) {
    const Span span{b.pos, b.pos + static_cast<int>(b.tokens.size()) - 1};
    for (int e : b.trigger_of) sent.events[static_cast<size_t>(e)].trigger = span;
    if (b.inner_event >= 0)
      sent.events[static_cast<size_t>(b.inner_event)].trigger =
          Span{b.pos + b.inner_offset, b.pos + b.inner_offset};
    for (const auto& [e, role] : b.argument_of)
      sent.events[static_cast<size_t>(e)].arguments.push_back({role, span});
  }
  canonicalize(sent);
  return sent;
}

void check_config(const GenConfig& cfg, const Schema& schema) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("gen config infeasible: " + msg);
  };
  if (cfg.sentence_count < 0) fail("negative sentence count");
  if (cfg.max_len < 4) fail("max_len below 4 leaves no room for span structure");
  if (cfg.vocab_size < 1) fail("vocab_size must be positive");
  if (cfg.max_events_per_sentence < 1) fail("max_events_per_sentence must be positive");
  if (cfg.overlap_rate < 0 || cfg.overlap_rate > 1) fail("overlap_rate outside [0,1]");
  if (cfg.nest_rate < 0 || cfg.nest_rate > 1) fail("nest_rate outside [0,1]");
  if (cfg.overlap_rate + cfg.nest_rate > 1) fail("overlap_rate + nest_rate above 1");
  if (schema.num_event_types() < 1) fail("schema has no event types");
  const bool structured = cfg.overlap_rate > 0 || cfg.nest_rate > 0;
  if (structured) {
    if (schema.num_event_types() < 2) fail("span sharing needs at least two event types");
    if (schema.num_roles() < 1) fail("span sharing needs at least one role");
    if (cfg.max_events_per_sentence < 2) fail("span sharing needs two events per sentence");
  }
}

}  // namespace

Schema make_synthetic_schema(int event_types, int role_types) {
  static const char* kTypes[] = {"alpha", "beta", "gamma", "delta",
                                 "epsilon", "zeta", "eta", "theta"};
  static const char* kRoles[] = {"subject", "object", "target", "theme", "agent"};
  Schema schema;
  for (int t = 0; t < event_types; ++t)
    schema.event_types.push_back(t < 8 ? kTypes[t] : "type" + std::to_string(t));
  for (int r = 0; r < role_types; ++r)
    schema.role_types.push_back(r < 5 ? kRoles[r] : "role" + std::to_string(r));
  return schema;
}

Corpus gen_synthetic(const GenConfig& cfg, const Schema& schema) {
  check_config(cfg, schema);
  const MarkerVocab vocab = build_marker_vocab(schema, cfg.vocab_size);
  std::mt19937_64 rng(cfg.seed);

  Corpus corpus;
  corpus.schema = schema;
  corpus.sentences.reserve(static_cast<size_t>(cfg.sentence_count));
  for (int s = 0; s < cfg.sentence_count; ++s) {
    const double u = unif(rng);
    Plan plan;
    if (u < cfg.nest_rate)
      plan = plan_nested(rng, vocab, cfg);
    else if (u < cfg.nest_rate + cfg.overlap_rate)
      plan = plan_overlapped(rng, vocab, cfg);
    else
      plan = plan_flat(rng, vocab, cfg);

    Sentence sent = realize(std::move(plan), rng, vocab, cfg);
    const std::vector<std::string> errors = validate(sent, schema);
    if (!errors.empty())
      throw std::logic_error("generator produced an invalid sentence: " + errors.front());
    corpus.sentences.push_back(std::move(sent));
  }
  return corpus;
}

}  // namespace gridee
