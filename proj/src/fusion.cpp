#include "gridee/fusion.hpp"

#include <cmath>
#include <stdexcept>

namespace gridee {

FusionParams make_fusion_params(ParamRegistry& reg, int d_h, int num_event_types,
                                std::mt19937_64& rng) {
  if (num_event_types < 1) throw std::invalid_argument("fusion: need at least one event type");
  FusionParams p;
  p.event_emb = &reg.create("fusion.event_emb", {num_event_types, d_h}, false);
  init_uniform(*p.event_emb, rng, -0.1, 0.1);
  p.attn_wq = &reg.create("fusion.attn.wq", {d_h, d_h}, false);
  p.attn_wk = &reg.create("fusion.attn.wk", {d_h, d_h}, false);
  p.attn_wv = &reg.create("fusion.attn.wv", {d_h, d_h}, false);
  init_scaled_uniform(*p.attn_wq, rng);
  init_scaled_uniform(*p.attn_wk, rng);
  init_scaled_uniform(*p.attn_wv, rng);
  p.gate1_w = &reg.create("fusion.gate1.w", {d_h, 2 * d_h}, false);
  p.gate1_b = &reg.create("fusion.gate1.b", {1, d_h}, false);
  p.gate2_w = &reg.create("fusion.gate2.w", {d_h, 2 * d_h}, false);
  p.gate2_b = &reg.create("fusion.gate2.b", {1, d_h}, false);
  init_scaled_uniform(*p.gate1_w, rng);
  init_scaled_uniform(*p.gate2_w, rng);
  return p;
}

Var attention(Graph& g, Var q, Var k, Var v) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(g.value(q).cols()));
  Var weights = g.softmax_rows(g.scale(g.matmul_nt(q, k), inv));
  return g.matmul(weights, v);
}

Tensor attention(const Tensor& q, const Tensor& k, const Tensor& v) {
  const double inv = 1.0 / std::sqrt(static_cast<double>(q.cols()));
  return matmul(softmax_rows(scale(matmul_nt(q, k), inv)), v);
}

Var gate(Graph& g, Var p, Var q, Var w, Var b) {
  Var gt = g.sigmoid(g.add_rowvec(g.matmul_nt(g.concat_cols(p, q), w), b));
  return g.add(g.mul(gt, p), g.mul(g.affine(gt, -1.0, 1.0), q));
}

Tensor gate(const Tensor& p, const Tensor& q, const Tensor& w, const Tensor& b) {
  Tensor gt = sigmoid(add_rowvec(matmul_nt(concat_cols(p, q), w), b));
  return add(mul(gt, p), mul(affine(gt, -1.0, 1.0), q));
}

Var fuse(Graph& g, const FusionParams& params, Var h, int event_type) {
  const int m = params.event_emb->value.rows();
  if (event_type < 0 || event_type >= m)
    throw std::invalid_argument("fuse: event type out of range");
  Var e = g.param(*params.event_emb);
  Var q = g.matmul_nt(h, g.param(*params.attn_wq));
  Var k = g.matmul_nt(e, g.param(*params.attn_wk));
  Var v = g.matmul_nt(e, g.param(*params.attn_wv));
  Var eg = attention(g, q, k, v);
  Var hg = gate(g, h, eg, g.param(*params.gate1_w), g.param(*params.gate1_b));
  Var et = g.broadcast_row(g.gather_rows(e, {event_type}), g.value(h).rows());
  return gate(g, hg, et, g.param(*params.gate2_w), g.param(*params.gate2_b));
}

Tensor fuse(const FusionParams& params, const Tensor& h, int event_type) {
  const int m = params.event_emb->value.rows();
  if (event_type < 0 || event_type >= m)
    throw std::invalid_argument("fuse: event type out of range");
  const Tensor& e = params.event_emb->value;
  Tensor q = matmul_nt(h, params.attn_wq->value);
  Tensor k = matmul_nt(e, params.attn_wk->value);
  Tensor v = matmul_nt(e, params.attn_wv->value);
  Tensor eg = attention(q, k, v);
  Tensor hg = gate(h, eg, params.gate1_w->value, params.gate1_b->value);
  Tensor et = broadcast_row(gather_rows(e, {event_type}), h.rows());
  return gate(hg, et, params.gate2_w->value, params.gate2_b->value);
}

std::vector<Tensor> fuse_all(const FusionParams& params, const Tensor& h) {
  const Tensor& e = params.event_emb->value;
  Tensor q = matmul_nt(h, params.attn_wq->value);
  Tensor k = matmul_nt(e, params.attn_wk->value);
  Tensor v = matmul_nt(e, params.attn_wv->value);
  Tensor eg = attention(q, k, v);
  Tensor hg = gate(h, eg, params.gate1_w->value, params.gate1_b->value);
  std::vector<Tensor> out;
  out.reserve(static_cast<size_t>(e.rows()));
  for (int t = 0; t < e.rows(); ++t) {
    Tensor et = broadcast_row(gather_rows(e, {t}), h.rows());
    out.push_back(gate(hg, et, params.gate2_w->value, params.gate2_b->value));
  }
  return out;
}

}  // namespace gridee
