#pragma once

#include <random>
#include <vector>

#include "gridee/graph.hpp"
#include "gridee/params.hpp"

namespace gridee {

struct FusionParams {
  Parameter* event_emb = nullptr;  // [num_event_types, d_h]
  Parameter* attn_wq = nullptr;    // [d_h, d_h]
  Parameter* attn_wk = nullptr;
  Parameter* attn_wv = nullptr;
  Parameter* gate1_w = nullptr;  // [d_h, 2*d_h]
  Parameter* gate1_b = nullptr;  // [1, d_h]
  Parameter* gate2_w = nullptr;
  Parameter* gate2_b = nullptr;
};

FusionParams make_fusion_params(ParamRegistry& reg, int d_h, int num_event_types,
                                std::mt19937_64& rng);

// softmax(q k^T / sqrt(d)) v with d = q.cols.
Var attention(Graph& g, Var q, Var k, Var v);
Tensor attention(const Tensor& q, const Tensor& k, const Tensor& v);

// g = sigmoid([p;q] w^T + b), out = g*p + (1-g)*q. b is [1, d].
Var gate(Graph& g, Var p, Var q, Var w, Var b);
Tensor gate(const Tensor& p, const Tensor& q, const Tensor& w, const Tensor& b);

// Event-aware word states for one event type: attention pools the event
// embedding table against the word states, a first gate blends that context
// into the words, a second gate blends in the type's own embedding.
Var fuse(Graph& g, const FusionParams& params, Var h, int event_type);
Tensor fuse(const FusionParams& params, const Tensor& h, int event_type);

// All event types in one call. The attention context and the first gate do
// not depend on the target type, so they are computed once; result[t] is
// bitwise equal to fuse(params, h, t).
std::vector<Tensor> fuse_all(const FusionParams& params, const Tensor& h);

}  // namespace gridee
