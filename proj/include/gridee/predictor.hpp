#pragma once

#include <random>
#include <string>
#include <vector>

#include "gridee/graph.hpp"
#include "gridee/params.hpp"

namespace gridee {

// Position-dependent pairwise rotation. Frequencies follow the usual
// geometric schedule theta_k = base^(-2k/dim) for k = 0..dim/2-1, so scores
// built from two rotated vectors depend on positions only through j - i.
class RotaryTable {
 public:
  RotaryTable() = default;
  RotaryTable(int dim, double base = 10000.0);

  int dim() const { return dim_; }
  double base() const { return base_; }
  double theta(int k) const { return theta_[static_cast<size_t>(k)]; }

  // Per-row cos/sin tables for the given word positions, shaped [n, dim/2].
  void tables(const std::vector<int>& positions, Tensor* cos_out, Tensor* sin_out) const;

  Tensor rotate(const Tensor& rows, const std::vector<int>& positions) const;

 private:
  int dim_ = 0;
  double base_ = 0.0;
  std::vector<double> theta_;
};

// (R_i a)^T (R_j b) for rank-1 vectors a, b at word positions i, j.
double pair_score(const RotaryTable& table, const Tensor& a, const Tensor& b, int i, int j);

struct PredictorParams {
  std::vector<Parameter*> w1;  // per channel, [d_p, d_h]
  std::vector<Parameter*> w2;
  RotaryTable rotary;
};

PredictorParams make_predictor_params(ParamRegistry& reg, int d_h, int d_p,
                                      const std::vector<std::string>& channel_names,
                                      double rotary_base, std::mt19937_64& rng);

// One [n, n] score grid per channel: rotate(v w1^T) rotate(v w2^T)^T with the
// row rotations taken at the given word positions. The last form reuses
// cos/sin tables the caller already built for those positions.
std::vector<Var> score_grids(Graph& g, const PredictorParams& params, Var v,
                             const std::vector<int>& positions);
std::vector<Tensor> score_grids(const PredictorParams& params, const Tensor& v,
                                const std::vector<int>& positions);
std::vector<Tensor> score_grids(const PredictorParams& params, const Tensor& v,
                                const Tensor& cos_tab, const Tensor& sin_tab);

}  // namespace gridee
