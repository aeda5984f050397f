#include "gridee/predictor.hpp"

#include <cmath>
#include <stdexcept>

namespace gridee {

RotaryTable::RotaryTable(int dim, double base) : dim_(dim), base_(base) {
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("rotary: dim must be even and at least 2");
  if (base <= 1.0) throw std::invalid_argument("rotary: base must exceed 1");
  theta_.resize(static_cast<size_t>(dim / 2));
  for (int k = 0; k < dim / 2; ++k)
    theta_[static_cast<size_t>(k)] = std::pow(base, -2.0 * k / dim);
}

void RotaryTable::tables(const std::vector<int>& positions, Tensor* cos_out,
                         Tensor* sin_out) const {
  const int n = static_cast<int>(positions.size());
  *cos_out = Tensor({n, dim_ / 2});
  *sin_out = Tensor({n, dim_ / 2});
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim_ / 2; ++k) {
      const double a = positions[static_cast<size_t>(i)] * theta_[static_cast<size_t>(k)];
      cos_out->at(i, k) = std::cos(a);
      sin_out->at(i, k) = std::sin(a);
    }
  }
}

Tensor RotaryTable::rotate(const Tensor& rows, const std::vector<int>& positions) const {
  Tensor c, s;
  tables(positions, &c, &s);
  return rotate_pairs(rows, c, s);
}

double pair_score(const RotaryTable& table, const Tensor& a, const Tensor& b, int i, int j) {
  if (a.rank() != 1 || b.rank() != 1 || a.numel() != table.dim() || b.numel() != table.dim())
    throw std::invalid_argument("pair_score: expected rank-1 vectors of the rotary dim");
  Tensor ra = table.rotate(Tensor({1, table.dim()}, a.vec()), {i});
  Tensor rb = table.rotate(Tensor({1, table.dim()}, b.vec()), {j});
  return dot(ra, rb);
}

PredictorParams make_predictor_params(ParamRegistry& reg, int d_h, int d_p,
                                      const std::vector<std::string>& channel_names,
                                      double rotary_base, std::mt19937_64& rng) {
  PredictorParams p;
  p.rotary = RotaryTable(d_p, rotary_base);
  for (const auto& name : channel_names) {
    p.w1.push_back(&reg.create("pred." + name + ".w1", {d_p, d_h}, false));
    p.w2.push_back(&reg.create("pred." + name + ".w2", {d_p, d_h}, false));
    init_scaled_uniform(*p.w1.back(), rng);
    init_scaled_uniform(*p.w2.back(), rng);
  }
  return p;
}

std::vector<Var> score_grids(Graph& g, const PredictorParams& params, Var v,
                             const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != g.value(v).rows())
    throw std::invalid_argument("score_grids: positions do not match rows");
  Tensor c, s;
  params.rotary.tables(positions, &c, &s);
  std::vector<Var> grids;
  grids.reserve(params.w1.size());
  for (size_t ch = 0; ch < params.w1.size(); ++ch) {
    Var a = g.rotate_pairs(g.matmul_nt(v, g.param(*params.w1[ch])), c, s);
    Var b = g.rotate_pairs(g.matmul_nt(v, g.param(*params.w2[ch])), c, s);
    grids.push_back(g.matmul_nt(a, b));
  }
  return grids;
}

std::vector<Tensor> score_grids(const PredictorParams& params, const Tensor& v,
                                const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != v.rows())
    throw std::invalid_argument("score_grids: positions do not match rows");
  Tensor c, s;
  params.rotary.tables(positions, &c, &s);
  return score_grids(params, v, c, s);
}

std::vector<Tensor> score_grids(const PredictorParams& params, const Tensor& v,
                                const Tensor& cos_tab, const Tensor& sin_tab) {
  if (cos_tab.rows() != v.rows())
    throw std::invalid_argument("score_grids: tables do not match rows");
  std::vector<Tensor> grids;
  grids.reserve(params.w1.size());
  for (size_t ch = 0; ch < params.w1.size(); ++ch) {
    Tensor a = rotate_pairs(matmul_nt(v, params.w1[ch]->value), cos_tab, sin_tab);
    Tensor b = rotate_pairs(matmul_nt(v, params.w2[ch]->value), cos_tab, sin_tab);
    grids.push_back(matmul_nt(a, b));
  }
  return grids;
}

}  // namespace gridee
