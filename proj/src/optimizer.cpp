#include "gridee/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace gridee {

AdamW::AdamW(ParamRegistry& params, OptimConfig cfg) : params_(params), cfg_(cfg) {
  if (cfg.lr_encoder < 0 || cfg.lr_other < 0 || cfg.weight_decay < 0)
    throw std::invalid_argument("adamw: negative learning rate or decay");
  if (cfg.beta1 < 0 || cfg.beta1 >= 1 || cfg.beta2 < 0 || cfg.beta2 >= 1)
    throw std::invalid_argument("adamw: betas must lie in [0, 1)");
  if (cfg.eps <= 0) throw std::invalid_argument("adamw: eps must be positive");
  for (const Parameter* p : params.all()) {
    m_.push_back(Tensor::zeros(p->value.shape()));
    v_.push_back(Tensor::zeros(p->value.shape()));
  }
}

void AdamW::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  const auto& ps = params_.all();
  for (size_t pi = 0; pi < ps.size(); ++pi) {
    Parameter& p = *ps[pi];
    const double lr = p.encoder_group ? cfg_.lr_encoder : cfg_.lr_other;
    Tensor& m = m_[pi];
    Tensor& v = v_[pi];
    if (p.grad.empty()) {
      // Never touched by any backward pass this step; same as all-zero grad.
      if (cfg_.weight_decay != 0.0)
        for (int64_t i = 0; i < p.value.numel(); ++i)
          p.value.at(i) -= lr * cfg_.weight_decay * p.value.at(i);
      continue;
    }
    if (!p.grad.same_shape(p.value))
      throw std::invalid_argument("adamw: grad shape mismatch for " + p.name);
    for (int64_t i = 0; i < p.value.numel(); ++i) {
      const double g = p.grad.at(i);
      if (!std::isfinite(g))
        throw std::runtime_error("adamw: non-finite gradient in " + p.name);
      if (g == 0.0 && m.at(i) == 0.0 && v.at(i) == 0.0) {
        // Exact shortcut: moments stay zero and the Adam term vanishes, so
        // only decay remains. Keeps huge embedding tables cheap.
        if (cfg_.weight_decay != 0.0)
          p.value.at(i) -= lr * cfg_.weight_decay * p.value.at(i);
        continue;
      }
      m.at(i) = cfg_.beta1 * m.at(i) + (1.0 - cfg_.beta1) * g;
      v.at(i) = cfg_.beta2 * v.at(i) + (1.0 - cfg_.beta2) * g * g;
      const double mhat = m.at(i) / bc1;
      const double vhat = v.at(i) / bc2;
      const double theta = p.value.at(i);
      p.value.at(i) =
          theta - lr * mhat / (std::sqrt(vhat) + cfg_.eps) - lr * cfg_.weight_decay * theta;
    }
  }
}

}  // namespace gridee
