#pragma once

#include <cstdint>
#include <vector>

#include "gridee/params.hpp"

namespace gridee {

struct OptimConfig {
  double lr_encoder = 1e-3;  // parameters created with encoder_group set
  double lr_other = 1e-3;
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// AdamW: bias-corrected moments, weight decay applied directly to the value
// rather than through the gradient.
class AdamW {
 public:
  AdamW(ParamRegistry& params, OptimConfig cfg);

  // Consumes current grads. Throws on any non-finite gradient, naming the
  // parameter. Entries whose gradient and both moments are zero are skipped:
  // for them the full update reduces to plain decay, which is still applied.
  void step();

  int64_t steps() const { return t_; }

 private:
  ParamRegistry& params_;
  OptimConfig cfg_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  int64_t t_ = 0;
};

}  // namespace gridee
