#include "gridee/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gridee {

GradCheckResult gradcheck(ParamRegistry& params, const std::function<double()>& loss_value,
                          const std::function<void()>& loss_backward, int coords_per_param,
                          double eps, uint64_t seed, double min_grad) {
  if (coords_per_param < 1) throw std::invalid_argument("gradcheck: need at least one coord");
  if (eps <= 0) throw std::invalid_argument("gradcheck: eps must be positive");
  if (min_grad < 0) throw std::invalid_argument("gradcheck: min_grad must be >= 0");

  params.zero_grads();
  loss_backward();
  std::vector<Tensor> tape_grads;
  for (const Parameter* p : params.all()) {
    tape_grads.push_back(p->grad.empty() ? Tensor::zeros(p->value.shape()) : p->grad);
  }

  std::mt19937_64 rng(seed);
  GradCheckResult result;
  const auto& ps = params.all();
  for (size_t pi = 0; pi < ps.size(); ++pi) {
    Parameter& p = *ps[pi];
    const int64_t n = p.value.numel();
    std::vector<int64_t> order(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);

    int taken = 0;
    for (int64_t c : order) {
      if (taken >= coords_per_param) break;
      const double old = p.value.at(c);
      p.value.at(c) = old + eps;
      const double f_plus = loss_value();
      p.value.at(c) = old - eps;
      const double f_minus = loss_value();
      p.value.at(c) = old;
      const double g_num = (f_plus - f_minus) / (2.0 * eps);
      const double g_tape = tape_grads[pi].at(c);
      const double mag = std::max(std::abs(g_tape), std::abs(g_num));
      if (min_grad > 0.0 && mag > 0.0 && mag < min_grad) {
        ++result.skipped;
        continue;
      }
      const double rel = std::abs(g_tape - g_num) /
                         std::max({std::abs(g_tape), std::abs(g_num), 1e-8});
      ++taken;
      ++result.checked;
      if (rel > result.max_rel_err) {
        result.max_rel_err = rel;
        result.worst = p.name + "[" + std::to_string(c) + "]";
      }
    }
    if (taken > 0) ++result.params_covered;
  }
  return result;
}

}  // namespace gridee
