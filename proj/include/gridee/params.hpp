#pragma once

#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridee/tensor.hpp"

namespace gridee {

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  bool encoder_group = false;  // picks the learning-rate group in the optimizer
};

// Owns every trainable tensor. Iteration order is creation order, which keeps
// initialization and optimizer sweeps deterministic.
class ParamRegistry {
 public:
  Parameter& create(const std::string& name, std::vector<int> shape, bool encoder_group = false);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  const Parameter* find(const std::string& name) const;
  std::vector<Parameter*>& all() { return order_; }
  const std::vector<Parameter*>& all() const { return order_; }
  size_t size() const { return order_.size(); }
  int64_t total_values() const;
  void zero_grads();

 private:
  std::vector<std::unique_ptr<Parameter>> items_;
  std::vector<Parameter*> order_;
  std::unordered_map<std::string, Parameter*> index_;
};

void init_uniform(Parameter& p, std::mt19937_64& rng, double lo, double hi);
// Scaled uniform, bound sqrt(6 / (fan_in + fan_out)) from the [out,in] shape.
void init_scaled_uniform(Parameter& p, std::mt19937_64& rng);

}  // namespace gridee
