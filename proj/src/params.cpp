#include "gridee/params.hpp"

#include <cmath>
#include <stdexcept>

namespace gridee {

Parameter& ParamRegistry::create(const std::string& name, std::vector<int> shape,
                                 bool encoder_group) {
  if (index_.count(name))
    throw std::invalid_argument("param registry: duplicate name " + name);
  auto p = std::make_unique<Parameter>();
  p->name = name;
  p->value = Tensor(shape);
  p->grad = Tensor(std::move(shape));
  p->encoder_group = encoder_group;
  Parameter* raw = p.get();
  items_.push_back(std::move(p));
  order_.push_back(raw);
  index_[name] = raw;
  return *raw;
}

Parameter& ParamRegistry::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("param registry: unknown name " + name);
  return *it->second;
}

const Parameter& ParamRegistry::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("param registry: unknown name " + name);
  return *it->second;
}

const Parameter* ParamRegistry::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : it->second;
}

int64_t ParamRegistry::total_values() const {
  int64_t n = 0;
  for (const Parameter* p : order_) n += p->value.numel();
  return n;
}

void ParamRegistry::zero_grads() {
  for (Parameter* p : order_) p->grad.fill(0.0);
}

void init_uniform(Parameter& p, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  for (int64_t i = 0; i < p.value.numel(); ++i) p.value.at(i) = dist(rng);
}

void init_scaled_uniform(Parameter& p, std::mt19937_64& rng) {
  if (p.value.rank() != 2)
    throw std::invalid_argument("init_scaled_uniform: expected matrix parameter " + p.name);
  const double bound = std::sqrt(6.0 / (p.value.rows() + p.value.cols()));
  init_uniform(p, rng, -bound, bound);
}

}  // namespace gridee
