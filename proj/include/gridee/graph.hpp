#pragma once

#include <functional>
#include <vector>

#include "gridee/params.hpp"
#include "gridee/tensor.hpp"

namespace gridee {

struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Define-by-run reverse-mode tape. Every op records a tensor-level node with
// a backward closure; backward() sweeps the tape in reverse and accumulates
// into Parameter::grad for bound leaves. Construct with track=false to skip
// closure bookkeeping when only values are needed.
class Graph {
 public:
  explicit Graph(bool track = true) : track_(track) {}

  Var leaf(Tensor value);
  Var param(Parameter& p);

  Var matmul(Var a, Var b);
  Var matmul_nt(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var scale(Var a, double c);
  Var affine(Var a, double alpha, double beta);
  Var add_rowvec(Var m, Var row);
  Var concat_cols(Var a, Var b);
  Var sigmoid(Var a);
  Var softmax_rows(Var a);
  Var gather_rows(Var a, std::vector<int> rows);
  Var broadcast_row(Var row, int n);
  Var max_pool_rows(Var a, std::vector<int> group_sizes);
  Var rotate_pairs(Var a, Tensor cos_tab, Tensor sin_tab);
  Var gather_cells(Var a, std::vector<int> flat);
  // log(exp(floor) + sum_i exp(x_i)) over a rank-1 input, overflow safe.
  Var logsumexp_floor(Var x, double floor);
  Var add_many(const std::vector<Var>& xs);  // elementwise sum, same shapes

  const Tensor& value(Var v) const { return nodes_[static_cast<size_t>(v.id)].value; }
  double scalar(Var v) const;
  size_t size() const { return nodes_.size(); }
  bool tracking() const { return track_; }

  // Seeds d(loss)/d(loss) = seed and accumulates parameter gradients.
  void backward(Var loss, double seed = 1.0);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    std::vector<int> parents;
    std::function<void(Graph&, int)> back;
    Parameter* bound = nullptr;
  };

  Var push(Tensor value, std::vector<int> parents, std::function<void(Graph&, int)> back);
  Tensor& grad_of(int id);
  Node& node(int id) { return nodes_[static_cast<size_t>(id)]; }

  std::vector<Node> nodes_;
  bool track_ = true;
};

}  // namespace gridee
