#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gridee {

// Dense row-major tensor of 64-bit floats. Rank 1 and 2 cover everything
// this project needs; shapes are validated by the kernels below.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<double> data);

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
  static Tensor full(std::vector<int> shape, double value);

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  int rows() const { return shape_[0]; }
  int cols() const { return shape_[1]; }
  int64_t numel() const { return static_cast<int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& vec() { return data_; }
  const std::vector<double>& vec() const { return data_; }

  double& at(int64_t i) { return data_[static_cast<size_t>(i)]; }
  double at(int64_t i) const { return data_[static_cast<size_t>(i)]; }
  double& at(int i, int j) { return data_[static_cast<size_t>(i) * cols() + j]; }
  double at(int i, int j) const { return data_[static_cast<size_t>(i) * cols() + j]; }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }
  bool all_finite() const;
  void fill(double v);
  std::string shape_str() const;

  bool operator==(const Tensor& o) const { return shape_ == o.shape_ && data_ == o.data_; }

 private:
  std::vector<int> shape_;
  std::vector<double> data_;
};

// Kernels. All are pure; all throw std::invalid_argument on shape mismatch.
// The autodiff graph and the no-grad inference path share these so that the
// two paths stay bitwise identical.
Tensor matmul(const Tensor& a, const Tensor& b);     // [m,k] x [k,n]
Tensor matmul_nt(const Tensor& a, const Tensor& b);  // [m,k] x [n,k]^T
Tensor matmul_tn(const Tensor& a, const Tensor& b);  // [k,m]^T x [k,n]
Tensor transpose(const Tensor& a);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
Tensor affine(const Tensor& a, double alpha, double beta);  // alpha*x + beta
Tensor add_rowvec(const Tensor& m, const Tensor& row);
Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor sigmoid(const Tensor& a);
Tensor softmax_rows(const Tensor& a);
Tensor gather_rows(const Tensor& a, const std::vector<int>& rows);
Tensor slice_rows(const Tensor& a, int row0, int nrows);
Tensor broadcast_row(const Tensor& row, int n);
// Max over consecutive row groups; group_sizes must sum to a.rows() and be
// positive. If argmax is given it receives, per output cell, the source row.
Tensor max_pool_rows(const Tensor& a, const std::vector<int>& group_sizes,
                     std::vector<int>* argmax = nullptr);
// Pairwise 2-d rotation of each row: cos/sin are [n, d/2] per-row tables.
Tensor rotate_pairs(const Tensor& a, const Tensor& cos_tab, const Tensor& sin_tab);
Tensor rotate_pairs_inverse(const Tensor& a, const Tensor& cos_tab, const Tensor& sin_tab);
Tensor gather_cells(const Tensor& a, const std::vector<int>& flat);  // rank-1 result
double dot(const Tensor& a, const Tensor& b);

}  // namespace gridee
