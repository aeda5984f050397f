#include "gridee/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gridee {

namespace {

int64_t shape_numel(const std::vector<int>& shape) {
  int64_t n = 1;
  for (int d : shape) {
    if (d < 0) throw std::invalid_argument("tensor: negative dimension");
    n *= d;
  }
  return n;
}

[[noreturn]] void shape_error(const char* op, const Tensor& a, const Tensor& b) {
  throw std::invalid_argument(std::string(op) + ": shape mismatch " + a.shape_str() +
                              " vs " + b.shape_str());
}

void expect_rank2(const char* op, const Tensor& a) {
  if (a.rank() != 2) throw std::invalid_argument(std::string(op) + ": expected rank-2 tensor");
}

}  // namespace

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  data_.assign(static_cast<size_t>(shape_numel(shape_)), 0.0);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (static_cast<int64_t>(data_.size()) != shape_numel(shape_))
    throw std::invalid_argument("tensor: data size does not match shape");
}

Tensor Tensor::full(std::vector<int> shape, double value) {
  Tensor t(std::move(shape));
  t.fill(value);
  return t;
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape_.size(); ++i) os << (i ? "," : "") << shape_[i];
  os << ']';
  return os.str();
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  expect_rank2("matmul", a);
  expect_rank2("matmul", b);
  if (a.cols() != b.rows()) shape_error("matmul", a, b);
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out({m, n});
  const double* pa = a.data();
  const double* pb = b.data();
  double* po = out.data();
  for (int i = 0; i < m; ++i) {
    for (int kk = 0; kk < k; ++kk) {
      const double av = pa[static_cast<size_t>(i) * k + kk];
      if (av == 0.0) continue;
      const double* brow = pb + static_cast<size_t>(kk) * n;
      double* orow = po + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor matmul_nt(const Tensor& a, const Tensor& b) {
  expect_rank2("matmul_nt", a);
  expect_rank2("matmul_nt", b);
  if (a.cols() != b.cols()) shape_error("matmul_nt", a, b);
  const int m = a.rows(), k = a.cols(), n = b.rows();
  Tensor out({m, n});
  for (int i = 0; i < m; ++i) {
    const double* arow = a.data() + static_cast<size_t>(i) * k;
    double* orow = out.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = b.data() + static_cast<size_t>(j) * k;
      double s = 0.0;
      for (int kk = 0; kk < k; ++kk) s += arow[kk] * brow[kk];
      orow[j] = s;
    }
  }
  return out;
}

Tensor matmul_tn(const Tensor& a, const Tensor& b) {
  expect_rank2("matmul_tn", a);
  expect_rank2("matmul_tn", b);
  if (a.rows() != b.rows()) shape_error("matmul_tn", a, b);
  const int k = a.rows(), m = a.cols(), n = b.cols();
  Tensor out({m, n});
  for (int kk = 0; kk < k; ++kk) {
    const double* arow = a.data() + static_cast<size_t>(kk) * m;
    const double* brow = b.data() + static_cast<size_t>(kk) * n;
    for (int i = 0; i < m; ++i) {
      const double av = arow[i];
      if (av == 0.0) continue;
      double* orow = out.data() + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor transpose(const Tensor& a) {
  expect_rank2("transpose", a);
  Tensor out({a.cols(), a.rows()});
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) shape_error("add", a, b);
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) out.at(i) += b.at(i);
  return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) shape_error("sub", a, b);
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) out.at(i) -= b.at(i);
  return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) shape_error("mul", a, b);
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) out.at(i) *= b.at(i);
  return out;
}

Tensor scale(const Tensor& a, double c) {
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) out.at(i) *= c;
  return out;
}

Tensor affine(const Tensor& a, double alpha, double beta) {
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) out.at(i) = alpha * out.at(i) + beta;
  return out;
}

Tensor add_rowvec(const Tensor& m, const Tensor& row) {
  expect_rank2("add_rowvec", m);
  if (row.numel() != m.cols()) shape_error("add_rowvec", m, row);
  Tensor out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) += row.at(j);
  return out;
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
  expect_rank2("concat_cols", a);
  expect_rank2("concat_cols", b);
  if (a.rows() != b.rows()) shape_error("concat_cols", a, b);
  Tensor out({a.rows(), a.cols() + b.cols()});
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

Tensor sigmoid(const Tensor& a) {
  Tensor out = a;
  for (int64_t i = 0; i < out.numel(); ++i) {
    const double x = out.at(i);
    // Split to avoid exp overflow on large |x|.
    out.at(i) = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  }
  return out;
}

Tensor softmax_rows(const Tensor& a) {
  expect_rank2("softmax_rows", a);
  Tensor out = a;
  for (int i = 0; i < a.rows(); ++i) {
    double mx = out.at(i, 0);
    for (int j = 1; j < a.cols(); ++j) mx = std::max(mx, out.at(i, j));
    double sum = 0.0;
    for (int j = 0; j < a.cols(); ++j) {
      const double e = std::exp(out.at(i, j) - mx);
      out.at(i, j) = e;
      sum += e;
    }
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) /= sum;
  }
  return out;
}

Tensor gather_rows(const Tensor& a, const std::vector<int>& rows) {
  expect_rank2("gather_rows", a);
  Tensor out({static_cast<int>(rows.size()), a.cols()});
  for (size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= a.rows())
      throw std::invalid_argument("gather_rows: row index " + std::to_string(r) +
                                  " out of range for " + a.shape_str());
    for (int j = 0; j < a.cols(); ++j) out.at(static_cast<int>(i), j) = a.at(r, j);
  }
  return out;
}

Tensor slice_rows(const Tensor& a, int row0, int nrows) {
  expect_rank2("slice_rows", a);
  if (row0 < 0 || nrows < 0 || row0 + nrows > a.rows())
    throw std::invalid_argument("slice_rows: range [" + std::to_string(row0) + ", " +
                                std::to_string(row0 + nrows) + ") out of " + a.shape_str());
  Tensor out({nrows, a.cols()});
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(row0 + i, j);
  return out;
}

Tensor broadcast_row(const Tensor& row, int n) {
  if (row.rank() != 2 || row.rows() != 1)
    throw std::invalid_argument("broadcast_row: expected [1,d] tensor");
  Tensor out({n, row.cols()});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < row.cols(); ++j) out.at(i, j) = row.at(0, j);
  return out;
}

Tensor max_pool_rows(const Tensor& a, const std::vector<int>& group_sizes,
                     std::vector<int>* argmax) {
  expect_rank2("max_pool_rows", a);
  const int64_t total = std::accumulate(group_sizes.begin(), group_sizes.end(), int64_t{0});
  if (total != a.rows())
    throw std::invalid_argument("max_pool_rows: group sizes do not cover input rows");
  Tensor out({static_cast<int>(group_sizes.size()), a.cols()});
  if (argmax) argmax->assign(static_cast<size_t>(out.numel()), -1);
  int base = 0;
  for (size_t g = 0; g < group_sizes.size(); ++g) {
    const int sz = group_sizes[g];
    if (sz <= 0) throw std::invalid_argument("max_pool_rows: empty group");
    for (int j = 0; j < a.cols(); ++j) {
      double best = a.at(base, j);
      int best_row = base;
      for (int r = 1; r < sz; ++r) {
        const double v = a.at(base + r, j);
        if (v > best) {
          best = v;
          best_row = base + r;
        }
      }
      out.at(static_cast<int>(g), j) = best;
      if (argmax) (*argmax)[g * a.cols() + j] = best_row;
    }
    base += sz;
  }
  return out;
}

Tensor rotate_pairs(const Tensor& a, const Tensor& cos_tab, const Tensor& sin_tab) {
  expect_rank2("rotate_pairs", a);
  if (a.cols() % 2 != 0) throw std::invalid_argument("rotate_pairs: odd width");
  const int half = a.cols() / 2;
  if (cos_tab.rows() != a.rows() || cos_tab.cols() != half || !cos_tab.same_shape(sin_tab))
    throw std::invalid_argument("rotate_pairs: bad rotation tables");
  Tensor out({a.rows(), a.cols()});
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < half; ++k) {
      const double c = cos_tab.at(i, k), s = sin_tab.at(i, k);
      const double x = a.at(i, 2 * k), y = a.at(i, 2 * k + 1);
      out.at(i, 2 * k) = c * x - s * y;
      out.at(i, 2 * k + 1) = s * x + c * y;
    }
  }
  return out;
}

Tensor rotate_pairs_inverse(const Tensor& a, const Tensor& cos_tab, const Tensor& sin_tab) {
  expect_rank2("rotate_pairs_inverse", a);
  const int half = a.cols() / 2;
  if (cos_tab.rows() != a.rows() || cos_tab.cols() != half || !cos_tab.same_shape(sin_tab))
    throw std::invalid_argument("rotate_pairs_inverse: bad rotation tables");
  Tensor out({a.rows(), a.cols()});
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < half; ++k) {
      const double c = cos_tab.at(i, k), s = sin_tab.at(i, k);
      const double x = a.at(i, 2 * k), y = a.at(i, 2 * k + 1);
      out.at(i, 2 * k) = c * x + s * y;
      out.at(i, 2 * k + 1) = -s * x + c * y;
    }
  }
  return out;
}

Tensor gather_cells(const Tensor& a, const std::vector<int>& flat) {
  Tensor out({static_cast<int>(flat.size())});
  for (size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] < 0 || flat[i] >= a.numel())
      throw std::invalid_argument("gather_cells: index out of range");
    out.at(static_cast<int64_t>(i)) = a.at(flat[i]);
  }
  return out;
}

double dot(const Tensor& a, const Tensor& b) {
  if (a.numel() != b.numel()) shape_error("dot", a, b);
  double s = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) s += a.at(i) * b.at(i);
  return s;
}

}  // namespace gridee
