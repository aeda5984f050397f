#include "gridee/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace gridee {

Var Graph::push(Tensor value, std::vector<int> parents, std::function<void(Graph&, int)> back) {
  Node n;
  n.value = std::move(value);
  if (track_) {
    n.parents = std::move(parents);
    n.back = std::move(back);
  }
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Tensor& Graph::grad_of(int id) {
  Node& n = node(id);
  if (n.grad.empty() && n.value.numel() > 0) n.grad = Tensor(n.value.shape());
  return n.grad;
}

double Graph::scalar(Var v) const {
  const Tensor& t = value(v);
  if (t.numel() != 1) throw std::invalid_argument("graph: scalar() on non-scalar " + t.shape_str());
  return t.at(int64_t{0});
}

Var Graph::leaf(Tensor value) { return push(std::move(value), {}, nullptr); }

Var Graph::param(Parameter& p) {
  Var v = push(p.value, {}, nullptr);
  if (track_) node(v.id).bound = &p;
  return v;
}

Var Graph::matmul(Var a, Var b) {
  Tensor out = gridee::matmul(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    const Tensor& d = n.grad;
    const Tensor& av = g.node(n.parents[0]).value;
    const Tensor& bv = g.node(n.parents[1]).value;
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), gridee::matmul_nt(d, bv));
    g.grad_of(n.parents[1]) = gridee::add(g.grad_of(n.parents[1]), gridee::matmul_tn(av, d));
  });
}

Var Graph::matmul_nt(Var a, Var b) {
  Tensor out = gridee::matmul_nt(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    const Tensor& d = n.grad;
    const Tensor& av = g.node(n.parents[0]).value;
    const Tensor& bv = g.node(n.parents[1]).value;
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), gridee::matmul(d, bv));
    g.grad_of(n.parents[1]) = gridee::add(g.grad_of(n.parents[1]), gridee::matmul_tn(d, av));
  });
}

Var Graph::add(Var a, Var b) {
  Tensor out = gridee::add(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), n.grad);
    g.grad_of(n.parents[1]) = gridee::add(g.grad_of(n.parents[1]), n.grad);
  });
}

Var Graph::sub(Var a, Var b) {
  Tensor out = gridee::sub(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), n.grad);
    g.grad_of(n.parents[1]) = gridee::sub(g.grad_of(n.parents[1]), n.grad);
  });
}

Var Graph::mul(Var a, Var b) {
  Tensor out = gridee::mul(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    const Tensor& av = g.node(n.parents[0]).value;
    const Tensor& bv = g.node(n.parents[1]).value;
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), gridee::mul(n.grad, bv));
    g.grad_of(n.parents[1]) = gridee::add(g.grad_of(n.parents[1]), gridee::mul(n.grad, av));
  });
}

Var Graph::scale(Var a, double c) {
  Tensor out = gridee::scale(value(a), c);
  return push(std::move(out), {a.id}, [c](Graph& g, int id) {
    Node& n = g.node(id);
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), gridee::scale(n.grad, c));
  });
}

Var Graph::affine(Var a, double alpha, double beta) {
  Tensor out = gridee::affine(value(a), alpha, beta);
  return push(std::move(out), {a.id}, [alpha](Graph& g, int id) {
    Node& n = g.node(id);
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), gridee::scale(n.grad, alpha));
  });
}

Var Graph::add_rowvec(Var m, Var row) {
  Tensor out = gridee::add_rowvec(value(m), value(row));
  return push(std::move(out), {m.id, row.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]), n.grad);
    Tensor& rg = g.grad_of(n.parents[1]);
    const Tensor& d = n.grad;
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j) rg.at(static_cast<int64_t>(j)) += d.at(i, j);
  });
}

Var Graph::concat_cols(Var a, Var b) {
  const int ac = value(a).cols();
  Tensor out = gridee::concat_cols(value(a), value(b));
  return push(std::move(out), {a.id, b.id}, [ac](Graph& g, int id) {
    Node& n = g.node(id);
    const Tensor& d = n.grad;
    Tensor& ag = g.grad_of(n.parents[0]);
    Tensor& bg = g.grad_of(n.parents[1]);
    for (int i = 0; i < d.rows(); ++i) {
      for (int j = 0; j < ac; ++j) ag.at(i, j) += d.at(i, j);
      for (int j = ac; j < d.cols(); ++j) bg.at(i, j - ac) += d.at(i, j);
    }
  });
}

Var Graph::sigmoid(Var a) {
  Tensor out = gridee::sigmoid(value(a));
  Var v = push(std::move(out), {a.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& ag = g.grad_of(n.parents[0]);
    for (int64_t i = 0; i < n.value.numel(); ++i) {
      const double s = n.value.at(i);
      ag.at(i) += n.grad.at(i) * s * (1.0 - s);
    }
  });
  return v;
}

Var Graph::softmax_rows(Var a) {
  Tensor out = gridee::softmax_rows(value(a));
  return push(std::move(out), {a.id}, [](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& ag = g.grad_of(n.parents[0]);
    const Tensor& s = n.value;
    const Tensor& d = n.grad;
    for (int i = 0; i < s.rows(); ++i) {
      double inner = 0.0;
      for (int j = 0; j < s.cols(); ++j) inner += d.at(i, j) * s.at(i, j);
      for (int j = 0; j < s.cols(); ++j) ag.at(i, j) += s.at(i, j) * (d.at(i, j) - inner);
    }
  });
}

Var Graph::gather_rows(Var a, std::vector<int> rows) {
  Tensor out = gridee::gather_rows(value(a), rows);
  return push(std::move(out), {a.id}, [rows = std::move(rows)](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& ag = g.grad_of(n.parents[0]);
    const Tensor& d = n.grad;
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < d.cols(); ++j) ag.at(rows[i], j) += d.at(static_cast<int>(i), j);
  });
}

Var Graph::broadcast_row(Var row, int n) {
  Tensor out = gridee::broadcast_row(value(row), n);
  return push(std::move(out), {row.id}, [](Graph& g, int id) {
    Node& nd = g.node(id);
    Tensor& rg = g.grad_of(nd.parents[0]);
    const Tensor& d = nd.grad;
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j) rg.at(0, j) += d.at(i, j);
  });
}

Var Graph::max_pool_rows(Var a, std::vector<int> group_sizes) {
  std::vector<int> argmax;
  Tensor out = gridee::max_pool_rows(value(a), group_sizes, &argmax);
  return push(std::move(out), {a.id}, [argmax = std::move(argmax)](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& ag = g.grad_of(n.parents[0]);
    const Tensor& d = n.grad;
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        ag.at(argmax[static_cast<size_t>(i) * d.cols() + j], j) += d.at(i, j);
  });
}

Var Graph::rotate_pairs(Var a, Tensor cos_tab, Tensor sin_tab) {
  Tensor out = gridee::rotate_pairs(value(a), cos_tab, sin_tab);
  return push(std::move(out), {a.id},
              [c = std::move(cos_tab), s = std::move(sin_tab)](Graph& g, int id) {
                Node& n = g.node(id);
                g.grad_of(n.parents[0]) = gridee::add(g.grad_of(n.parents[0]),
                                                      gridee::rotate_pairs_inverse(n.grad, c, s));
              });
}

Var Graph::gather_cells(Var a, std::vector<int> flat) {
  Tensor out = gridee::gather_cells(value(a), flat);
  return push(std::move(out), {a.id}, [flat = std::move(flat)](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& ag = g.grad_of(n.parents[0]);
    for (size_t i = 0; i < flat.size(); ++i) ag.at(flat[i]) += n.grad.at(static_cast<int64_t>(i));
  });
}

Var Graph::logsumexp_floor(Var x, double floor) {
  const Tensor& xv = value(x);
  double mx = floor;
  for (int64_t i = 0; i < xv.numel(); ++i) mx = std::max(mx, xv.at(i));
  double sum = std::exp(floor - mx);
  for (int64_t i = 0; i < xv.numel(); ++i) sum += std::exp(xv.at(i) - mx);
  Tensor out({1});
  out.at(int64_t{0}) = mx + std::log(sum);
  const double lse = out.at(int64_t{0});
  return push(std::move(out), {x.id}, [lse](Graph& g, int id) {
    Node& n = g.node(id);
    Tensor& xg = g.grad_of(n.parents[0]);
    const Tensor& xv = g.node(n.parents[0]).value;
    const double dy = n.grad.at(int64_t{0});
    for (int64_t i = 0; i < xv.numel(); ++i) xg.at(i) += dy * std::exp(xv.at(i) - lse);
  });
}

Var Graph::add_many(const std::vector<Var>& xs) {
  if (xs.empty()) throw std::invalid_argument("graph: add_many of nothing");
  Tensor out = value(xs[0]);
  std::vector<int> parents;
  parents.reserve(xs.size());
  parents.push_back(xs[0].id);
  for (size_t i = 1; i < xs.size(); ++i) {
    out = gridee::add(out, value(xs[i]));
    parents.push_back(xs[i].id);
  }
  return push(std::move(out), std::move(parents), [](Graph& g, int id) {
    Node& n = g.node(id);
    for (int p : n.parents) g.grad_of(p) = gridee::add(g.grad_of(p), n.grad);
  });
}

void Graph::backward(Var loss, double seed) {
  if (!track_) throw std::logic_error("graph: backward on a non-tracking graph");
  if (!loss.valid() || loss.id >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("graph: backward on invalid var");
  Tensor& lg = grad_of(loss.id);
  for (int64_t i = 0; i < lg.numel(); ++i) lg.at(i) += seed;
  for (int id = loss.id; id >= 0; --id) {
    Node& n = node(id);
    if (n.grad.empty()) continue;  // nothing flowed here
    if (n.back) n.back(*this, id);
  }
  for (auto& n : nodes_) {
    if (n.bound && !n.grad.empty())
      n.bound->grad = gridee::add(n.bound->grad, n.grad);
  }
}

}  // namespace gridee
