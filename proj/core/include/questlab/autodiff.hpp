#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace questlab::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// A named learnable array. Gradients accumulate into `grad` when a recorded
/// tape is differentiated.
template <typename T>
struct Param {
  std::string name;
  Mat<T> value;
  Mat<T> grad;

  Param() = default;
  Param(std::string n, int rows, int cols) : name(std::move(n)) {
    value = Mat<T>::Zero(rows, cols);
    grad = Mat<T>::Zero(rows, cols);
  }
  void zero_grad() { grad.setZero(); }
};

/// Reverse-mode tape over dense matrices. Build the forward computation with
/// the op methods, then call backward() on a 1x1 result. With recording off
/// the same ops evaluate values only (used for targets and cached encodings).
template <typename T>
class Tape {
 public:
  struct Var {
    int id = -1;
  };

  explicit Tape(bool recording = true) : recording_(recording) {}

  bool recording() const { return recording_; }

  const Mat<T>& value(Var v) const { return nodes_[v.id].value; }
  T scalar(Var v) const {
    const Mat<T>& m = nodes_[v.id].value;
    if (m.rows() != 1 || m.cols() != 1) throw std::logic_error("scalar() on non-1x1");
    return m(0, 0);
  }

  Var constant(Mat<T> v) { return push(std::move(v)); }

  /// Leaf bound to a parameter; backward adds into p.grad.
  Var leaf(Param<T>& p) {
    Var out = push(p.value);
    if (recording_) {
      Param<T>* pp = &p;
      int id = out.id;
      nodes_[id].back = [this, id, pp] { pp->grad += nodes_[id].grad; };
    }
    return out;
  }

  Var transpose(Var a) {
    Var out = push(nodes_[a.id].value.transpose());
    bind(out, [this, a, out] { grad(a) += nodes_[out.id].grad.transpose(); });
    return out;
  }

  Var matmul(Var a, Var b) {
    Var out = push(nodes_[a.id].value * nodes_[b.id].value);
    bind(out, [this, a, b, out] {
      const Mat<T>& g = nodes_[out.id].grad;
      grad(a) += g * nodes_[b.id].value.transpose();
      grad(b) += nodes_[a.id].value.transpose() * g;
    });
    return out;
  }

  Var add(Var a, Var b) {
    Var out = push(nodes_[a.id].value + nodes_[b.id].value);
    bind(out, [this, a, b, out] {
      grad(a) += nodes_[out.id].grad;
      grad(b) += nodes_[out.id].grad;
    });
    return out;
  }

  Var sub(Var a, Var b) {
    Var out = push(nodes_[a.id].value - nodes_[b.id].value);
    bind(out, [this, a, b, out] {
      grad(a) += nodes_[out.id].grad;
      grad(b) -= nodes_[out.id].grad;
    });
    return out;
  }

  /// Adds a 1xC row vector to every row of m.
  Var add_rowwise(Var m, Var row) {
    Mat<T> v = nodes_[m.id].value;
    v.rowwise() += nodes_[row.id].value.row(0);
    Var out = push(std::move(v));
    bind(out, [this, m, row, out] {
      grad(m) += nodes_[out.id].grad;
      grad(row) += nodes_[out.id].grad.colwise().sum();
    });
    return out;
  }

  /// Adds a 1x1 scalar to every entry.
  Var add_scalar(Var m, Var s) {
    Mat<T> v = nodes_[m.id].value.array() + nodes_[s.id].value(0, 0);
    Var out = push(std::move(v));
    bind(out, [this, m, s, out] {
      grad(m) += nodes_[out.id].grad;
      grad(s)(0, 0) += nodes_[out.id].grad.sum();
    });
    return out;
  }

  Var mul(Var a, Var b) {
    Mat<T> v = nodes_[a.id].value.cwiseProduct(nodes_[b.id].value);
    Var out = push(std::move(v));
    bind(out, [this, a, b, out] {
      grad(a) += nodes_[out.id].grad.cwiseProduct(nodes_[b.id].value);
      grad(b) += nodes_[out.id].grad.cwiseProduct(nodes_[a.id].value);
    });
    return out;
  }

  Var scale(Var a, T s) {
    Var out = push(Mat<T>(nodes_[a.id].value * s));
    bind(out, [this, a, out, s] { grad(a) += nodes_[out.id].grad * s; });
    return out;
  }

  Var concat_cols(Var a, Var b) {
    const Mat<T>& va = nodes_[a.id].value;
    const Mat<T>& vb = nodes_[b.id].value;
    int ca = static_cast<int>(va.cols());
    Mat<T> v(va.rows(), va.cols() + vb.cols());
    v << va, vb;
    Var out = push(std::move(v));  // invalidates va/vb
    bind(out, [this, a, b, out, ca] {
      const Mat<T>& g = nodes_[out.id].grad;
      grad(a) += g.leftCols(ca);
      grad(b) += g.rightCols(g.cols() - ca);
    });
    return out;
  }

  Var slice_cols(Var a, int begin, int n) {
    Var out = push(Mat<T>(nodes_[a.id].value.middleCols(begin, n)));
    bind(out, [this, a, out, begin, n] {
      grad(a).middleCols(begin, n) += nodes_[out.id].grad;
    });
    return out;
  }

  Var slice_rows(Var a, int begin, int n) {
    Var out = push(Mat<T>(nodes_[a.id].value.middleRows(begin, n)));
    bind(out, [this, a, out, begin, n] {
      grad(a).middleRows(begin, n) += nodes_[out.id].grad;
    });
    return out;
  }

  Var vstack(const std::vector<Var>& parts) {
    if (parts.empty()) throw std::logic_error("vstack of nothing");
    int rows = 0;
    for (Var p : parts) rows += static_cast<int>(nodes_[p.id].value.rows());
    Mat<T> v(rows, nodes_[parts[0].id].value.cols());
    int at = 0;
    for (Var p : parts) {
      v.middleRows(at, nodes_[p.id].value.rows()) = nodes_[p.id].value;
      at += static_cast<int>(nodes_[p.id].value.rows());
    }
    Var out = push(std::move(v));
    std::vector<Var> ps = parts;
    bind(out, [this, ps, out] {
      int at2 = 0;
      for (Var p : ps) {
        int r = static_cast<int>(nodes_[p.id].value.rows());
        grad(p) += nodes_[out.id].grad.middleRows(at2, r);
        at2 += r;
      }
    });
    return out;
  }

  /// Rows of m selected by index, duplicates allowed (gradients accumulate).
  Var gather_rows(Var m, std::vector<int> idx) {
    const Mat<T>& v = nodes_[m.id].value;
    Mat<T> out_v(static_cast<int>(idx.size()), v.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) out_v.row(static_cast<int>(i)) = v.row(idx[i]);
    Var out = push(std::move(out_v));
    bind(out, [this, m, out, idx = std::move(idx)] {
      const Mat<T>& g = nodes_[out.id].grad;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        grad(m).row(idx[i]) += g.row(static_cast<int>(i));
      }
    });
    return out;
  }

  Var mean_rows(Var m) {
    const Mat<T>& v = nodes_[m.id].value;
    int rows = static_cast<int>(v.rows());
    Mat<T> out_v = v.colwise().mean();
    Var out = push(std::move(out_v));  // invalidates v
    bind(out, [this, m, out, rows] {
      grad(m) += (Mat<T>::Ones(rows, 1) * nodes_[out.id].grad.row(0)) / static_cast<T>(rows);
    });
    return out;
  }

  Var sum_all(Var a) {
    Mat<T> v(1, 1);
    v(0, 0) = nodes_[a.id].value.sum();
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      grad(a).array() += nodes_[out.id].grad(0, 0);
    });
    return out;
  }

  Var mean_all(Var a) {
    T n = static_cast<T>(nodes_[a.id].value.size());
    return scale(sum_all(a), T(1) / n);
  }

  Var tanh_op(Var a) {
    Mat<T> v = nodes_[a.id].value.array().tanh();
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      const Mat<T>& y = nodes_[out.id].value;
      grad(a).array() +=
          nodes_[out.id].grad.array() * (T(1) - y.array() * y.array());
    });
    return out;
  }

  Var sigmoid(Var a) {
    Mat<T> v = (T(1) / (T(1) + (-nodes_[a.id].value.array()).exp())).matrix();
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      const Mat<T>& y = nodes_[out.id].value;
      grad(a).array() += nodes_[out.id].grad.array() * y.array() * (T(1) - y.array());
    });
    return out;
  }

  Var relu(Var a) {
    Mat<T> v = nodes_[a.id].value.cwiseMax(T(0));
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      grad(a).array() += nodes_[out.id].grad.array() *
                         (nodes_[a.id].value.array() > T(0)).template cast<T>();
    });
    return out;
  }

  Var leaky_relu(Var a, T slope) {
    const Mat<T>& x = nodes_[a.id].value;
    Mat<T> v = x.array().max(x.array() * slope);
    Var out = push(std::move(v));
    bind(out, [this, a, out, slope] {
      auto mask = (nodes_[a.id].value.array() > T(0)).template cast<T>();
      grad(a).array() +=
          nodes_[out.id].grad.array() * (mask + (T(1) - mask) * slope);
    });
    return out;
  }

  /// Softmax independently over each row.
  Var softmax_rows(Var a) {
    Mat<T> v = nodes_[a.id].value;
    for (int r = 0; r < v.rows(); ++r) {
      T mx = v.row(r).maxCoeff();
      v.row(r) = (v.row(r).array() - mx).exp();
      v.row(r) /= v.row(r).sum();
    }
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      const Mat<T>& y = nodes_[out.id].value;
      const Mat<T>& g = nodes_[out.id].grad;
      for (int r = 0; r < y.rows(); ++r) {
        T dot = (g.row(r).array() * y.row(r).array()).sum();
        grad(a).row(r).array() += y.row(r).array() * (g.row(r).array() - dot);
      }
    });
    return out;
  }

  Var square(Var a) {
    Mat<T> v = nodes_[a.id].value.array().square();
    Var out = push(std::move(v));
    bind(out, [this, a, out] {
      grad(a).array() += nodes_[out.id].grad.array() * T(2) * nodes_[a.id].value.array();
    });
    return out;
  }

  /// d(loss)/d(everything), loss must be 1x1 and finite.
  void backward(Var loss) {
    if (!recording_) throw std::logic_error("backward() on a non-recording tape");
    const Mat<T>& lv = nodes_[loss.id].value;
    if (lv.rows() != 1 || lv.cols() != 1) throw std::logic_error("loss must be scalar");
    if (!std::isfinite(static_cast<double>(lv(0, 0)))) {
      throw std::runtime_error("non-finite loss");
    }
    for (auto& n : nodes_) {
      if (n.grad.size() == 0) n.grad = Mat<T>::Zero(n.value.rows(), n.value.cols());
    }
    nodes_[loss.id].grad(0, 0) = T(1);
    for (int i = loss.id; i >= 0; --i) {
      if (nodes_[i].back) nodes_[i].back();
    }
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat<T> value;
    Mat<T> grad;
    std::function<void()> back;
  };

  Var push(Mat<T> value) {
    Node n;
    n.value = std::move(value);
    nodes_.push_back(std::move(n));
    return Var{static_cast<int>(nodes_.size()) - 1};
  }

  template <typename F>
  void bind(Var v, F&& f) {
    if (recording_) nodes_[v.id].back = std::forward<F>(f);
  }

  Mat<T>& grad(Var v) {
    Node& n = nodes_[v.id];
    if (n.grad.size() == 0) n.grad = Mat<T>::Zero(n.value.rows(), n.value.cols());
    return n.grad;
  }

  bool recording_;
  std::vector<Node> nodes_;
};

}  // namespace questlab::nn
