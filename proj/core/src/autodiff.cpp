#include "renn/autodiff.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "renn/errors.hpp"

namespace renn {

namespace {

using MatMap = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using VecMap = Eigen::Map<const Eigen::VectorXd>;
using MutVecMap = Eigen::Map<Eigen::VectorXd>;
using MutMatMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

void require(bool cond, const char* op, const std::string& detail) {
  if (!cond) throw DimensionError(std::string(op) + ": " + detail);
}

}  // namespace

Value Tape::push(Node n, const char* op_name) {
  if (!n.value.all_finite()) {
    throw NumericFault(std::string(op_name) + ": non-finite result");
  }
  nodes_.push_back(std::move(n));
  return Value{static_cast<std::int32_t>(nodes_.size() - 1)};
}

Value Tape::constant(Tensor v) {
  Node n;
  n.op = Op::kConstant;
  n.value = std::move(v);
  return push(std::move(n), "constant");
}

Value Tape::constant_vector(std::vector<double> v) {
  return constant(Tensor::vector(std::move(v)));
}

Value Tape::constant_scalar(double v) { return constant(Tensor::scalar(v)); }

Value Tape::param(Parameter& p) {
  auto it = leaf_cache_.find(&p);
  if (it != leaf_cache_.end()) return Value{it->second};
  Node n;
  n.op = Op::kLeaf;
  n.param = &p;
  n.value = p.value;
  Value v = push(std::move(n), "param");
  leaf_cache_.emplace(&p, v.index);
  return v;
}

Value Tape::param_row(Parameter& p, std::size_t row) {
  if (p.value.rank() != 2 || row >= p.value.rows()) {
    throw DimensionError("param_row: row " + std::to_string(row) +
                         " out of range for " + p.name + " (" +
                         p.value.shape_string() + ")");
  }
  std::size_t c = p.value.cols();
  Node n;
  n.op = Op::kLeafRow;
  n.param = &p;
  n.aux = row;
  std::vector<double> vals(p.value.data() + row * c,
                           p.value.data() + (row + 1) * c);
  n.value = Tensor::vector(std::move(vals));
  return push(std::move(n), "param_row");
}

Value Tape::matvec(Value w, Value x) {
  const Tensor& wt = node(w).value;
  const Tensor& xt = node(x).value;
  require(wt.rank() == 2, "matvec", "lhs must be rank 2, got " +
                                        wt.shape_string());
  require(xt.rank() == 1, "matvec", "rhs must be rank 1, got " +
                                        xt.shape_string());
  require(wt.cols() == xt.size(), "matvec",
          wt.shape_string() + " * " + xt.shape_string());
  Tensor out = Tensor::zeros({wt.rows()});
  if (wt.rows() > 0 && wt.cols() > 0) {
    MatMap wm(wt.data(), static_cast<Eigen::Index>(wt.rows()),
              static_cast<Eigen::Index>(wt.cols()));
    VecMap xm(xt.data(), static_cast<Eigen::Index>(xt.size()));
    MutVecMap om(out.data(), static_cast<Eigen::Index>(out.size()));
    om.noalias() = wm * xm;
  }
  Node n;
  n.op = Op::kMatVec;
  n.inputs = {w.index, x.index};
  n.value = std::move(out);
  return push(std::move(n), "matvec");
}

Value Tape::add(Value a, Value b) {
  const Tensor& at = node(a).value;
  const Tensor& bt = node(b).value;
  require(at.same_shape(bt), "add",
          at.shape_string() + " vs " + bt.shape_string());
  Tensor out = at;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bt[i];
  Node n;
  n.op = Op::kAdd;
  n.inputs = {a.index, b.index};
  n.value = std::move(out);
  return push(std::move(n), "add");
}

Value Tape::add_n(const std::vector<Value>& xs) {
  require(!xs.empty(), "add_n", "empty operand list");
  Tensor out = node(xs[0]).value;
  Node n;
  n.op = Op::kAddN;
  n.inputs.reserve(xs.size());
  n.inputs.push_back(xs[0].index);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const Tensor& t = node(xs[k]).value;
    require(t.same_shape(out), "add_n",
            t.shape_string() + " vs " + out.shape_string());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    n.inputs.push_back(xs[k].index);
  }
  n.value = std::move(out);
  return push(std::move(n), "add_n");
}

Value Tape::sub(Value a, Value b) {
  const Tensor& at = node(a).value;
  const Tensor& bt = node(b).value;
  require(at.same_shape(bt), "sub",
          at.shape_string() + " vs " + bt.shape_string());
  Tensor out = at;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bt[i];
  Node n;
  n.op = Op::kSub;
  n.inputs = {a.index, b.index};
  n.value = std::move(out);
  return push(std::move(n), "sub");
}

Value Tape::mul(Value a, Value b) {
  const Tensor& at = node(a).value;
  const Tensor& bt = node(b).value;
  require(at.same_shape(bt), "mul",
          at.shape_string() + " vs " + bt.shape_string());
  Tensor out = at;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bt[i];
  Node n;
  n.op = Op::kMul;
  n.inputs = {a.index, b.index};
  n.value = std::move(out);
  return push(std::move(n), "mul");
}

Value Tape::scale(Value a, double c) {
  Tensor out = node(a).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= c;
  Node n;
  n.op = Op::kScale;
  n.inputs = {a.index};
  n.caux = c;
  n.value = std::move(out);
  return push(std::move(n), "scale");
}

Value Tape::tanh(Value a) {
  Tensor out = node(a).value;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
  Node n;
  n.op = Op::kTanh;
  n.inputs = {a.index};
  n.value = std::move(out);
  return push(std::move(n), "tanh");
}

Value Tape::sigmoid(Value a) {
  Tensor out = node(a).value;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 1.0 / (1.0 + std::exp(-out[i]));
  }
  Node n;
  n.op = Op::kSigmoid;
  n.inputs = {a.index};
  n.value = std::move(out);
  return push(std::move(n), "sigmoid");
}

Value Tape::concat(const std::vector<Value>& xs) {
  require(!xs.empty(), "concat", "empty operand list");
  std::size_t total = 0;
  for (Value v : xs) {
    require(node(v).value.rank() <= 1, "concat", "operands must be rank 1");
    total += node(v).value.size();
  }
  Tensor out = Tensor::zeros({total});
  std::size_t off = 0;
  Node n;
  n.op = Op::kConcat;
  n.inputs.reserve(xs.size());
  for (Value v : xs) {
    const Tensor& t = node(v).value;
    std::copy(t.data(), t.data() + t.size(), out.data() + off);
    off += t.size();
    n.inputs.push_back(v.index);
  }
  n.value = std::move(out);
  return push(std::move(n), "concat");
}

Value Tape::max(Value v) {
  const Tensor& t = node(v).value;
  require(t.size() > 0, "max", "empty operand");
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] > t[best]) best = i;
  }
  Node n;
  n.op = Op::kMax;
  n.inputs = {v.index};
  n.aux = best;
  n.value = Tensor::scalar(t[best]);
  return push(std::move(n), "max");
}

Value Tape::max_elementwise(const std::vector<Value>& xs) {
  require(!xs.empty(), "max_elementwise", "empty operand list");
  const Tensor& first = node(xs[0]).value;
  std::size_t dim = first.size();
  Tensor out = first;
  Node n;
  n.op = Op::kMaxElementwise;
  n.arg.assign(dim, 0);
  n.inputs.reserve(xs.size());
  n.inputs.push_back(xs[0].index);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const Tensor& t = node(xs[k]).value;
    require(t.size() == dim, "max_elementwise",
            t.shape_string() + " vs " + first.shape_string());
    for (std::size_t i = 0; i < dim; ++i) {
      if (t[i] > out[i]) {
        out[i] = t[i];
        n.arg[i] = static_cast<std::uint32_t>(k);
      }
    }
    n.inputs.push_back(xs[k].index);
  }
  n.value = std::move(out);
  return push(std::move(n), "max_elementwise");
}

Value Tape::softmax(Value v) {
  const Tensor& t = node(v).value;
  require(t.size() > 0, "softmax", "empty operand");
  double mx = t[0];
  for (std::size_t i = 1; i < t.size(); ++i) mx = std::max(mx, t[i]);
  Tensor out = Tensor::zeros(t.shape());
  double z = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double e = std::exp(t[i] - mx);
    if (e < 1e-300) e = 1e-300;
    out[i] = e;
    z += e;
  }
  for (std::size_t i = 0; i < t.size(); ++i) out[i] /= z;
  Node n;
  n.op = Op::kSoftmax;
  n.inputs = {v.index};
  n.value = std::move(out);
  return push(std::move(n), "softmax");
}

Value Tape::log_clamped(Value v, double floor) {
  const Tensor& t = node(v).value;
  Tensor out = Tensor::zeros(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) {
    double x = t[i];
    if (x < floor) {
      x = floor;
      ++clamp_count_;
    }
    out[i] = std::log(x);
  }
  Node n;
  n.op = Op::kLogClamped;
  n.inputs = {v.index};
  n.caux = floor;
  n.value = std::move(out);
  return push(std::move(n), "log");
}

Value Tape::pick(Value v, std::size_t i) {
  const Tensor& t = node(v).value;
  require(i < t.size(), "pick",
          "index " + std::to_string(i) + " out of " + t.shape_string());
  Node n;
  n.op = Op::kPick;
  n.inputs = {v.index};
  n.aux = i;
  n.value = Tensor::scalar(t[i]);
  return push(std::move(n), "pick");
}

Value Tape::sum(Value v) {
  const Tensor& t = node(v).value;
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i];
  Node n;
  n.op = Op::kSum;
  n.inputs = {v.index};
  n.value = Tensor::scalar(s);
  return push(std::move(n), "sum");
}

Value Tape::normalize(Value v) {
  const Tensor& t = node(v).value;
  require(t.size() > 0, "normalize", "empty operand");
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i];
  if (!(s > 0.0)) {
    throw DegenerateProductError(
        "normalize: distribution product has zero mass");
  }
  Tensor out = Tensor::zeros(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] / s;
  Node n;
  n.op = Op::kNormalize;
  n.inputs = {v.index};
  n.caux = s;
  n.value = std::move(out);
  return push(std::move(n), "normalize");
}

Value Tape::sparse_affine(Parameter& w, Parameter& b,
                          const SparseFeatureVector& f) {
  require(w.value.rank() == 2, "sparse_affine", "weights must be rank 2");
  require(b.value.rank() == 1 && b.value.size() == w.value.rows(),
          "sparse_affine", "bias/weight class count mismatch");
  std::size_t classes = w.value.rows();
  std::size_t width = w.value.cols();
  Tensor out = b.value;
  for (const auto& [id, val] : f.entries) {
    if (id >= width) continue;  // unseen at training time: contributes zero
    for (std::size_t c = 0; c < classes; ++c) {
      out[c] += w.value.at(c, id) * val;
    }
  }
  Node n;
  n.op = Op::kSparseAffine;
  n.param = &w;
  n.param2 = &b;
  n.feats = f;
  n.value = std::move(out);
  return push(std::move(n), "sparse_affine");
}

Value Tape::sum_squares(Parameter& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.value.size(); ++i) {
    s += p.value[i] * p.value[i];
  }
  Node n;
  n.op = Op::kSumSquares;
  n.param = &p;
  n.value = Tensor::scalar(s);
  return push(std::move(n), "sum_squares");
}

const Tensor& Tape::value(Value v) const {
  if (!v.valid() || static_cast<std::size_t>(v.index) >= nodes_.size()) {
    throw DimensionError("value: invalid tape handle");
  }
  return node(v).value;
}

double Tape::scalar(Value v) const {
  const Tensor& t = value(v);
  if (t.size() != 1) {
    throw DimensionError("scalar: node has shape " + t.shape_string());
  }
  return t[0];
}

Tensor& Tape::touch_adjoint(std::int32_t i) {
  Node& n = nodes_[static_cast<std::size_t>(i)];
  if (!n.adj_live) {
    n.adjoint = Tensor::zeros(n.value.shape());
    n.adj_live = true;
  }
  return n.adjoint;
}

void Tape::backward(Value loss) {
  if (scalar(loss) != scalar(loss)) {
    throw NumericFault("backward: loss is NaN");
  }
  touch_adjoint(loss.index)[0] = 1.0;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!nodes_[i].adj_live) continue;
    backward_one(i);
  }
}

void Tape::backward_one(std::size_t i) {
  Node& n = nodes_[i];
  const Tensor& adj = n.adjoint;
  auto in_adj = [&](std::size_t k) -> Tensor& {
    return touch_adjoint(n.inputs[k]);
  };
  auto in_val = [&](std::size_t k) -> const Tensor& {
    return nodes_[static_cast<std::size_t>(n.inputs[k])].value;
  };
  switch (n.op) {
    case Op::kConstant:
      break;
    case Op::kLeaf: {
      Tensor& g = n.param->grad;
      for (std::size_t j = 0; j < adj.size(); ++j) g[j] += adj[j];
      break;
    }
    case Op::kLeafRow: {
      Tensor& g = n.param->grad;
      std::size_t c = g.cols();
      double* row = g.data() + n.aux * c;
      for (std::size_t j = 0; j < c; ++j) row[j] += adj[j];
      break;
    }
    case Op::kMatVec: {
      const Tensor& wt = in_val(0);
      const Tensor& xt = in_val(1);
      Tensor& wa = in_adj(0);
      Tensor& xa = in_adj(1);
      std::size_t r = wt.rows(), c = wt.cols();
      if (r == 0 || c == 0) break;
      MatMap wm(wt.data(), static_cast<Eigen::Index>(r),
                static_cast<Eigen::Index>(c));
      VecMap xm(xt.data(), static_cast<Eigen::Index>(c));
      VecMap am(adj.data(), static_cast<Eigen::Index>(r));
      MutMatMap wam(wa.data(), static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c));
      MutVecMap xam(xa.data(), static_cast<Eigen::Index>(c));
      wam.noalias() += am * xm.transpose();
      xam.noalias() += wm.transpose() * am;
      break;
    }
    case Op::kAdd: {
      Tensor& a = in_adj(0);
      Tensor& b = in_adj(1);
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += adj[j];
        b[j] += adj[j];
      }
      break;
    }
    case Op::kAddN: {
      for (std::size_t k = 0; k < n.inputs.size(); ++k) {
        Tensor& a = in_adj(k);
        for (std::size_t j = 0; j < adj.size(); ++j) a[j] += adj[j];
      }
      break;
    }
    case Op::kSub: {
      Tensor& a = in_adj(0);
      Tensor& b = in_adj(1);
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += adj[j];
        b[j] -= adj[j];
      }
      break;
    }
    case Op::kMul: {
      const Tensor& av = in_val(0);
      const Tensor& bv = in_val(1);
      Tensor& a = in_adj(0);
      Tensor& b = in_adj(1);
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += adj[j] * bv[j];
        b[j] += adj[j] * av[j];
      }
      break;
    }
    case Op::kScale: {
      Tensor& a = in_adj(0);
      for (std::size_t j = 0; j < adj.size(); ++j) a[j] += n.caux * adj[j];
      break;
    }
    case Op::kTanh: {
      Tensor& a = in_adj(0);
      const Tensor& y = n.value;
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += adj[j] * (1.0 - y[j] * y[j]);
      }
      break;
    }
    case Op::kSigmoid: {
      Tensor& a = in_adj(0);
      const Tensor& y = n.value;
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += adj[j] * y[j] * (1.0 - y[j]);
      }
      break;
    }
    case Op::kConcat: {
      std::size_t off = 0;
      for (std::size_t k = 0; k < n.inputs.size(); ++k) {
        Tensor& a = in_adj(k);
        for (std::size_t j = 0; j < a.size(); ++j) a[j] += adj[off + j];
        off += a.size();
      }
      break;
    }
    case Op::kMax: {
      in_adj(0)[n.aux] += adj[0];
      break;
    }
    case Op::kMaxElementwise: {
      for (std::size_t j = 0; j < adj.size(); ++j) {
        in_adj(n.arg[j])[j] += adj[j];
      }
      break;
    }
    case Op::kSoftmax: {
      const Tensor& y = n.value;
      Tensor& a = in_adj(0);
      double dot = 0.0;
      for (std::size_t j = 0; j < adj.size(); ++j) dot += adj[j] * y[j];
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += y[j] * (adj[j] - dot);
      }
      break;
    }
    case Op::kLogClamped: {
      const Tensor& x = in_val(0);
      Tensor& a = in_adj(0);
      for (std::size_t j = 0; j < adj.size(); ++j) {
        if (x[j] >= n.caux) a[j] += adj[j] / x[j];
      }
      break;
    }
    case Op::kPick: {
      in_adj(0)[n.aux] += adj[0];
      break;
    }
    case Op::kSum: {
      Tensor& a = in_adj(0);
      for (std::size_t j = 0; j < a.size(); ++j) a[j] += adj[0];
      break;
    }
    case Op::kNormalize: {
      const Tensor& y = n.value;
      Tensor& a = in_adj(0);
      double dot = 0.0;
      for (std::size_t j = 0; j < adj.size(); ++j) dot += adj[j] * y[j];
      for (std::size_t j = 0; j < adj.size(); ++j) {
        a[j] += (adj[j] - dot) / n.caux;
      }
      break;
    }
    case Op::kSparseAffine: {
      Tensor& gw = n.param->grad;
      Tensor& gb = n.param2->grad;
      std::size_t classes = gw.rows();
      std::size_t width = gw.cols();
      for (std::size_t c = 0; c < classes; ++c) gb[c] += adj[c];
      for (const auto& [id, val] : n.feats.entries) {
        if (id >= width) continue;
        for (std::size_t c = 0; c < classes; ++c) {
          gw.at(c, id) += adj[c] * val;
        }
      }
      break;
    }
    case Op::kSumSquares: {
      Tensor& g = n.param->grad;
      const Tensor& w = n.param->value;
      for (std::size_t j = 0; j < w.size(); ++j) {
        g[j] += 2.0 * adj[0] * w[j];
      }
      break;
    }
  }
}

void Tape::reset() {
  nodes_.clear();
  leaf_cache_.clear();
  clamp_count_ = 0;
}

}  // namespace renn
