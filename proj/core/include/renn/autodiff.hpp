#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "renn/parameters.hpp"
#include "renn/sparse.hpp"
#include "renn/tensor.hpp"

namespace renn {

class Tape;

/// Handle to a node on a Tape.
struct Value {
  std::int32_t index = -1;
  bool valid() const { return index >= 0; }
};

/// Eager reverse-mode tape. Building an op computes its value immediately;
/// backward() sweeps the tape once and accumulates d(loss)/d(param) into
/// each touched Parameter's grad tensor.
///
/// Every op verifies its result is finite and raises NumericFault naming the
/// op otherwise. Max-style ops record their argmax (first index on ties) and
/// route the gradient there. Parameters must not be mutated between building
/// a graph and calling backward() on it.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaves.
  Value constant(Tensor v);
  Value constant_vector(std::vector<double> v);
  Value constant_scalar(double v);
  /// Full parameter tensor. Cached: repeated calls on the same tape return
  /// the same node.
  Value param(Parameter& p);
  /// Single row of a rank-2 parameter (embedding lookup).
  Value param_row(Parameter& p, std::size_t row);

  // Primitives.
  Value matvec(Value w, Value x);
  Value add(Value a, Value b);
  Value add_n(const std::vector<Value>& xs);
  Value sub(Value a, Value b);
  Value mul(Value a, Value b);
  Value scale(Value a, double c);
  Value tanh(Value a);
  Value sigmoid(Value a);
  Value concat(const std::vector<Value>& xs);
  /// Vector -> scalar maximum.
  Value max(Value v);
  /// Dimensionwise maximum over same-shape vectors.
  Value max_elementwise(const std::vector<Value>& xs);
  Value softmax(Value v);
  /// log(max(v, floor)) elementwise; entries at the floor get zero gradient.
  Value log_clamped(Value v, double floor = 1e-12);
  Value pick(Value v, std::size_t i);
  Value sum(Value v);
  /// v / sum(v). Raises DegenerateProductError when the mass is zero.
  Value normalize(Value v);
  /// W*f + b for a sparse feature vector; gradients touch only active
  /// feature columns. Ids beyond W's width contribute zero.
  Value sparse_affine(Parameter& w, Parameter& b,
                      const SparseFeatureVector& f);
  /// Sum of squared entries of a parameter (L2 penalty term).
  Value sum_squares(Parameter& p);

  // Composites.
  Value affine(Value w, Value x, Value b) { return add(matvec(w, x), b); }

  const Tensor& value(Value v) const;
  double scalar(Value v) const;

  /// Reverse sweep from a scalar loss node.
  void backward(Value loss);

  /// Count of log_clamped activations that actually clamped.
  std::size_t clamp_count() const { return clamp_count_; }

  std::size_t size() const { return nodes_.size(); }
  /// Drops all nodes, keeps allocated capacity for reuse.
  void reset();

 private:
  enum class Op : std::uint8_t {
    kConstant,
    kLeaf,
    kLeafRow,
    kMatVec,
    kAdd,
    kAddN,
    kSub,
    kMul,
    kScale,
    kTanh,
    kSigmoid,
    kConcat,
    kMax,
    kMaxElementwise,
    kSoftmax,
    kLogClamped,
    kPick,
    kSum,
    kNormalize,
    kSparseAffine,
    kSumSquares,
  };

  struct Node {
    Op op;
    Tensor value;
    Tensor adjoint;
    bool adj_live = false;
    std::vector<std::int32_t> inputs;
    Parameter* param = nullptr;   // kLeaf/kLeafRow/kSparseAffine/kSumSquares
    Parameter* param2 = nullptr;  // kSparseAffine bias
    std::size_t aux = 0;          // row / pick index / argmax
    double caux = 0.0;            // scale factor / clamp floor / stored sum
    std::vector<std::uint32_t> arg;  // per-dim argmax for kMaxElementwise
    SparseFeatureVector feats;       // kSparseAffine
  };

  Value push(Node node, const char* op_name);
  Node& node(Value v) { return nodes_[static_cast<std::size_t>(v.index)]; }
  const Node& node(Value v) const {
    return nodes_[static_cast<std::size_t>(v.index)];
  }
  Tensor& touch_adjoint(std::int32_t i);
  void backward_one(std::size_t i);

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, std::int32_t> leaf_cache_;
  std::size_t clamp_count_ = 0;
};

}  // namespace renn
