#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "renn/tensor.hpp"

namespace renn {

/// A trainable dense array paired with its gradient accumulator.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;
  /// Rows of this parameter participate in max-norm rescaling (dense
  /// MLP/softmax weight matrices only).
  bool max_norm_target = false;

  Parameter(std::string n, Tensor v, bool max_norm = false)
      : name(std::move(n)),
        value(std::move(v)),
        grad(Tensor::zeros(value.shape())),
        max_norm_target(max_norm) {}

  void zero_grad() { grad.fill(0.0); }

  /// Keeps grad's shape in sync after the value tensor grew (vocabulary
  /// growth before training starts).
  void sync_grad_shape() {
    if (!grad.same_shape(value)) grad = Tensor::zeros(value.shape());
  }
};

/// Ordered, name-unique collection of parameters. Iteration order is
/// insertion order and is the order used for optimizer state, checkpoints,
/// and gradient checks.
class ModelParameters {
 public:
  ModelParameters() = default;
  ModelParameters(const ModelParameters&) = delete;
  ModelParameters& operator=(const ModelParameters&) = delete;
  ModelParameters(ModelParameters&&) = default;
  ModelParameters& operator=(ModelParameters&&) = default;

  Parameter& add(std::string name, Tensor value, bool max_norm_target = false);
  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  bool contains(const std::string& name) const;

  std::size_t size() const { return owned_.size(); }
  Parameter& operator[](std::size_t i) { return *owned_[i]; }
  const Parameter& operator[](std::size_t i) const { return *owned_[i]; }

  /// Flat pointer list in insertion order.
  std::vector<Parameter*> pointers();
  std::vector<const Parameter*> pointers() const;

  void zero_grads();
  std::size_t total_entries() const;

 private:
  std::vector<std::unique_ptr<Parameter>> owned_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace renn
