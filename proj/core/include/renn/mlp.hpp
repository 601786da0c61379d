#pragma once

#include <string>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/parameters.hpp"
#include "renn/rng.hpp"

namespace renn {

/// Tanh hidden layers followed by a linear output layer. All weight matrices
/// are max-norm targets.
class MlpHead {
 public:
  MlpHead(ModelParameters& params, const std::string& prefix,
          std::size_t input_dim, const std::vector<std::size_t>& hidden,
          std::size_t output_dim, Rng& rng);

  /// logits
  Value build(Tape& tape, Value input) const;

  std::size_t input_dim() const { return input_dim_; }
  std::size_t output_dim() const { return output_dim_; }

 private:
  struct Layer {
    Parameter* weight;
    Parameter* bias;
  };
  std::vector<Layer> hidden_;
  Layer out_;
  std::size_t input_dim_;
  std::size_t output_dim_;
};

/// Glorot-uniform matrix (rows x cols).
Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace renn
