#pragma once

#include <string>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/featurize.hpp"
#include "renn/mlp.hpp"
#include "renn/parameters.hpp"

namespace renn {

struct ConvConfig {
  std::vector<std::size_t> window_sizes = {2, 3, 4, 5};
  std::size_t maps_per_window = 150;
  std::vector<std::size_t> mlp_hidden = {300};
  double dropout_rate = 0.5;
  std::size_t classes = 0;
};

enum class ConvMode { kValid, kSame };

/// Score sequence of one filter over consecutive column windows:
/// s_i = tanh(sum_j f_{j+1} . x_{j+i} + b).
///
/// Valid mode yields n-k+1 scores and requires n >= k. Same mode pads the
/// input with floor(k/2) zero columns on the left and k-1-floor(k/2) on the
/// right, yielding exactly n scores for every k.
std::vector<double> conv_scores(const std::vector<Column>& X,
                                const Tensor& filter,  // k x dim
                                double bias, ConvMode mode);

/// Maximum of a non-empty score sequence.
double max_pool(const std::vector<double>& scores);

/// Multi-window filter bank with tanh convolution scores. Filters for window
/// size k are one (maps x k*dim) matrix; map m's filter is its m-th row.
/// Heads (MLP + softmax) live in the owning classifier.
class CnnModel {
 public:
  CnnModel(ModelParameters& params, const std::string& prefix,
           const ConvConfig& config, std::size_t input_dim, Rng& rng);

  const ConvConfig& config() const { return cfg_; }
  std::size_t input_dim() const { return input_dim_; }
  /// sum_k maps_per_window
  std::size_t pooled_dim() const;

  /// Valid-mode convolution and max-pooling over positions; one entry per
  /// (window asc, map asc).
  Value build_pooled(Tape& tape, const std::vector<Value>& columns) const;

  /// Same-length hidden sequence: position i holds every map's score at i,
  /// blocks ordered (window asc, map asc). Length equals the input length.
  std::vector<Value> build_hidden_sequence(
      Tape& tape, const std::vector<Value>& columns) const;

  /// Copy of one filter as a (k x dim) tensor, for the plain-path ops.
  Tensor filter(std::size_t window, std::size_t map) const;
  double bias(std::size_t window, std::size_t map) const;

 private:
  struct Bank {
    std::size_t window;
    Parameter* filters;  // maps x (window*dim)
    Parameter* biases;   // maps
  };
  Value window_scores(Tape& tape, const Bank& bank,
                      const std::vector<Value>& padded,
                      std::size_t position) const;

  ConvConfig cfg_;
  std::size_t input_dim_;
  std::vector<Bank> banks_;
};

}  // namespace renn
