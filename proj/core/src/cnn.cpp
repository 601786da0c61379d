#include "renn/cnn.hpp"

#include <algorithm>
#include <cmath>

#include "renn/errors.hpp"

namespace renn {

std::vector<double> conv_scores(const std::vector<Column>& X,
                                const Tensor& filter, double bias,
                                ConvMode mode) {
  if (filter.rank() != 2) {
    throw DimensionError("conv_scores: filter must be rank 2");
  }
  std::size_t k = filter.rows();
  std::size_t dim = filter.cols();
  if (k == 0) throw DimensionError("conv_scores: empty filter");
  for (const Column& col : X) {
    if (col.size() != dim) {
      throw DimensionError("conv_scores: column dim " +
                           std::to_string(col.size()) + " vs filter dim " +
                           std::to_string(dim));
    }
  }

  std::size_t n = X.size();
  std::size_t pad_left = 0, pad_right = 0;
  if (mode == ConvMode::kSame) {
    pad_left = k / 2;
    pad_right = k - 1 - pad_left;
  } else if (n < k) {
    throw DimensionError("conv_scores: sequence length " + std::to_string(n) +
                         " shorter than window " + std::to_string(k));
  }

  std::size_t padded = n + pad_left + pad_right;
  std::vector<double> out;
  out.reserve(padded - k + 1);
  for (std::size_t i = 0; i + k <= padded; ++i) {
    double acc = bias;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t p = i + j;
      if (p < pad_left || p >= pad_left + n) continue;  // zero column
      const Column& col = X[p - pad_left];
      const double* f = filter.data() + j * dim;
      for (std::size_t d = 0; d < dim; ++d) acc += f[d] * col[d];
    }
    out.push_back(std::tanh(acc));
  }
  return out;
}

double max_pool(const std::vector<double>& scores) {
  if (scores.empty()) throw DimensionError("max_pool: empty score sequence");
  return *std::max_element(scores.begin(), scores.end());
}

namespace {

const ConvConfig& validated(const ConvConfig& config) {
  if (config.window_sizes.empty()) {
    throw ConfigError("cnn: no window sizes");
  }
  for (std::size_t i = 0; i < config.window_sizes.size(); ++i) {
    if (config.window_sizes[i] < 1) throw ConfigError("cnn: window size 0");
    if (i > 0 && config.window_sizes[i] <= config.window_sizes[i - 1]) {
      throw ConfigError("cnn: window sizes must be strictly ascending");
    }
  }
  if (config.maps_per_window < 1) throw ConfigError("cnn: no feature maps");
  return config;
}

}  // namespace

CnnModel::CnnModel(ModelParameters& params, const std::string& prefix,
                   const ConvConfig& config, std::size_t input_dim, Rng& rng)
    : cfg_(validated(config)), input_dim_(input_dim) {
  for (std::size_t k : cfg_.window_sizes) {
    Bank bank;
    bank.window = k;
    std::string name = prefix + ".w" + std::to_string(k);
    bank.filters = &params.add(
        name + ".F", glorot_uniform(cfg_.maps_per_window, k * input_dim, rng));
    bank.biases =
        &params.add(name + ".b", Tensor::zeros({cfg_.maps_per_window}));
    banks_.push_back(bank);
  }
}

std::size_t CnnModel::pooled_dim() const {
  return cfg_.window_sizes.size() * cfg_.maps_per_window;
}

Value CnnModel::build_pooled(Tape& tape,
                             const std::vector<Value>& columns) const {
  std::size_t n = columns.size();
  std::vector<Value> per_window;
  per_window.reserve(banks_.size());
  for (const Bank& bank : banks_) {
    if (n < bank.window) {
      throw DimensionError("cnn: sequence length " + std::to_string(n) +
                           " shorter than window " +
                           std::to_string(bank.window));
    }
    std::vector<Value> position_scores;
    position_scores.reserve(n - bank.window + 1);
    for (std::size_t i = 0; i + bank.window <= n; ++i) {
      position_scores.push_back(window_scores(tape, bank, columns, i));
    }
    per_window.push_back(tape.max_elementwise(position_scores));
  }
  return tape.concat(per_window);
}

Value CnnModel::window_scores(Tape& tape, const Bank& bank,
                              const std::vector<Value>& cols,
                              std::size_t position) const {
  std::vector<Value> window(cols.begin() + static_cast<long>(position),
                            cols.begin() +
                                static_cast<long>(position + bank.window));
  Value flat = tape.concat(window);
  return tape.tanh(tape.affine(tape.param(*bank.filters), flat,
                               tape.param(*bank.biases)));
}

std::vector<Value> CnnModel::build_hidden_sequence(
    Tape& tape, const std::vector<Value>& columns) const {
  std::size_t n = columns.size();
  Value zero_col = tape.constant(Tensor::zeros({input_dim_}));
  std::vector<Value> rows(n);
  std::vector<std::vector<Value>> per_position(n);
  for (const Bank& bank : banks_) {
    std::size_t pad_left = bank.window / 2;
    std::size_t pad_right = bank.window - 1 - pad_left;
    std::vector<Value> padded;
    padded.reserve(n + pad_left + pad_right);
    for (std::size_t i = 0; i < pad_left; ++i) padded.push_back(zero_col);
    padded.insert(padded.end(), columns.begin(), columns.end());
    for (std::size_t i = 0; i < pad_right; ++i) padded.push_back(zero_col);
    for (std::size_t i = 0; i < n; ++i) {
      per_position[i].push_back(window_scores(tape, bank, padded, i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) rows[i] = tape.concat(per_position[i]);
  return rows;
}

Tensor CnnModel::filter(std::size_t window, std::size_t map) const {
  for (const Bank& bank : banks_) {
    if (bank.window != window) continue;
    std::size_t w = bank.window * input_dim_;
    const double* row = bank.filters->value.data() + map * w;
    return Tensor::matrix(bank.window, input_dim_,
                          std::vector<double>(row, row + w));
  }
  throw ConfigError("cnn has no window of size " + std::to_string(window));
}

double CnnModel::bias(std::size_t window, std::size_t map) const {
  for (const Bank& bank : banks_) {
    if (bank.window == window) return bank.biases->value[map];
  }
  throw ConfigError("cnn has no window of size " + std::to_string(window));
}

}  // namespace renn
