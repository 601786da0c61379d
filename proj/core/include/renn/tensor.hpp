#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace renn {

class Rng;

/// Dense tensor of doubles, row-major. Rank 1 and 2 cover everything this
/// library needs; higher ranks are not supported.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<std::size_t> shape);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);
  static Tensor scalar(double v);
  /// Entries uniform in [lo, hi).
  static Tensor random_uniform(std::vector<std::size_t> shape, double lo,
                               double hi, Rng& rng);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  std::size_t rows() const;
  std::size_t cols() const;

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c);
  double at(std::size_t r, std::size_t c) const;

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  void fill(double v);
  bool all_finite() const;
  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  /// "3x4" style, for messages.
  std::string shape_string() const;

  /// Appends `count` rows to a rank-2 tensor, zero filled.
  void append_rows(std::size_t count);

 private:
  Tensor(std::vector<std::size_t> shape, std::vector<double> data)
      : shape_(std::move(shape)), data_(std::move(data)) {}

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

}  // namespace renn
