#include "renn/tensor.hpp"

#include <cmath>
#include <numeric>

#include "renn/errors.hpp"
#include "renn/rng.hpp"

namespace renn {

namespace {
std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}
}  // namespace

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  std::vector<double> data(shape_product(shape), 0.0);
  return Tensor(std::move(shape), std::move(data));
}

Tensor Tensor::vector(std::vector<double> values) {
  std::vector<std::size_t> shape{values.size()};
  return Tensor(std::move(shape), std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw DimensionError("matrix: " + std::to_string(values.size()) +
                         " values for shape " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::scalar(double v) { return Tensor({1}, {v}); }

Tensor Tensor::random_uniform(std::vector<std::size_t> shape, double lo,
                              double hi, Rng& rng) {
  Tensor t = zeros(std::move(shape));
  for (double& v : t.data_) v = rng.uniform(lo, hi);
  return t;
}

std::size_t Tensor::rows() const {
  if (rank() != 2) throw DimensionError("rows: tensor is not rank 2");
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw DimensionError("cols: tensor is not rank 2");
  return shape_[1];
}

double& Tensor::at(std::size_t r, std::size_t c) {
  return data_[r * cols() + c];
}

double Tensor::at(std::size_t r, std::size_t c) const {
  return data_[r * cols() + c];
}

void Tensor::fill(double v) {
  for (double& x : data_) x = v;
}

bool Tensor::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

std::string Tensor::shape_string() const {
  std::string s;
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape_[i]);
  }
  return s.empty() ? "scalar" : s;
}

void Tensor::append_rows(std::size_t count) {
  if (rank() != 2) throw DimensionError("append_rows: tensor is not rank 2");
  shape_[0] += count;
  data_.resize(shape_[0] * shape_[1], 0.0);
}

}  // namespace renn
