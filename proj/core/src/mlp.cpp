#include "renn/mlp.hpp"

#include <cmath>

namespace renn {

Tensor glorot_uniform(std::size_t rows, std::size_t cols, Rng& rng) {
  double r = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return Tensor::random_uniform({rows, cols}, -r, r, rng);
}

MlpHead::MlpHead(ModelParameters& params, const std::string& prefix,
                 std::size_t input_dim,
                 const std::vector<std::size_t>& hidden,
                 std::size_t output_dim, Rng& rng)
    : input_dim_(input_dim), output_dim_(output_dim) {
  std::size_t in = input_dim;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    std::string name = prefix + ".h" + std::to_string(i);
    Layer layer;
    layer.weight = &params.add(name + ".W", glorot_uniform(hidden[i], in, rng),
                               /*max_norm_target=*/true);
    layer.bias = &params.add(name + ".b", Tensor::zeros({hidden[i]}));
    hidden_.push_back(layer);
    in = hidden[i];
  }
  out_.weight = &params.add(prefix + ".out.W",
                            glorot_uniform(output_dim, in, rng),
                            /*max_norm_target=*/true);
  out_.bias = &params.add(prefix + ".out.b", Tensor::zeros({output_dim}));
}

Value MlpHead::build(Tape& tape, Value input) const {
  Value x = input;
  for (const Layer& layer : hidden_) {
    x = tape.tanh(tape.affine(tape.param(*layer.weight), x,
                              tape.param(*layer.bias)));
  }
  return tape.affine(tape.param(*out_.weight), x, tape.param(*out_.bias));
}

}  // namespace renn
