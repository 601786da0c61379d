#include "renn/dropout.hpp"

#include "renn/errors.hpp"

namespace renn {

std::vector<double> dropout_mask(std::size_t len, double rate, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw ConfigError("dropout rate must be in [0, 1)");
  }
  std::vector<double> mask(len, 1.0);
  if (rate == 0.0) return mask;
  double keep_scale = 1.0 / (1.0 - rate);
  for (double& m : mask) m = rng.bernoulli(rate) ? 0.0 : keep_scale;
  return mask;
}

std::vector<double> apply_dropout(const std::vector<double>& v, double rate,
                                  RunMode mode, Rng& rng) {
  if (mode == RunMode::kEval || rate == 0.0) {
    if (rate < 0.0 || rate >= 1.0) {
      throw ConfigError("dropout rate must be in [0, 1)");
    }
    return v;
  }
  std::vector<double> mask = dropout_mask(v.size(), rate, rng);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * mask[i];
  return out;
}

}  // namespace renn
