#include "renn/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "renn/errors.hpp"

namespace renn {

std::size_t ClassDistribution::argmax() const {
  if (probs.empty()) throw DimensionError("argmax of empty distribution");
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

double ClassDistribution::max_prob() const { return probs[argmax()]; }

bool ClassDistribution::valid(double tol) const {
  if (probs.empty()) return false;
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

ClassDistribution softmax(const std::vector<double>& logits) {
  if (logits.empty()) throw DimensionError("softmax of empty vector");
  double mx = *std::max_element(logits.begin(), logits.end());
  if (!std::isfinite(mx)) throw NumericFault("softmax: non-finite input");
  ClassDistribution out;
  out.probs.resize(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    double e = std::exp(logits[i] - mx);
    if (e < 1e-300) e = 1e-300;
    out.probs[i] = e;
    z += e;
  }
  for (double& p : out.probs) p /= z;
  return out;
}

ClassDistribution uniform_distribution(std::size_t classes) {
  ClassDistribution d;
  d.probs.assign(classes, 1.0 / static_cast<double>(classes));
  return d;
}

}  // namespace renn
