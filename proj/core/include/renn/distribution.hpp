#pragma once

#include <cstddef>
#include <vector>

namespace renn {

/// Normalized probability vector over the relation classes. The universal
/// model output.
struct ClassDistribution {
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  double operator[](std::size_t i) const { return probs[i]; }

  /// First maximal index.
  std::size_t argmax() const;
  double max_prob() const;

  /// Entries nonnegative and summing to 1 within `tol`.
  bool valid(double tol = 1e-6) const;
};

/// Numerically stable softmax (max-shift). Entries are strictly positive;
/// exponentials are floored at 1e-300 so extreme logits cannot produce an
/// exact zero.
ClassDistribution softmax(const std::vector<double>& logits);

ClassDistribution uniform_distribution(std::size_t classes);

}  // namespace renn
