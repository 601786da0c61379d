#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace renn {

/// Sparse feature vector: (interned feature id, value) pairs sorted by id.
/// Indicator features carry value 1.0.
struct SparseFeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

}  // namespace renn
