#pragma once

#include <vector>

#include "renn/distribution.hpp"

namespace renn {

/// Normalized elementwise product of two distributions. Throws
/// DegenerateProductError when the supports are disjoint (zero mass).
ClassDistribution ensemble(const ClassDistribution& a,
                           const ClassDistribution& b);

/// n-way normalized product (the same operation the hybrid models use).
ClassDistribution ensemble(const std::vector<ClassDistribution>& members);

/// One model's vote: its predicted class plus its full distribution.
struct BallotEntry {
  std::size_t predicted = 0;
  ClassDistribution dist;
};

using VoteBallot = std::vector<BallotEntry>;

/// Majority vote. Among classes tied on vote count, the class whose maximum
/// ballot probability (over the models that predicted it) is highest wins;
/// a residual exact tie goes to the lowest class index.
std::size_t majority_vote(const VoteBallot& ballots);

}  // namespace renn
