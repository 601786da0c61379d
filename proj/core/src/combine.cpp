#include "renn/combine.hpp"

#include <algorithm>

#include "renn/errors.hpp"

namespace renn {

ClassDistribution ensemble(const std::vector<ClassDistribution>& members) {
  if (members.empty()) throw DimensionError("ensemble: no distributions");
  std::size_t classes = members[0].size();
  ClassDistribution out;
  out.probs.assign(classes, 1.0);
  for (const ClassDistribution& d : members) {
    if (d.size() != classes) {
      throw DimensionError("ensemble: class count mismatch");
    }
    for (std::size_t i = 0; i < classes; ++i) out.probs[i] *= d.probs[i];
  }
  double z = 0.0;
  for (double p : out.probs) z += p;
  if (!(z > 0.0)) {
    throw DegenerateProductError(
        "ensemble: distributions have disjoint support");
  }
  for (double& p : out.probs) p /= z;
  return out;
}

ClassDistribution ensemble(const ClassDistribution& a,
                           const ClassDistribution& b) {
  return ensemble(std::vector<ClassDistribution>{a, b});
}

std::size_t majority_vote(const VoteBallot& ballots) {
  if (ballots.empty()) throw DimensionError("majority_vote: empty ballot");
  std::size_t classes = 0;
  for (const BallotEntry& e : ballots) {
    classes = std::max(classes, e.predicted + 1);
  }
  std::vector<std::size_t> votes(classes, 0);
  std::vector<double> best_prob(classes, -1.0);
  for (const BallotEntry& e : ballots) {
    votes[e.predicted] += 1;
    double p = e.dist.probs.empty() ? 0.0 : e.dist.probs[e.predicted];
    best_prob[e.predicted] = std::max(best_prob[e.predicted], p);
  }
  std::size_t top = *std::max_element(votes.begin(), votes.end());
  std::size_t winner = classes;  // sentinel
  for (std::size_t c = 0; c < classes; ++c) {
    if (votes[c] != top) continue;
    if (winner == classes || best_prob[c] > best_prob[winner]) winner = c;
    // equal max probabilities keep the lower class index
  }
  return winner;
}

}  // namespace renn
