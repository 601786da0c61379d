#pragma once

#include <memory>
#include <vector>

#include "renn/classifier.hpp"
#include "renn/combine.hpp"

namespace renn {

/// Normalized product of member distributions at inference time (members
/// were trained separately).
class EnsembleSystem : public Predictor {
 public:
  explicit EnsembleSystem(std::vector<Predictor*> members);

  const LabelSpace& labels() const override;
  ClassDistribution predict(const RelationMention& mention) override;

 private:
  std::vector<Predictor*> members_;
};

/// Majority vote over member predictions; exposes the full ballot. The
/// reported distribution is the winning member's (the tie-break member),
/// whose argmax is the voted class.
class VotingSystem : public Predictor {
 public:
  explicit VotingSystem(std::vector<Predictor*> members);

  const LabelSpace& labels() const override;
  VoteBallot ballots(const RelationMention& mention);
  std::size_t predict_class(const RelationMention& mention) override;
  ClassDistribution predict(const RelationMention& mention) override;

 private:
  std::vector<Predictor*> members_;
};

/// Inference-time product of a trained classifier with a trained log-linear
/// model (a hybrid assembled from separately trained members).
class ProductPredictor : public Predictor {
 public:
  ProductPredictor(Predictor& a, Predictor& b);

  const LabelSpace& labels() const override { return a_->labels(); }
  ClassDistribution predict(const RelationMention& mention) override;

 private:
  Predictor* a_;
  Predictor* b_;
};

/// The four-member voting composite over {network A, A x loglinear,
/// network B, B x loglinear}. All three inputs must already be trained;
/// the product members are assembled at inference time.
class HybridVotingSystem : public Predictor {
 public:
  HybridVotingSystem(Classifier& a, Classifier& b,
                     LogLinearClassifier& loglinear);
  // the voting member aims raw pointers at the product members
  HybridVotingSystem(const HybridVotingSystem&) = delete;
  HybridVotingSystem& operator=(const HybridVotingSystem&) = delete;

  const LabelSpace& labels() const override { return voting_->labels(); }
  std::size_t predict_class(const RelationMention& mention) override;
  ClassDistribution predict(const RelationMention& mention) override;
  VoteBallot ballots(const RelationMention& mention);

 private:
  ProductPredictor hybrid_a_;
  ProductPredictor hybrid_b_;
  std::unique_ptr<VotingSystem> voting_;
};

/// Voting system over {cnn, cnn x loglinear, rnn, rnn x loglinear}.
HybridVotingSystem build_hybrid_voting(Classifier& cnn, Classifier& rnn,
                                       LogLinearClassifier& loglinear);

}  // namespace renn
