#include "renn/systems.hpp"

#include "renn/errors.hpp"

namespace renn {

namespace {

void check_members(const std::vector<Predictor*>& members) {
  if (members.empty()) throw ConfigError("combination system with no members");
  for (const Predictor* m : members) {
    if (!m) throw ConfigError("combination system with a null member");
    if (!(m->labels() == members[0]->labels())) {
      throw ValidationError("combination members disagree on the label space");
    }
  }
}

}  // namespace

EnsembleSystem::EnsembleSystem(std::vector<Predictor*> members)
    : members_(std::move(members)) {
  check_members(members_);
}

const LabelSpace& EnsembleSystem::labels() const {
  return members_[0]->labels();
}

ClassDistribution EnsembleSystem::predict(const RelationMention& mention) {
  std::vector<ClassDistribution> dists;
  dists.reserve(members_.size());
  for (Predictor* m : members_) dists.push_back(m->predict(mention));
  return ensemble(dists);
}

VotingSystem::VotingSystem(std::vector<Predictor*> members)
    : members_(std::move(members)) {
  check_members(members_);
}

const LabelSpace& VotingSystem::labels() const {
  return members_[0]->labels();
}

VoteBallot VotingSystem::ballots(const RelationMention& mention) {
  VoteBallot out;
  out.reserve(members_.size());
  for (Predictor* m : members_) {
    BallotEntry e;
    e.dist = m->predict(mention);
    e.predicted = e.dist.argmax();
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t VotingSystem::predict_class(const RelationMention& mention) {
  return majority_vote(ballots(mention));
}

ClassDistribution VotingSystem::predict(const RelationMention& mention) {
  VoteBallot ballot = ballots(mention);
  std::size_t winner = majority_vote(ballot);
  // report the winning member's distribution
  const BallotEntry* best = nullptr;
  for (const BallotEntry& e : ballot) {
    if (e.predicted != winner) continue;
    if (!best || e.dist.probs[winner] > best->dist.probs[winner]) best = &e;
  }
  if (!best) best = &ballot.front();  // unreachable: winner got >= 1 vote
  return best->dist;
}

ProductPredictor::ProductPredictor(Predictor& a, Predictor& b)
    : a_(&a), b_(&b) {
  if (!(a.labels() == b.labels())) {
    throw ValidationError("product members disagree on the label space");
  }
}

ClassDistribution ProductPredictor::predict(const RelationMention& mention) {
  return ensemble(a_->predict(mention), b_->predict(mention));
}

HybridVotingSystem::HybridVotingSystem(Classifier& a, Classifier& b,
                                       LogLinearClassifier& loglinear)
    : hybrid_a_(a, loglinear), hybrid_b_(b, loglinear) {
  voting_ = std::make_unique<VotingSystem>(
      std::vector<Predictor*>{&a, &hybrid_a_, &b, &hybrid_b_});
}

std::size_t HybridVotingSystem::predict_class(const RelationMention& m) {
  return voting_->predict_class(m);
}

ClassDistribution HybridVotingSystem::predict(const RelationMention& m) {
  return voting_->predict(m);
}

VoteBallot HybridVotingSystem::ballots(const RelationMention& m) {
  return voting_->ballots(m);
}

HybridVotingSystem build_hybrid_voting(Classifier& cnn, Classifier& rnn,
                                       LogLinearClassifier& loglinear) {
  return HybridVotingSystem(cnn, rnn, loglinear);
}

}  // namespace renn
