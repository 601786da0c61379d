#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/corpus.hpp"
#include "renn/distribution.hpp"
#include "renn/parameters.hpp"
#include "renn/sparse.hpp"

namespace renn {

/// Interned feature-name dictionary. Grows while unfrozen (the training
/// feature pass); frozen at inference, when unseen names simply vanish.
class FeatureDict {
 public:
  std::uint32_t intern(const std::string& name);
  std::optional<std::uint32_t> lookup(const std::string& name) const;
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool frozen() const { return frozen_; }
  void freeze() { frozen_ = true; }

  static FeatureDict from_names(std::vector<std::string> names);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
  bool frozen_ = false;
};

/// Indicator feature templates over a (mention, view) pair:
///   HM1/HM2/HM12      lowercased head words, single and combined
///   ET1/ET2/ET12      head entity types, single and combined
///   WB_*              bag of lowercased words strictly between the heads
///                     (WB_EMPTY when the span is empty)
///   WBF/WBL           first/last word between the heads
///   DIST              token-count bucket between heads: 0,1,2,3-5,6+
///   CPATH             chunk phrase types (B-* labels) between the heads
///   DPATH             dependency relation labels along the heads' shortest
///                     path (DPATH=NONE when disconnected)
///   DPLEN             number of mention tokens on that path
/// Word/span templates read the view's token subsequence; the dependency
/// templates read the mention's full graph. Deterministic: identical
/// mentions produce identical vectors, entries sorted by feature id.
SparseFeatureVector extract_features(const RelationMention& mention,
                                     const SentenceView& view,
                                     FeatureDict& dict);

/// The template names only (what extract_features interns), for tests.
std::vector<std::string> feature_names(const RelationMention& mention,
                                       const SentenceView& view);

/// Sparse-feature softmax classifier: softmax(W f + b). Feature ids at or
/// beyond W's width contribute zero.
class LogLinearModel {
 public:
  LogLinearModel(ModelParameters& params, const std::string& prefix,
                 std::size_t classes, std::size_t feature_count,
                 double l2 = 0.0);

  std::size_t classes() const { return classes_; }
  std::size_t feature_count() const { return weights_->value.cols(); }
  double l2() const { return l2_; }

  ClassDistribution forward(const SparseFeatureVector& features) const;
  Value build_distribution(Tape& tape,
                           const SparseFeatureVector& features) const;
  /// l2 * sum of squared weights, when l2 > 0.
  std::optional<Value> build_penalty(Tape& tape) const;

  Parameter& weights() { return *weights_; }
  Parameter& bias() { return *bias_; }

 private:
  std::size_t classes_;
  double l2_;
  Parameter* weights_;  // classes x features
  Parameter* bias_;     // classes
};

}  // namespace renn
