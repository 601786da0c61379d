#pragma once

#include <memory>
#include <string>
#include <vector>

#include "renn/classifier.hpp"
#include "renn/config.hpp"
#include "renn/trainer.hpp"

namespace renn {

/// Everything needed to construct a fresh model (parsed from a Config).
struct ModelSpec {
  std::string kind = "cnn";  // cnn | rnn | stack-rnn-cnn | stack-cnn-rnn |
                             // loglinear | hybrid
  ViewKind view = ViewKind::kSeq;
  bool fallback_seq = false;
  std::size_t max_len = 0;  // 0: derive from the corpora
  TableConfig tables;
  ConvConfig cnn;
  RnnConfig rnn;
  std::string hybrid_network = "cnn";  // network member of a hybrid
  double loglinear_l2 = 0.0;
  double dropout_rate = 0.5;
  std::string embeddings_path;
  std::string negative_label = "NONE";
};

ModelSpec spec_from_config(const Config& config);
TrainConfig train_config_from(const Config& config);

/// Longest sentence over the given corpora (the padded length when the
/// config does not pin one).
std::size_t resolve_max_len(
    const ModelSpec& spec,
    const std::vector<const std::vector<RelationMention>*>& corpora);

/// Builds a fresh model over the training corpus (vocabulary source). Extra
/// corpora (dev/test) only widen the padded length.
std::unique_ptr<Classifier> build_classifier(
    const ModelSpec& spec, const std::vector<RelationMention>& train,
    const std::vector<const std::vector<RelationMention>*>& extra_corpora,
    Rng& rng);

/// Checkpoint round trip.
void save_classifier(const std::string& path, Classifier& model);
std::unique_ptr<Classifier> load_classifier(const std::string& path);

}  // namespace renn
