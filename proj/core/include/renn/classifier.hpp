#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/cnn.hpp"
#include "renn/corpus.hpp"
#include "renn/distribution.hpp"
#include "renn/dropout.hpp"
#include "renn/featurize.hpp"
#include "renn/loglinear.hpp"
#include "renn/mlp.hpp"
#include "renn/rnn.hpp"

namespace renn {

/// Anything that can score a relation mention.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual const LabelSpace& labels() const = 0;
  virtual ClassDistribution predict(const RelationMention& mention) = 0;
  virtual std::size_t predict_class(const RelationMention& mention) {
    return predict(mention).argmax();
  }
};

/// A trainable model: builds its class distribution as a tape graph so the
/// trainer can backpropagate through it, exposes its parameters in a fixed
/// order, and can describe itself for checkpointing.
class Classifier : public Predictor {
 public:
  virtual std::vector<Parameter*> parameters() = 0;
  virtual Value build_distribution(Tape& tape, const RelationMention& mention,
                                   RunMode mode, Rng* dropout_rng) = 0;
  /// Additional loss terms (L2 penalties); nullopt when none.
  virtual std::optional<Value> build_penalty(Tape& tape) {
    (void)tape;
    return std::nullopt;
  }
  virtual std::string kind() const = 0;
  /// JSON object describing how to rebuild this model (minus weights).
  virtual std::string meta_json() const = 0;

  ClassDistribution predict(const RelationMention& mention) override;
};

/// Reconstruction payload for the embedding tables.
struct TablesSnapshot {
  TableConfig config;
  std::vector<std::string> words, entities, chunks, dep_labels;
};

/// Shared base for the neural models: embedding tables, the configured
/// sentence view (with optional DEP->SEQ fallback for disconnected graphs),
/// and fixed-length featurization.
class NeuralClassifierBase : public Classifier {
 public:
  const LabelSpace& labels() const override { return labels_; }
  std::vector<Parameter*> parameters() override { return params_.pointers(); }

  ViewKind view() const { return view_; }
  std::size_t padded_length() const { return n_; }
  EmbeddingTables& tables() { return tables_; }

  InputMatrix encode(const RelationMention& mention) const;

 protected:
  NeuralClassifierBase(const std::vector<RelationMention>& corpus,
                       LabelSpace labels, ViewKind view, bool fallback_seq,
                       std::size_t n, const TableConfig& table_config,
                       const PretrainedEmbeddings* pretrained, Rng& rng);
  NeuralClassifierBase(LabelSpace labels, ViewKind view, bool fallback_seq,
                       std::size_t n, const TablesSnapshot& snapshot);

  std::vector<Value> graph_columns(Tape& tape, const InputMatrix& x) {
    return input_columns(tape, tables_, x);
  }
  Value masked_dropout(Tape& tape, Value rep, std::size_t dim, double rate,
                       RunMode mode, Rng* dropout_rng) const;

  ModelParameters params_;
  EmbeddingTables tables_;
  LabelSpace labels_;
  ViewKind view_;
  bool fallback_seq_;
  std::size_t n_;
};

/// Convolutional relation classifier: filter banks, valid-mode convolution,
/// max-pooling, dropout, MLP + softmax.
class CnnClassifier : public NeuralClassifierBase {
 public:
  CnnClassifier(const std::vector<RelationMention>& corpus, LabelSpace labels,
                ViewKind view, bool fallback_seq, std::size_t n,
                const TableConfig& table_config, ConvConfig config,
                const PretrainedEmbeddings* pretrained, Rng& rng);
  CnnClassifier(LabelSpace labels, ViewKind view, bool fallback_seq,
                std::size_t n, const TablesSnapshot& snapshot,
                ConvConfig config);

  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::string kind() const override { return "cnn"; }
  std::string meta_json() const override;

  CnnModel& cnn() { return cnn_; }
  MlpHead& head() { return head_; }

 private:
  ConvConfig cfg_;
  CnnModel cnn_;
  MlpHead head_;
};

/// Recurrent relation classifier: FF or GRU cells, one of three directions,
/// HEAD or MAX representation, dropout, MLP + softmax.
class RnnClassifier : public NeuralClassifierBase {
 public:
  RnnClassifier(const std::vector<RelationMention>& corpus, LabelSpace labels,
                ViewKind view, bool fallback_seq, std::size_t n,
                const TableConfig& table_config, RnnConfig config,
                const PretrainedEmbeddings* pretrained, Rng& rng);
  RnnClassifier(LabelSpace labels, ViewKind view, bool fallback_seq,
                std::size_t n, const TablesSnapshot& snapshot,
                RnnConfig config);

  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::string kind() const override { return "rnn"; }
  std::string meta_json() const override;

  RnnModel& rnn() { return rnn_; }
  MlpHead& head() { return head_; }

 private:
  RnnConfig cfg_;
  RnnModel rnn_;
  MlpHead head_;
};

/// Stacked model: the RNN's positionwise hidden sequence becomes the CNN's
/// input matrix (valid-mode convolution + pooling), one softmax head,
/// trained end to end.
class StackRnnCnnClassifier : public NeuralClassifierBase {
 public:
  StackRnnCnnClassifier(const std::vector<RelationMention>& corpus,
                        LabelSpace labels, ViewKind view, bool fallback_seq,
                        std::size_t n, const TableConfig& table_config,
                        RnnConfig rnn_config, ConvConfig cnn_config,
                        const PretrainedEmbeddings* pretrained, Rng& rng);
  StackRnnCnnClassifier(LabelSpace labels, ViewKind view, bool fallback_seq,
                        std::size_t n, const TablesSnapshot& snapshot,
                        RnnConfig rnn_config, ConvConfig cnn_config);

  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::string kind() const override { return "stack-rnn-cnn"; }
  std::string meta_json() const override;

  RnnModel& rnn() { return rnn_; }
  CnnModel& cnn() { return cnn_; }
  MlpHead& head() { return head_; }

 private:
  RnnConfig rnn_cfg_;
  ConvConfig cnn_cfg_;
  RnnModel rnn_;
  CnnModel cnn_;
  MlpHead head_;
};

/// Stacked model: the CNN's same-length hidden sequence (scores re-grouped
/// by position) feeds the RNN; heads carry through positionally.
class StackCnnRnnClassifier : public NeuralClassifierBase {
 public:
  StackCnnRnnClassifier(const std::vector<RelationMention>& corpus,
                        LabelSpace labels, ViewKind view, bool fallback_seq,
                        std::size_t n, const TableConfig& table_config,
                        ConvConfig cnn_config, RnnConfig rnn_config,
                        const PretrainedEmbeddings* pretrained, Rng& rng);
  StackCnnRnnClassifier(LabelSpace labels, ViewKind view, bool fallback_seq,
                        std::size_t n, const TablesSnapshot& snapshot,
                        ConvConfig cnn_config, RnnConfig rnn_config);

  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::string kind() const override { return "stack-cnn-rnn"; }
  std::string meta_json() const override;

  CnnModel& cnn() { return cnn_; }
  RnnModel& rnn() { return rnn_; }
  MlpHead& head() { return head_; }

 private:
  ConvConfig cnn_cfg_;
  RnnConfig rnn_cfg_;
  CnnModel cnn_;
  RnnModel rnn_;
  MlpHead head_;
};

/// Sparse-feature softmax baseline over the documented template set.
class LogLinearClassifier : public Classifier {
 public:
  LogLinearClassifier(const std::vector<RelationMention>& corpus,
                      LabelSpace labels, ViewKind view, bool fallback_seq,
                      double l2);
  LogLinearClassifier(LabelSpace labels, ViewKind view, bool fallback_seq,
                      double l2, std::vector<std::string> feature_names);

  const LabelSpace& labels() const override { return labels_; }
  std::vector<Parameter*> parameters() override { return params_.pointers(); }
  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::optional<Value> build_penalty(Tape& tape) override;
  std::string kind() const override { return "loglinear"; }
  std::string meta_json() const override;

  SparseFeatureVector features(const RelationMention& mention);
  LogLinearModel& model() { return model_; }
  FeatureDict& dict() { return dict_; }

 private:
  SentenceView view_of(const RelationMention& mention) const;

  ModelParameters params_;
  LabelSpace labels_;
  ViewKind view_;
  bool fallback_seq_;
  FeatureDict dict_;
  LogLinearModel model_;
};

/// Product model: a neural network member and a log-linear member whose
/// distributions are multiplied and renormalized; both sets of parameters
/// are learnt jointly against the product's likelihood.
class HybridClassifier : public Classifier {
 public:
  HybridClassifier(std::unique_ptr<Classifier> network,
                   std::unique_ptr<LogLinearClassifier> loglinear);

  const LabelSpace& labels() const override { return network_->labels(); }
  std::vector<Parameter*> parameters() override;
  Value build_distribution(Tape& tape, const RelationMention& mention,
                           RunMode mode, Rng* dropout_rng) override;
  std::optional<Value> build_penalty(Tape& tape) override;
  std::string kind() const override { return "hybrid"; }
  std::string meta_json() const override;

  Classifier& network() { return *network_; }
  LogLinearClassifier& loglinear() { return *loglinear_; }

 private:
  std::unique_ptr<Classifier> network_;
  std::unique_ptr<LogLinearClassifier> loglinear_;
};

}  // namespace renn
