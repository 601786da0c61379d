#include "renn/classifier.hpp"

#include <nlohmann/json.hpp>

#include "renn/errors.hpp"

namespace renn {

using nlohmann::json;

ClassDistribution Classifier::predict(const RelationMention& mention) {
  Tape tape;
  Value dist = build_distribution(tape, mention, RunMode::kEval, nullptr);
  ClassDistribution out;
  out.probs = tape.value(dist).values();
  return out;
}

namespace {

json labels_to_json(const LabelSpace& labels) {
  json j;
  j["classes"] = labels.classes;
  if (labels.negative_class) {
    j["negative"] = labels.classes[*labels.negative_class];
  } else {
    j["negative"] = nullptr;
  }
  return j;
}

json tables_to_json(const EmbeddingTables& tables) {
  json j;
  j["word_dim"] = tables.config().word_dim;
  j["dist_dim"] = tables.config().dist_dim;
  j["label_dim"] = tables.config().label_dim;
  j["max_len"] = tables.config().max_len;
  j["words"] = tables.words();
  j["entities"] = tables.entity_labels();
  j["chunks"] = tables.chunk_labels();
  j["dep_labels"] = tables.dep_labels();
  return j;
}

json cnn_to_json(const ConvConfig& c) {
  json j;
  j["windows"] = c.window_sizes;
  j["maps"] = c.maps_per_window;
  j["mlp_hidden"] = c.mlp_hidden;
  j["dropout"] = c.dropout_rate;
  j["classes"] = c.classes;
  return j;
}

json rnn_to_json(const RnnConfig& c) {
  json j;
  j["cell"] = to_string(c.cell);
  j["direction"] = to_string(c.direction);
  j["strategy"] = to_string(c.strategy);
  j["hidden"] = c.hidden;
  j["mlp_hidden"] = c.mlp_hidden;
  j["dropout"] = c.dropout_rate;
  j["classes"] = c.classes;
  j["gate_biases"] = c.gate_biases;
  return j;
}

json base_meta(const std::string& kind, const LabelSpace& labels,
               ViewKind view, bool fallback, std::size_t n) {
  json j;
  j["kind"] = kind;
  j["labels"] = labels_to_json(labels);
  j["view"] = to_string(view);
  j["fallback_seq"] = fallback;
  j["n"] = n;
  return j;
}

}  // namespace

NeuralClassifierBase::NeuralClassifierBase(
    const std::vector<RelationMention>& corpus, LabelSpace labels,
    ViewKind view, bool fallback_seq, std::size_t n,
    const TableConfig& table_config, const PretrainedEmbeddings* pretrained,
    Rng& rng)
    : params_(),
      tables_(params_, "tables",
              [&] {
                TableConfig cfg = table_config;
                cfg.max_len = n;
                return cfg;
              }(),
              corpus, pretrained, rng),
      labels_(std::move(labels)),
      view_(view),
      fallback_seq_(fallback_seq),
      n_(n) {
  tables_.freeze();
}

NeuralClassifierBase::NeuralClassifierBase(LabelSpace labels, ViewKind view,
                                           bool fallback_seq, std::size_t n,
                                           const TablesSnapshot& snapshot)
    : params_(),
      tables_(params_, "tables",
              [&] {
                TableConfig cfg = snapshot.config;
                cfg.max_len = n;
                return cfg;
              }(),
              snapshot.words, snapshot.entities, snapshot.chunks,
              snapshot.dep_labels),
      labels_(std::move(labels)),
      view_(view),
      fallback_seq_(fallback_seq),
      n_(n) {}

InputMatrix NeuralClassifierBase::encode(const RelationMention& m) const {
  SentenceView view;
  if (view_ == ViewKind::kDep && fallback_seq_) {
    try {
      view = build_view(m, ViewKind::kDep);
    } catch (const NoPathError&) {
      view = build_view(m, ViewKind::kSeq);
    }
  } else {
    view = build_view(m, view_);
  }
  return featurize(m, view, tables_, n_);
}

Value NeuralClassifierBase::masked_dropout(Tape& tape, Value rep,
                                           std::size_t dim, double rate,
                                           RunMode mode,
                                           Rng* dropout_rng) const {
  if (mode != RunMode::kTrain || rate <= 0.0) return rep;
  if (dropout_rng == nullptr) {
    throw ConfigError("training-mode dropout needs an rng");
  }
  return tape.mul(rep, tape.constant_vector(dropout_mask(dim, rate,
                                                         *dropout_rng)));
}

// ---------------------------------------------------------------------------
// CNN

CnnClassifier::CnnClassifier(const std::vector<RelationMention>& corpus,
                             LabelSpace labels, ViewKind view,
                             bool fallback_seq, std::size_t n,
                             const TableConfig& table_config, ConvConfig config,
                             const PretrainedEmbeddings* pretrained, Rng& rng)
    : NeuralClassifierBase(corpus, std::move(labels), view, fallback_seq, n,
                           table_config, pretrained, rng),
      cfg_((config.classes = labels_.size(), config)),
      cnn_(params_, "cnn", cfg_, tables_.column_dim(), rng),
      head_(params_, "head", cnn_.pooled_dim(), cfg_.mlp_hidden,
            labels_.size(), rng) {}

CnnClassifier::CnnClassifier(LabelSpace labels, ViewKind view,
                             bool fallback_seq, std::size_t n,
                             const TablesSnapshot& snapshot, ConvConfig config)
    : NeuralClassifierBase(std::move(labels), view, fallback_seq, n, snapshot),
      cfg_((config.classes = labels_.size(), config)),
      cnn_([&]() -> CnnModel {
        Rng dummy(0);
        return CnnModel(params_, "cnn", cfg_, tables_.column_dim(), dummy);
      }()),
      head_([&]() -> MlpHead {
        Rng dummy(0);
        return MlpHead(params_, "head", cnn_.pooled_dim(), cfg_.mlp_hidden,
                       labels_.size(), dummy);
      }()) {}

Value CnnClassifier::build_distribution(Tape& tape, const RelationMention& m,
                                        RunMode mode, Rng* dropout_rng) {
  InputMatrix x = encode(m);
  std::vector<Value> cols = graph_columns(tape, x);
  Value pooled = cnn_.build_pooled(tape, cols);
  pooled = masked_dropout(tape, pooled, cnn_.pooled_dim(), cfg_.dropout_rate,
                          mode, dropout_rng);
  return tape.softmax(head_.build(tape, pooled));
}

std::string CnnClassifier::meta_json() const {
  json j = base_meta(kind(), labels_, view_, fallback_seq_, n_);
  j["tables"] = tables_to_json(tables_);
  j["cnn"] = cnn_to_json(cfg_);
  return j.dump();
}

// ---------------------------------------------------------------------------
// RNN

RnnClassifier::RnnClassifier(const std::vector<RelationMention>& corpus,
                             LabelSpace labels, ViewKind view,
                             bool fallback_seq, std::size_t n,
                             const TableConfig& table_config, RnnConfig config,
                             const PretrainedEmbeddings* pretrained, Rng& rng)
    : NeuralClassifierBase(corpus, std::move(labels), view, fallback_seq, n,
                           table_config, pretrained, rng),
      cfg_((config.classes = labels_.size(), config)),
      rnn_(params_, "rnn", cfg_, tables_.column_dim(), rng),
      head_(params_, "head",
            (cfg_.strategy == PoolStrategy::kHead ? 2 : 1) * rnn_.output_dim(),
            cfg_.mlp_hidden, labels_.size(), rng) {}

RnnClassifier::RnnClassifier(LabelSpace labels, ViewKind view,
                             bool fallback_seq, std::size_t n,
                             const TablesSnapshot& snapshot, RnnConfig config)
    : NeuralClassifierBase(std::move(labels), view, fallback_seq, n, snapshot),
      cfg_((config.classes = labels_.size(), config)),
      rnn_([&]() -> RnnModel {
        Rng dummy(0);
        return RnnModel(params_, "rnn", cfg_, tables_.column_dim(), dummy);
      }()),
      head_([&]() -> MlpHead {
        Rng dummy(0);
        return MlpHead(params_, "head",
                       (cfg_.strategy == PoolStrategy::kHead ? 2 : 1) *
                           rnn_.output_dim(),
                       cfg_.mlp_hidden, labels_.size(), dummy);
      }()) {}

Value RnnClassifier::build_distribution(Tape& tape, const RelationMention& m,
                                        RunMode mode, Rng* dropout_rng) {
  InputMatrix x = encode(m);
  std::vector<Value> cols = graph_columns(tape, x);
  std::vector<Value> hiddens = rnn_.build_hidden_sequence(tape, cols);
  Value rep = rnn_.build_represent(tape, hiddens, x.head1, x.head2,
                                   x.real_length);
  std::size_t rep_dim =
      (cfg_.strategy == PoolStrategy::kHead ? 2 : 1) * rnn_.output_dim();
  rep = masked_dropout(tape, rep, rep_dim, cfg_.dropout_rate, mode,
                       dropout_rng);
  return tape.softmax(head_.build(tape, rep));
}

std::string RnnClassifier::meta_json() const {
  json j = base_meta(kind(), labels_, view_, fallback_seq_, n_);
  j["tables"] = tables_to_json(tables_);
  j["rnn"] = rnn_to_json(cfg_);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Stacks

StackRnnCnnClassifier::StackRnnCnnClassifier(
    const std::vector<RelationMention>& corpus, LabelSpace labels,
    ViewKind view, bool fallback_seq, std::size_t n,
    const TableConfig& table_config, RnnConfig rnn_config,
    ConvConfig cnn_config, const PretrainedEmbeddings* pretrained, Rng& rng)
    : NeuralClassifierBase(corpus, std::move(labels), view, fallback_seq, n,
                           table_config, pretrained, rng),
      rnn_cfg_((rnn_config.classes = labels_.size(), rnn_config)),
      cnn_cfg_((cnn_config.classes = labels_.size(), cnn_config)),
      rnn_(params_, "rnn", rnn_cfg_, tables_.column_dim(), rng),
      cnn_(params_, "cnn", cnn_cfg_, rnn_.output_dim(), rng),
      head_(params_, "head", cnn_.pooled_dim(), cnn_cfg_.mlp_hidden,
            labels_.size(), rng) {}

StackRnnCnnClassifier::StackRnnCnnClassifier(LabelSpace labels, ViewKind view,
                                             bool fallback_seq, std::size_t n,
                                             const TablesSnapshot& snapshot,
                                             RnnConfig rnn_config,
                                             ConvConfig cnn_config)
    : NeuralClassifierBase(std::move(labels), view, fallback_seq, n, snapshot),
      rnn_cfg_((rnn_config.classes = labels_.size(), rnn_config)),
      cnn_cfg_((cnn_config.classes = labels_.size(), cnn_config)),
      rnn_([&]() -> RnnModel {
        Rng dummy(0);
        return RnnModel(params_, "rnn", rnn_cfg_, tables_.column_dim(), dummy);
      }()),
      cnn_([&]() -> CnnModel {
        Rng dummy(0);
        return CnnModel(params_, "cnn", cnn_cfg_, rnn_.output_dim(), dummy);
      }()),
      head_([&]() -> MlpHead {
        Rng dummy(0);
        return MlpHead(params_, "head", cnn_.pooled_dim(),
                       cnn_cfg_.mlp_hidden, labels_.size(), dummy);
      }()) {}

Value StackRnnCnnClassifier::build_distribution(Tape& tape,
                                                const RelationMention& m,
                                                RunMode mode,
                                                Rng* dropout_rng) {
  InputMatrix x = encode(m);
  std::vector<Value> cols = graph_columns(tape, x);
  std::vector<Value> hiddens = rnn_.build_hidden_sequence(tape, cols);
  Value pooled = cnn_.build_pooled(tape, hiddens);
  pooled = masked_dropout(tape, pooled, cnn_.pooled_dim(),
                          cnn_cfg_.dropout_rate, mode, dropout_rng);
  return tape.softmax(head_.build(tape, pooled));
}

std::string StackRnnCnnClassifier::meta_json() const {
  json j = base_meta(kind(), labels_, view_, fallback_seq_, n_);
  j["tables"] = tables_to_json(tables_);
  j["rnn"] = rnn_to_json(rnn_cfg_);
  j["cnn"] = cnn_to_json(cnn_cfg_);
  return j.dump();
}

StackCnnRnnClassifier::StackCnnRnnClassifier(
    const std::vector<RelationMention>& corpus, LabelSpace labels,
    ViewKind view, bool fallback_seq, std::size_t n,
    const TableConfig& table_config, ConvConfig cnn_config,
    RnnConfig rnn_config, const PretrainedEmbeddings* pretrained, Rng& rng)
    : NeuralClassifierBase(corpus, std::move(labels), view, fallback_seq, n,
                           table_config, pretrained, rng),
      cnn_cfg_((cnn_config.classes = labels_.size(), cnn_config)),
      rnn_cfg_((rnn_config.classes = labels_.size(), rnn_config)),
      cnn_(params_, "cnn", cnn_cfg_, tables_.column_dim(), rng),
      rnn_(params_, "rnn", rnn_cfg_, cnn_.pooled_dim(), rng),
      head_(params_, "head",
            (rnn_cfg_.strategy == PoolStrategy::kHead ? 2 : 1) *
                rnn_.output_dim(),
            rnn_cfg_.mlp_hidden, labels_.size(), rng) {}

StackCnnRnnClassifier::StackCnnRnnClassifier(LabelSpace labels, ViewKind view,
                                             bool fallback_seq, std::size_t n,
                                             const TablesSnapshot& snapshot,
                                             ConvConfig cnn_config,
                                             RnnConfig rnn_config)
    : NeuralClassifierBase(std::move(labels), view, fallback_seq, n, snapshot),
      cnn_cfg_((cnn_config.classes = labels_.size(), cnn_config)),
      rnn_cfg_((rnn_config.classes = labels_.size(), rnn_config)),
      cnn_([&]() -> CnnModel {
        Rng dummy(0);
        return CnnModel(params_, "cnn", cnn_cfg_, tables_.column_dim(), dummy);
      }()),
      rnn_([&]() -> RnnModel {
        Rng dummy(0);
        return RnnModel(params_, "rnn", rnn_cfg_, cnn_.pooled_dim(), dummy);
      }()),
      head_([&]() -> MlpHead {
        Rng dummy(0);
        return MlpHead(params_, "head",
                       (rnn_cfg_.strategy == PoolStrategy::kHead ? 2 : 1) *
                           rnn_.output_dim(),
                       rnn_cfg_.mlp_hidden, labels_.size(), dummy);
      }()) {}

Value StackCnnRnnClassifier::build_distribution(Tape& tape,
                                                const RelationMention& m,
                                                RunMode mode,
                                                Rng* dropout_rng) {
  InputMatrix x = encode(m);
  std::vector<Value> cols = graph_columns(tape, x);
  std::vector<Value> rows = cnn_.build_hidden_sequence(tape, cols);
  std::vector<Value> hiddens = rnn_.build_hidden_sequence(tape, rows);
  Value rep = rnn_.build_represent(tape, hiddens, x.head1, x.head2,
                                   x.real_length);
  std::size_t rep_dim =
      (rnn_cfg_.strategy == PoolStrategy::kHead ? 2 : 1) * rnn_.output_dim();
  rep = masked_dropout(tape, rep, rep_dim, rnn_cfg_.dropout_rate, mode,
                       dropout_rng);
  return tape.softmax(head_.build(tape, rep));
}

std::string StackCnnRnnClassifier::meta_json() const {
  json j = base_meta(kind(), labels_, view_, fallback_seq_, n_);
  j["tables"] = tables_to_json(tables_);
  j["cnn"] = cnn_to_json(cnn_cfg_);
  j["rnn"] = rnn_to_json(rnn_cfg_);
  return j.dump();
}

// ---------------------------------------------------------------------------
// Log-linear

LogLinearClassifier::LogLinearClassifier(
    const std::vector<RelationMention>& corpus, LabelSpace labels,
    ViewKind view, bool fallback_seq, double l2)
    : params_(),
      labels_(std::move(labels)),
      view_(view),
      fallback_seq_(fallback_seq),
      dict_(),
      model_([&]() -> LogLinearModel {
        for (const RelationMention& m : corpus) {
          extract_features(m, view_of(m), dict_);
        }
        dict_.freeze();
        return LogLinearModel(params_, "loglinear", labels_.size(),
                              dict_.size(), l2);
      }()) {}

LogLinearClassifier::LogLinearClassifier(LabelSpace labels, ViewKind view,
                                         bool fallback_seq, double l2,
                                         std::vector<std::string> names)
    : params_(),
      labels_(std::move(labels)),
      view_(view),
      fallback_seq_(fallback_seq),
      dict_(FeatureDict::from_names(std::move(names))),
      model_(params_, "loglinear", labels_.size(), dict_.size(), l2) {}

SentenceView LogLinearClassifier::view_of(const RelationMention& m) const {
  if (view_ == ViewKind::kDep && fallback_seq_) {
    try {
      return build_view(m, ViewKind::kDep);
    } catch (const NoPathError&) {
      return build_view(m, ViewKind::kSeq);
    }
  }
  return build_view(m, view_);
}

SparseFeatureVector LogLinearClassifier::features(const RelationMention& m) {
  return extract_features(m, view_of(m), dict_);
}

Value LogLinearClassifier::build_distribution(Tape& tape,
                                              const RelationMention& m,
                                              RunMode, Rng*) {
  return model_.build_distribution(tape, features(m));
}

std::optional<Value> LogLinearClassifier::build_penalty(Tape& tape) {
  return model_.build_penalty(tape);
}

std::string LogLinearClassifier::meta_json() const {
  json j = base_meta(kind(), labels_, view_, fallback_seq_, 0);
  j["loglinear"] = {{"l2", model_.l2()}, {"features", dict_.names()}};
  return j.dump();
}

// ---------------------------------------------------------------------------
// Hybrid

HybridClassifier::HybridClassifier(
    std::unique_ptr<Classifier> network,
    std::unique_ptr<LogLinearClassifier> loglinear)
    : network_(std::move(network)), loglinear_(std::move(loglinear)) {
  if (!(network_->labels() == loglinear_->labels())) {
    throw ConfigError("hybrid members disagree on the label space");
  }
}

std::vector<Parameter*> HybridClassifier::parameters() {
  std::vector<Parameter*> out = network_->parameters();
  std::vector<Parameter*> ll = loglinear_->parameters();
  out.insert(out.end(), ll.begin(), ll.end());
  return out;
}

Value HybridClassifier::build_distribution(Tape& tape,
                                           const RelationMention& m,
                                           RunMode mode, Rng* dropout_rng) {
  Value net = network_->build_distribution(tape, m, mode, dropout_rng);
  Value lin = loglinear_->build_distribution(tape, m, mode, dropout_rng);
  return tape.normalize(tape.mul(net, lin));
}

std::optional<Value> HybridClassifier::build_penalty(Tape& tape) {
  std::optional<Value> net = network_->build_penalty(tape);
  std::optional<Value> lin = loglinear_->build_penalty(tape);
  if (net && lin) return tape.add(*net, *lin);
  return net ? net : lin;
}

std::string HybridClassifier::meta_json() const {
  json j;
  j["kind"] = kind();
  j["network"] = json::parse(network_->meta_json());
  j["loglinear_member"] = json::parse(loglinear_->meta_json());
  return j.dump();
}

}  // namespace renn
