#include "renn/model_factory.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "renn/checkpoint.hpp"
#include "renn/errors.hpp"

namespace renn {

using nlohmann::json;

ModelSpec spec_from_config(const Config& c) {
  ModelSpec spec;
  spec.kind = c.get_string("model", "cnn");
  // stacked architectures may also be selected through combine.method
  std::string combine = c.get_string("combine.method", "");
  if (combine == "stack-rnn-cnn" || combine == "stack-cnn-rnn") {
    spec.kind = combine;
  }
  spec.view = view_kind_from_string(c.get_string("view", "seq"));
  spec.fallback_seq = c.get_bool("view.fallback_seq", false);
  spec.max_len = c.get_size("n", 0);
  spec.tables.word_dim = c.get_size("dims.word", 300);
  spec.tables.dist_dim = c.get_size("dims.dist", 50);
  spec.tables.label_dim = c.get_size("dims.label", 50);
  spec.cnn.window_sizes = c.get_size_list("cnn.windows", {2, 3, 4, 5});
  spec.cnn.maps_per_window = c.get_size("cnn.maps", 150);
  spec.cnn.mlp_hidden = c.get_size_list("cnn.mlp_hidden", {300});
  spec.rnn.cell = cell_kind_from_string(c.get_string("rnn.cell", "gru"));
  spec.rnn.direction =
      direction_from_string(c.get_string("rnn.direction", "forward"));
  spec.rnn.strategy =
      pool_strategy_from_string(c.get_string("rnn.strategy", "max"));
  spec.rnn.hidden = c.get_size("rnn.hidden", 300);
  spec.rnn.mlp_hidden = c.get_size_list("rnn.mlp_hidden", {300});
  spec.rnn.gate_biases = c.get_bool("rnn.gate_biases", true);
  spec.loglinear_l2 = c.get_double("loglinear.l2", 0.0);
  spec.dropout_rate = c.get_double("train.dropout", 0.5);
  spec.cnn.dropout_rate = spec.dropout_rate;
  spec.rnn.dropout_rate = spec.dropout_rate;
  spec.embeddings_path = c.get_string("embeddings", "");
  spec.negative_label = c.get_string("negative_label", "NONE");

  std::string members = c.get_string("hybrid.members", "");
  if (!members.empty()) {
    spec.kind = "hybrid";
    std::string network;
    std::stringstream ss(members);
    std::string piece;
    bool has_loglinear = false;
    while (std::getline(ss, piece, ',')) {
      piece.erase(0, piece.find_first_not_of(" \t"));
      piece.erase(piece.find_last_not_of(" \t") + 1);
      if (piece == "loglinear") {
        has_loglinear = true;
      } else if (!piece.empty()) {
        if (!network.empty()) {
          throw ConfigError("hybrid.members: exactly one network member");
        }
        network = piece;
      }
    }
    if (!has_loglinear || network.empty()) {
      throw ConfigError(
          "hybrid.members must name one network member and 'loglinear'");
    }
    spec.hybrid_network = network;
  } else {
    spec.hybrid_network = c.get_string("hybrid.network", "cnn");
  }
  return spec;
}

TrainConfig train_config_from(const Config& c) {
  TrainConfig t;
  t.batch_size = c.get_size("train.batch", 50);
  t.dropout_rate = c.get_double("train.dropout", 0.5);
  t.max_norm = c.get_double("train.max_norm", 3.0);
  t.rho = c.get_double("train.rho", 0.95);
  t.epsilon = c.get_double("train.epsilon", 1e-6);
  t.epochs = c.get_size("train.epochs", 50);
  t.seed = c.get_u64("train.seed", 1);
  t.dev_metric = c.get_string("train.dev_metric", "f1");
  t.target_dev_f1 = c.get_double("train.target_f1", -1.0);
  return t;
}

std::size_t resolve_max_len(
    const ModelSpec& spec,
    const std::vector<const std::vector<RelationMention>*>& corpora) {
  if (spec.max_len > 0) return spec.max_len;
  std::size_t n = 0;
  for (const auto* corpus : corpora) {
    if (!corpus) continue;
    for (const RelationMention& m : *corpus) n = std::max(n, m.length());
  }
  if (n == 0) throw ConfigError("cannot derive the padded length: no corpora");
  return n;
}

namespace {

std::unique_ptr<Classifier> build_network(
    const std::string& kind, const ModelSpec& spec,
    const std::vector<RelationMention>& train, const LabelSpace& labels,
    std::size_t n, const PretrainedEmbeddings* pretrained, Rng& rng) {
  if (kind == "cnn") {
    return std::make_unique<CnnClassifier>(train, labels, spec.view,
                                           spec.fallback_seq, n, spec.tables,
                                           spec.cnn, pretrained, rng);
  }
  if (kind == "rnn") {
    return std::make_unique<RnnClassifier>(train, labels, spec.view,
                                           spec.fallback_seq, n, spec.tables,
                                           spec.rnn, pretrained, rng);
  }
  if (kind == "stack-rnn-cnn") {
    return std::make_unique<StackRnnCnnClassifier>(
        train, labels, spec.view, spec.fallback_seq, n, spec.tables, spec.rnn,
        spec.cnn, pretrained, rng);
  }
  if (kind == "stack-cnn-rnn") {
    return std::make_unique<StackCnnRnnClassifier>(
        train, labels, spec.view, spec.fallback_seq, n, spec.tables, spec.cnn,
        spec.rnn, pretrained, rng);
  }
  throw ConfigError("unknown network model kind: " + kind);
}

}  // namespace

std::unique_ptr<Classifier> build_classifier(
    const ModelSpec& spec, const std::vector<RelationMention>& train,
    const std::vector<const std::vector<RelationMention>*>& extra_corpora,
    Rng& rng) {
  LabelSpace labels = LabelSpace::from_corpus(train, spec.negative_label);
  std::vector<const std::vector<RelationMention>*> corpora{&train};
  corpora.insert(corpora.end(), extra_corpora.begin(), extra_corpora.end());
  std::size_t n = resolve_max_len(spec, corpora);

  PretrainedEmbeddings pretrained;
  const PretrainedEmbeddings* pre = nullptr;
  if (!spec.embeddings_path.empty()) {
    pretrained = PretrainedEmbeddings::load(spec.embeddings_path);
    pre = &pretrained;
  }

  if (spec.kind == "loglinear") {
    return std::make_unique<LogLinearClassifier>(
        train, labels, spec.view, spec.fallback_seq, spec.loglinear_l2);
  }
  if (spec.kind == "hybrid") {
    auto network = build_network(spec.hybrid_network, spec, train, labels, n,
                                 pre, rng);
    auto loglin = std::make_unique<LogLinearClassifier>(
        train, labels, spec.view, spec.fallback_seq, spec.loglinear_l2);
    return std::make_unique<HybridClassifier>(std::move(network),
                                              std::move(loglin));
  }
  return build_network(spec.kind, spec, train, labels, n, pre, rng);
}

namespace {

LabelSpace labels_from_json(const json& j) {
  LabelSpace labels;
  labels.classes = j.at("classes").get<std::vector<std::string>>();
  if (!j.at("negative").is_null()) {
    std::string neg = j.at("negative").get<std::string>();
    auto it = std::find(labels.classes.begin(), labels.classes.end(), neg);
    if (it != labels.classes.end()) {
      labels.negative_class =
          static_cast<std::size_t>(it - labels.classes.begin());
    }
  }
  return labels;
}

TablesSnapshot tables_from_json(const json& j, std::size_t n) {
  TablesSnapshot s;
  s.config.word_dim = j.at("word_dim").get<std::size_t>();
  s.config.dist_dim = j.at("dist_dim").get<std::size_t>();
  s.config.label_dim = j.at("label_dim").get<std::size_t>();
  s.config.max_len = n;
  s.words = j.at("words").get<std::vector<std::string>>();
  s.entities = j.at("entities").get<std::vector<std::string>>();
  s.chunks = j.at("chunks").get<std::vector<std::string>>();
  s.dep_labels = j.at("dep_labels").get<std::vector<std::string>>();
  return s;
}

ConvConfig cnn_from_json(const json& j) {
  ConvConfig c;
  c.window_sizes = j.at("windows").get<std::vector<std::size_t>>();
  c.maps_per_window = j.at("maps").get<std::size_t>();
  c.mlp_hidden = j.at("mlp_hidden").get<std::vector<std::size_t>>();
  c.dropout_rate = j.at("dropout").get<double>();
  c.classes = j.at("classes").get<std::size_t>();
  return c;
}

RnnConfig rnn_from_json(const json& j) {
  RnnConfig c;
  c.cell = cell_kind_from_string(j.at("cell").get<std::string>());
  c.direction = direction_from_string(j.at("direction").get<std::string>());
  c.strategy = pool_strategy_from_string(j.at("strategy").get<std::string>());
  c.hidden = j.at("hidden").get<std::size_t>();
  c.mlp_hidden = j.at("mlp_hidden").get<std::vector<std::size_t>>();
  c.dropout_rate = j.at("dropout").get<double>();
  c.classes = j.at("classes").get<std::size_t>();
  c.gate_biases = j.value("gate_biases", true);
  return c;
}

std::unique_ptr<Classifier> classifier_from_meta(const json& meta) {
  std::string kind = meta.at("kind").get<std::string>();
  if (kind == "hybrid") {
    auto network = classifier_from_meta(meta.at("network"));
    const json& ll = meta.at("loglinear_member");
    auto loglin = std::make_unique<LogLinearClassifier>(
        labels_from_json(ll.at("labels")),
        view_kind_from_string(ll.at("view").get<std::string>()),
        ll.at("fallback_seq").get<bool>(),
        ll.at("loglinear").at("l2").get<double>(),
        ll.at("loglinear").at("features").get<std::vector<std::string>>());
    return std::make_unique<HybridClassifier>(std::move(network),
                                              std::move(loglin));
  }

  LabelSpace labels = labels_from_json(meta.at("labels"));
  ViewKind view = view_kind_from_string(meta.at("view").get<std::string>());
  bool fallback = meta.at("fallback_seq").get<bool>();
  std::size_t n = meta.at("n").get<std::size_t>();

  if (kind == "loglinear") {
    return std::make_unique<LogLinearClassifier>(
        labels, view, fallback, meta.at("loglinear").at("l2").get<double>(),
        meta.at("loglinear").at("features").get<std::vector<std::string>>());
  }

  TablesSnapshot tables = tables_from_json(meta.at("tables"), n);
  if (kind == "cnn") {
    return std::make_unique<CnnClassifier>(labels, view, fallback, n, tables,
                                           cnn_from_json(meta.at("cnn")));
  }
  if (kind == "rnn") {
    return std::make_unique<RnnClassifier>(labels, view, fallback, n, tables,
                                           rnn_from_json(meta.at("rnn")));
  }
  if (kind == "stack-rnn-cnn") {
    return std::make_unique<StackRnnCnnClassifier>(
        labels, view, fallback, n, tables, rnn_from_json(meta.at("rnn")),
        cnn_from_json(meta.at("cnn")));
  }
  if (kind == "stack-cnn-rnn") {
    return std::make_unique<StackCnnRnnClassifier>(
        labels, view, fallback, n, tables, cnn_from_json(meta.at("cnn")),
        rnn_from_json(meta.at("rnn")));
  }
  throw ParseError("checkpoint has unknown model kind: " + kind);
}

}  // namespace

void save_classifier(const std::string& path, Classifier& model) {
  std::vector<Parameter*> params = model.parameters();
  std::vector<const Parameter*> view(params.begin(), params.end());
  save_checkpoint(path, view, model.meta_json());
}

std::unique_ptr<Classifier> load_classifier(const std::string& path) {
  LoadedCheckpoint ckpt = load_checkpoint(path);
  json meta = json::parse(ckpt.meta_json);
  std::unique_ptr<Classifier> model = classifier_from_meta(meta);
  restore_parameters(ckpt, model->parameters());
  return model;
}

}  // namespace renn
