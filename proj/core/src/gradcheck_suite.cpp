#include "renn/gradcheck_suite.hpp"

#include <chrono>

#include "renn/model_factory.hpp"

namespace renn {

double classifier_batch_loss(Classifier& model,
                             const std::vector<RelationMention>& batch,
                             bool with_grad) {
  Tape tape;
  std::vector<Value> losses;
  losses.reserve(batch.size());
  for (const RelationMention& m : batch) {
    std::size_t gold = model.labels().index_of(m.gold_class);
    Value dist = model.build_distribution(tape, m, RunMode::kEval, nullptr);
    losses.push_back(tape.scale(tape.log_clamped(tape.pick(dist, gold)),
                                -1.0));
  }
  Value total = tape.scale(tape.add_n(losses),
                           1.0 / static_cast<double>(batch.size()));
  if (auto penalty = model.build_penalty(tape)) {
    total = tape.add(total, *penalty);
  }
  if (with_grad) tape.backward(total);
  return tape.scalar(total);
}

namespace {

ModelSpec toy_spec() {
  ModelSpec spec;
  spec.tables.word_dim = 3;
  spec.tables.dist_dim = 2;
  spec.tables.label_dim = 2;
  spec.cnn.window_sizes = {2, 3};
  spec.cnn.maps_per_window = 2;
  spec.cnn.mlp_hidden = {4};
  spec.rnn.hidden = 4;
  spec.rnn.mlp_hidden = {4};
  spec.dropout_rate = 0.0;  // probes must be deterministic
  spec.cnn.dropout_rate = 0.0;
  spec.rnn.dropout_rate = 0.0;
  spec.loglinear_l2 = 0.01;
  return spec;
}

std::vector<RelationMention> toy_corpus() {
  SynthSpec s;
  s.classes = 3;
  s.vocab = 14;
  s.pattern_length = 2;
  s.size = 8;
  s.seed = 11;
  s.negative_fraction = 0.0;
  s.affix_span = 1;   // no prefix/suffix
  s.filler_span = 2;  // at most one filler on each side of the trigger
  return generate_synthetic(s);  // sentence length <= 6, 3 classes
}

void check_variant(GradCheckSuiteResult& result, const std::string& name,
                   const ModelSpec& spec,
                   const std::vector<RelationMention>& corpus, double eps,
                   double tau) {
  Rng rng(17);
  std::unique_ptr<Classifier> model = build_classifier(spec, corpus, {}, rng);
  std::vector<RelationMention> batch(corpus.begin(),
                                     corpus.begin() + 3);
  GradCheckCase c;
  c.name = name;
  c.report = grad_check(
      [&](bool with_grad) {
        return classifier_batch_loss(*model, batch, with_grad);
      },
      model->parameters(), eps, tau);
  result.max_rel_err = std::max(result.max_rel_err, c.report.max_rel_err);
  result.cases.push_back(std::move(c));
}

}  // namespace

GradCheckSuiteResult run_gradcheck_suite(double eps, double tau) {
  auto t0 = std::chrono::steady_clock::now();
  GradCheckSuiteResult result;
  std::vector<RelationMention> corpus = toy_corpus();
  ModelSpec base = toy_spec();

  {
    ModelSpec spec = base;
    spec.kind = "cnn";
    check_variant(result, "cnn", spec, corpus, eps, tau);
  }
  for (CellKind cell : {CellKind::kFf, CellKind::kGru}) {
    for (Direction dir : {Direction::kForward, Direction::kBackward,
                          Direction::kBidirect}) {
      for (PoolStrategy strategy : {PoolStrategy::kHead, PoolStrategy::kMax}) {
        ModelSpec spec = base;
        spec.kind = "rnn";
        spec.rnn.cell = cell;
        spec.rnn.direction = dir;
        spec.rnn.strategy = strategy;
        std::string name = "rnn-" + to_string(cell) + "-" + to_string(dir) +
                           "-" + to_string(strategy);
        check_variant(result, name, spec, corpus, eps, tau);
      }
    }
  }
  {
    ModelSpec spec = base;
    spec.kind = "stack-rnn-cnn";
    check_variant(result, "stack-rnn-cnn", spec, corpus, eps, tau);
  }
  {
    ModelSpec spec = base;
    spec.kind = "stack-cnn-rnn";
    check_variant(result, "stack-cnn-rnn", spec, corpus, eps, tau);
  }
  {
    ModelSpec spec = base;
    spec.kind = "loglinear";
    check_variant(result, "loglinear", spec, corpus, eps, tau);
  }
  {
    ModelSpec spec = base;
    spec.kind = "hybrid";
    spec.hybrid_network = "cnn";
    check_variant(result, "hybrid-cnn-loglinear", spec, corpus, eps, tau);
  }

  auto t1 = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

}  // namespace renn
