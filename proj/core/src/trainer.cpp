#include "renn/trainer.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "renn/errors.hpp"
#include "renn/eval.hpp"

namespace renn {

double nll_loss(const ClassDistribution& dist, std::size_t gold,
                std::size_t* clamp_warnings) {
  if (gold >= dist.size()) {
    throw DimensionError("nll_loss: gold index out of range");
  }
  double p = dist.probs[gold];
  if (p < 1e-12) {
    p = 1e-12;
    if (clamp_warnings) ++*clamp_warnings;
  }
  return -std::log(p);
}

AdaDeltaState AdaDeltaState::for_parameters(
    const std::vector<Parameter*>& params) {
  AdaDeltaState s;
  s.grad_avg.reserve(params.size());
  s.update_avg.reserve(params.size());
  for (const Parameter* p : params) {
    s.grad_avg.push_back(Tensor::zeros(p->value.shape()));
    s.update_avg.push_back(Tensor::zeros(p->value.shape()));
  }
  return s;
}

void adadelta_step(const std::vector<Parameter*>& params, AdaDeltaState& state,
                   double rho, double epsilon) {
  if (state.grad_avg.size() != params.size()) {
    throw DimensionError("adadelta state does not match parameter list");
  }
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Parameter& p = *params[pi];
    Tensor& eg = state.grad_avg[pi];
    Tensor& ed = state.update_avg[pi];
    if (!eg.same_shape(p.value)) {
      throw DimensionError("adadelta state shape mismatch for " + p.name);
    }
    if (!p.grad.all_finite()) {
      throw NumericFault("adadelta: non-finite gradient in " + p.name);
    }
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      double g = p.grad[i];
      eg[i] = rho * eg[i] + (1.0 - rho) * g * g;
      double delta =
          -std::sqrt((ed[i] + epsilon) / (eg[i] + epsilon)) * g;
      ed[i] = rho * ed[i] + (1.0 - rho) * delta * delta;
      p.value[i] += delta;
    }
    p.zero_grad();
  }
}

void rescale_max_norm(const std::vector<Parameter*>& params,
                      double threshold) {
  if (!(threshold > 0.0)) {
    throw ConfigError("max-norm threshold must be positive");
  }
  for (Parameter* p : params) {
    if (!p->max_norm_target || p->value.rank() != 2) continue;
    std::size_t rows = p->value.rows();
    std::size_t cols = p->value.cols();
    for (std::size_t r = 0; r < rows; ++r) {
      double* row = p->value.data() + r * cols;
      double sq = 0.0;
      for (std::size_t c = 0; c < cols; ++c) sq += row[c] * row[c];
      double norm = std::sqrt(sq);
      if (norm > threshold) {
        double s = threshold / norm;
        for (std::size_t c = 0; c < cols; ++c) row[c] *= s;
      }
    }
  }
}

namespace {

std::vector<std::size_t> gold_indices(
    const std::vector<RelationMention>& mentions, const LabelSpace& labels) {
  std::vector<std::size_t> out;
  out.reserve(mentions.size());
  for (const auto& m : mentions) out.push_back(labels.index_of(m.gold_class));
  return out;
}

}  // namespace

TrainResult train(Classifier& model,
                  const std::vector<RelationMention>& train_set,
                  const std::vector<RelationMention>* dev_set,
                  const TrainConfig& config, const TrainObserver* observer) {
  if (train_set.empty()) throw ConfigError("train: empty corpus");
  if (config.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (config.dev_metric != "f1" && config.dev_metric != "accuracy") {
    throw ConfigError("train: unknown dev metric: " + config.dev_metric);
  }

  std::vector<Parameter*> params = model.parameters();
  AdaDeltaState state = AdaDeltaState::for_parameters(params);
  Rng shuffle_rng(config.seed, /*salt=*/0x01);
  Rng dropout_rng(config.seed, /*salt=*/0x02);

  std::vector<std::size_t> gold = gold_indices(train_set, model.labels());
  std::vector<std::size_t> dev_gold;
  if (dev_set) dev_gold = gold_indices(*dev_set, model.labels());

  std::ofstream csv;
  if (!config.metrics_csv.empty()) {
    csv.open(config.metrics_csv, std::ios::trunc);
    if (!csv) throw IoError("cannot write metrics csv: " + config.metrics_csv);
    csv << std::setprecision(12);
    csv << "epoch,train_loss,dev_P,dev_R,dev_F1\n";
  }

  TrainResult result;
  std::vector<Tensor> best_values;
  Tape tape;

  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t batches = (order.size() + config.batch_size - 1) /
                          config.batch_size;
    for (std::size_t b = 0; b < batches; ++b) {
      std::size_t lo = b * config.batch_size;
      std::size_t hi = std::min(order.size(), lo + config.batch_size);
      std::vector<std::size_t> batch(order.begin() + static_cast<long>(lo),
                                     order.begin() + static_cast<long>(hi));
      tape.reset();
      try {
        std::vector<Value> losses;
        losses.reserve(batch.size());
        for (std::size_t idx : batch) {
          Value dist = model.build_distribution(tape, train_set[idx],
                                                RunMode::kTrain, &dropout_rng);
          Value picked = tape.pick(dist, gold[idx]);
          losses.push_back(tape.scale(tape.log_clamped(picked), -1.0));
        }
        Value batch_loss = tape.scale(tape.add_n(losses),
                                      1.0 / static_cast<double>(batch.size()));
        if (auto penalty = model.build_penalty(tape)) {
          batch_loss = tape.add(batch_loss, *penalty);
        }
        loss_sum += tape.scalar(batch_loss) *
                    static_cast<double>(batch.size());
        tape.backward(batch_loss);
      } catch (const NumericFault& e) {
        throw NumericFault("epoch " + std::to_string(epoch) + " batch " +
                           std::to_string(b) + ": " + e.what());
      }
      result.clamp_warnings += tape.clamp_count();
      adadelta_step(params, state, config.rho, config.epsilon);
      rescale_max_norm(params, config.max_norm);
      if (observer && observer->on_batch) {
        observer->on_batch(epoch, b, batch, params);
      }
    }

    EpochMetrics metrics;
    metrics.epoch = epoch;
    metrics.train_loss = loss_sum / static_cast<double>(order.size());
    if (dev_set) {
      std::vector<std::size_t> preds;
      preds.reserve(dev_set->size());
      std::size_t exact = 0;
      for (std::size_t i = 0; i < dev_set->size(); ++i) {
        preds.push_back(model.predict_class((*dev_set)[i]));
        if (preds.back() == dev_gold[i]) ++exact;
      }
      EvalReport r = score(preds, dev_gold, model.labels());
      metrics.dev_precision = r.precision;
      metrics.dev_recall = r.recall;
      metrics.dev_f1 = r.f1;
      metrics.dev_accuracy =
          static_cast<double>(exact) / static_cast<double>(dev_set->size());
      double selected = config.dev_metric == "accuracy" ? metrics.dev_accuracy
                                                        : metrics.dev_f1;
      if (result.history.empty() || selected > result.best_dev_f1) {
        result.best_dev_f1 = selected;
        result.best_epoch = epoch;
        best_values.clear();
        best_values.reserve(params.size());
        for (const Parameter* p : params) best_values.push_back(p->value);
      }
    }
    result.history.push_back(metrics);
    if (csv.is_open()) {
      csv << metrics.epoch << ',' << metrics.train_loss << ','
          << metrics.dev_precision << ',' << metrics.dev_recall << ','
          << metrics.dev_f1 << '\n';
    }
    if (observer && observer->on_epoch) observer->on_epoch(metrics);
    double gate = config.dev_metric == "accuracy" ? metrics.dev_accuracy
                                                  : metrics.dev_f1;
    if (dev_set && config.target_dev_f1 >= 0.0 &&
        gate >= config.target_dev_f1) {
      result.reached_target = true;
      break;
    }
  }

  // best-dev checkpoint retained
  if (dev_set && !best_values.empty()) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i]->value = best_values[i];
      params[i]->zero_grad();
    }
  }
  if (dev_set && config.target_dev_f1 >= 0.0 &&
      result.best_dev_f1 >= config.target_dev_f1) {
    result.reached_target = true;
  }
  return result;
}

}  // namespace renn
