#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "renn/classifier.hpp"
#include "renn/corpus.hpp"
#include "renn/distribution.hpp"
#include "renn/parameters.hpp"

namespace renn {

struct TrainConfig {
  std::size_t batch_size = 50;
  double dropout_rate = 0.5;   // forwarded into model configs by the factory
  double max_norm = 3.0;
  double rho = 0.95;           // AdaDelta decay
  double epsilon = 1e-6;       // AdaDelta conditioner
  std::size_t epochs = 50;
  std::uint64_t seed = 1;
  /// Best-epoch selection metric over the dev set: "f1" or "accuracy".
  std::string dev_metric = "f1";
  /// Stop once the dev metric reaches this value (negative disables).
  double target_dev_f1 = -1.0;
  /// Per-epoch metrics CSV (epoch, train_loss, dev_P, dev_R, dev_F1);
  /// empty disables.
  std::string metrics_csv;
};

/// -log(dist[gold]); probabilities at zero are clamped to 1e-12 and counted
/// in `clamp_warnings` when provided.
double nll_loss(const ClassDistribution& dist, std::size_t gold,
                std::size_t* clamp_warnings = nullptr);

/// Per-parameter running averages of squared gradients and squared updates.
struct AdaDeltaState {
  std::vector<Tensor> grad_avg;
  std::vector<Tensor> update_avg;

  static AdaDeltaState for_parameters(const std::vector<Parameter*>& params);
};

/// One AdaDelta update over every parameter entry:
///   E[g^2] <- rho E[g^2] + (1-rho) g^2
///   delta  = -sqrt(E[d^2]+eps) / sqrt(E[g^2]+eps) * g
///   E[d^2] <- rho E[d^2] + (1-rho) delta^2
///   theta  <- theta + delta
/// Gradients are zeroed afterwards. Non-finite gradients raise NumericFault
/// naming the parameter.
void adadelta_step(const std::vector<Parameter*>& params, AdaDeltaState& state,
                   double rho, double epsilon);

/// Rescales every row of every max-norm-target parameter whose l2 norm
/// exceeds `threshold` back to exactly `threshold`.
void rescale_max_norm(const std::vector<Parameter*>& params, double threshold);

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double dev_precision = 0.0;
  double dev_recall = 0.0;
  double dev_f1 = 0.0;
  double dev_accuracy = 0.0;
};

/// Hooks for tests and instrumentation; either may be empty.
struct TrainObserver {
  /// After the optimizer step of each batch. `example_indices` are the
  /// corpus positions the batch consumed.
  std::function<void(std::size_t epoch, std::size_t batch,
                     const std::vector<std::size_t>& example_indices,
                     const std::vector<Parameter*>& params)>
      on_batch;
  std::function<void(const EpochMetrics&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochMetrics> history;
  /// Value of the configured dev metric at the best epoch.
  double best_dev_f1 = 0.0;
  std::size_t best_epoch = 0;
  std::size_t clamp_warnings = 0;
  bool reached_target = false;
};

/// Epochs of seed-shuffled mini-batches; per batch: forward, mean NLL (plus
/// model penalty terms), backward, AdaDelta, max-norm rescaling. Dev metrics
/// are recorded per epoch when a dev set is given and the best-dev parameter
/// values are restored into the model at the end. Deterministic for a fixed
/// seed: fixed shuffle, dropout and reduction order.
TrainResult train(Classifier& model,
                  const std::vector<RelationMention>& train_set,
                  const std::vector<RelationMention>* dev_set,
                  const TrainConfig& config,
                  const TrainObserver* observer = nullptr);

}  // namespace renn
