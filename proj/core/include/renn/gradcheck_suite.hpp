#pragma once

#include <memory>
#include <string>
#include <vector>

#include "renn/classifier.hpp"
#include "renn/grad_check.hpp"

namespace renn {

struct GradCheckCase {
  std::string name;
  GradCheckReport report;
};

struct GradCheckSuiteResult {
  std::vector<GradCheckCase> cases;
  double max_rel_err = 0.0;
  double seconds = 0.0;

  bool ok() const {
    for (const auto& c : cases) {
      if (!c.report.ok()) return false;
    }
    return true;
  }
};

/// Mean eval-mode NLL over a fixed batch, as a grad_check probe function.
/// `with_grad` additionally backpropagates into the model's parameters.
double classifier_batch_loss(Classifier& model,
                             const std::vector<RelationMention>& batch,
                             bool with_grad);

/// Gradient verification over every model variant at toy dimensions:
/// the CNN, all twelve RNN configurations (FF/GRU x three directions x
/// HEAD/MAX), both stacking composites, the log-linear model and a hybrid.
/// Each variant is built over a tiny synthetic corpus and checked against
/// central differences.
GradCheckSuiteResult run_gradcheck_suite(double eps = 1e-5, double tau = 1e-4);

}  // namespace renn
