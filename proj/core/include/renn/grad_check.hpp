#pragma once

#include <functional>
#include <string>
#include <vector>

#include "renn/parameters.hpp"

namespace renn {

struct GradCheckEntry {
  std::string param;
  double max_rel_err = 0.0;
  std::size_t worst_index = 0;
  double analytic = 0.0;   // backprop gradient at the worst entry
  double numeric = 0.0;    // central difference at the worst entry
  std::size_t flagged = 0; // entries with relative error > tau
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_err = 0.0;
  std::size_t flagged = 0;

  bool ok() const { return flagged == 0; }
};

/// Compares backprop gradients against central finite differences
/// (f(θ+ε) − f(θ−ε)) / 2ε, entry by entry over every parameter.
///
/// `loss` must rebuild the computation from the parameters' current values
/// and return the scalar loss. When `with_grad` is true it must additionally
/// run backward so that each Parameter's grad holds d(loss)/d(θ); gradients
/// are zeroed here before that call.
///
/// Relative error is |a−n| / max(1, |a|, |n|).
GradCheckReport grad_check(const std::function<double(bool with_grad)>& loss,
                           std::vector<Parameter*> params, double eps,
                           double tau);

GradCheckReport grad_check(const std::function<double(bool with_grad)>& loss,
                           ModelParameters& params, double eps, double tau);

}  // namespace renn
