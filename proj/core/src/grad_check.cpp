#include "renn/grad_check.hpp"

#include <cmath>

#include "renn/errors.hpp"

namespace renn {

GradCheckReport grad_check(const std::function<double(bool)>& loss,
                           std::vector<Parameter*> params, double eps,
                           double tau) {
  if (!(eps > 0.0)) throw ConfigError("grad_check: eps must be positive");

  for (Parameter* p : params) p->zero_grad();
  double base = loss(true);
  if (!std::isfinite(base)) throw NumericFault("grad_check: non-finite loss");

  // Snapshot analytic gradients before the finite-difference probes.
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (Parameter* p : params) analytic.push_back(p->grad);

  GradCheckReport report;
  for (std::size_t pi = 0; pi < params.size(); ++pi) {
    Parameter& p = *params[pi];
    GradCheckEntry entry;
    entry.param = p.name;
    for (std::size_t j = 0; j < p.value.size(); ++j) {
      double saved = p.value[j];
      p.value[j] = saved + eps;
      double up = loss(false);
      p.value[j] = saved - eps;
      double down = loss(false);
      p.value[j] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        throw NumericFault("grad_check: non-finite loss probing " + p.name);
      }
      double numeric = (up - down) / (2.0 * eps);
      double a = analytic[pi][j];
      double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
      double rel = std::abs(a - numeric) / denom;
      if (rel > entry.max_rel_err) {
        entry.max_rel_err = rel;
        entry.worst_index = j;
        entry.analytic = a;
        entry.numeric = numeric;
      }
      if (rel > tau) ++entry.flagged;
    }
    report.max_rel_err = std::max(report.max_rel_err, entry.max_rel_err);
    report.flagged += entry.flagged;
    report.entries.push_back(std::move(entry));
  }
  for (Parameter* p : params) p->zero_grad();
  return report;
}

GradCheckReport grad_check(const std::function<double(bool)>& loss,
                           ModelParameters& params, double eps, double tau) {
  return grad_check(loss, params.pointers(), eps, tau);
}

}  // namespace renn
