#include "renn/eval.hpp"

#include <algorithm>
#include <set>

#include "renn/errors.hpp"

namespace renn {

namespace {

void fill_rates(EvalReport& r) {
  r.precision = (r.tp + r.fp) ? static_cast<double>(r.tp) / (r.tp + r.fp) : 0.0;
  r.recall = (r.tp + r.fn) ? static_cast<double>(r.tp) / (r.tp + r.fn) : 0.0;
  r.f1 = (r.precision + r.recall > 0.0)
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
}

void check_aligned(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("prediction/gold length mismatch: " +
                         std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

EvalReport score(const std::vector<std::size_t>& predictions,
                 const std::vector<std::size_t>& gold,
                 const LabelSpace& labels) {
  check_aligned(predictions.size(), gold.size());
  EvalReport r;
  r.partition = "all";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    bool pred_positive = !labels.is_negative(predictions[i]);
    bool gold_positive = !labels.is_negative(gold[i]);
    bool correct = predictions[i] == gold[i];
    if (pred_positive && correct) ++r.tp;
    if (pred_positive && !correct) ++r.fp;
    if (gold_positive && !correct) ++r.fn;
  }
  fill_rates(r);
  return r;
}

std::vector<BreakdownRow> breakdown(
    const std::vector<std::size_t>& predictions,
    const std::vector<std::size_t>& gold, const LabelSpace& labels) {
  check_aligned(predictions.size(), gold.size());
  std::vector<BreakdownRow> rows;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    if (labels.is_negative(c)) continue;
    BreakdownRow row;
    row.relation = labels.classes[c];
    row.report.partition = labels.classes[c];
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      if (predictions[i] == c && gold[i] == c) ++row.report.tp;
      if (predictions[i] == c && gold[i] != c) ++row.report.fp;
      if (gold[i] == c && predictions[i] != c) ++row.report.fn;
    }
    fill_rates(row.report);
    rows.push_back(std::move(row));
  }
  BreakdownRow all;
  all.relation = "all";
  all.report = score(predictions, gold, labels);
  rows.push_back(std::move(all));
  return rows;
}

std::vector<EvalReport> score_by_domain(
    const std::vector<RelationMention>& mentions,
    const std::vector<std::size_t>& predictions,
    const std::vector<std::size_t>& gold, const LabelSpace& labels) {
  check_aligned(mentions.size(), predictions.size());
  check_aligned(predictions.size(), gold.size());
  std::set<std::string> domains;
  for (const auto& m : mentions) {
    domains.insert(m.domain.empty() ? "all" : m.domain);
  }
  std::vector<EvalReport> out;
  for (const std::string& d : domains) {
    std::vector<std::size_t> p, g;
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      std::string md = mentions[i].domain.empty() ? "all" : mentions[i].domain;
      if (md != d) continue;
      p.push_back(predictions[i]);
      g.push_back(gold[i]);
    }
    EvalReport r = score(p, g, labels);
    r.partition = d;
    out.push_back(std::move(r));
  }
  if (out.size() > 1) {
    EvalReport avg;
    avg.partition = "average";
    double f = 0.0, pr = 0.0, rc = 0.0;
    for (const auto& r : out) {
      f += r.f1;
      pr += r.precision;
      rc += r.recall;
    }
    avg.f1 = f / static_cast<double>(out.size());
    avg.precision = pr / static_cast<double>(out.size());
    avg.recall = rc / static_cast<double>(out.size());
    out.push_back(std::move(avg));
  }
  return out;
}

CoverageReport coverage_diff(const std::vector<std::string>& ids,
                             const std::vector<std::size_t>& predictions_a,
                             const std::vector<std::size_t>& predictions_b,
                             const std::vector<std::size_t>& gold) {
  check_aligned(ids.size(), gold.size());
  check_aligned(predictions_a.size(), gold.size());
  check_aligned(predictions_b.size(), gold.size());
  CoverageReport r;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    bool a = predictions_a[i] == gold[i];
    bool b = predictions_b[i] == gold[i];
    if (a) ++r.a_correct;
    if (b) ++r.b_correct;
    if (a && b) ++r.both;
    if (a && !b) {
      ++r.only_a;
      r.only_a_ids.push_back(ids[i]);
    }
    if (b && !a) {
      ++r.only_b;
      r.only_b_ids.push_back(ids[i]);
    }
  }
  return r;
}

}  // namespace renn
