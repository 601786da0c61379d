#pragma once

#include <map>
#include <string>
#include <vector>

#include "renn/corpus.hpp"

namespace renn {

struct EvalReport {
  std::string partition;  // domain or "all"
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Micro-averaged P/R/F1 over the non-negative classes: TP counts correct
/// non-negative predictions, FP non-negative predictions that are wrong
/// (including gold-negative ones), FN gold non-negative mentions not
/// correctly predicted. Degenerate denominators score 0. Without a negative
/// class every class counts.
EvalReport score(const std::vector<std::size_t>& predictions,
                 const std::vector<std::size_t>& gold,
                 const LabelSpace& labels);

struct BreakdownRow {
  std::string relation;  // class name or "all"
  EvalReport report;
};

/// One P/R/F1 row per non-negative class plus an "all" row equal to score().
std::vector<BreakdownRow> breakdown(const std::vector<std::size_t>& predictions,
                                    const std::vector<std::size_t>& gold,
                                    const LabelSpace& labels);

/// Per-domain reports (mentions with empty domains group under "all").
/// Returns rows sorted by domain plus a trailing macro average entry when
/// multiple domains exist.
std::vector<EvalReport> score_by_domain(
    const std::vector<RelationMention>& mentions,
    const std::vector<std::size_t>& predictions,
    const std::vector<std::size_t>& gold, const LabelSpace& labels);

struct CoverageReport {
  std::size_t a_correct = 0;
  std::size_t b_correct = 0;
  std::size_t both = 0;
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  std::vector<std::string> only_a_ids;
  std::vector<std::string> only_b_ids;
};

/// Coverage-set overlap: S_m is the set of mention ids model m predicts
/// correctly; exact set arithmetic over aligned prediction lists.
CoverageReport coverage_diff(const std::vector<std::string>& ids,
                             const std::vector<std::size_t>& predictions_a,
                             const std::vector<std::size_t>& predictions_b,
                             const std::vector<std::size_t>& gold);

}  // namespace renn
