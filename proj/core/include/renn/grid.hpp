#pragma once

#include <string>
#include <vector>

#include "renn/eval.hpp"
#include "renn/model_factory.hpp"
#include "renn/trainer.hpp"

namespace renn {

struct GridCell {
  ViewKind view;
  CellKind cell;
  PoolStrategy strategy;
  Direction direction;
  EvalReport report;
};

/// The 24-cell architecture sweep: view {SEQ, DEP} x cell {FF, GRU} x
/// strategy {HEAD, MAX} x direction {forward, backward, bidirect}.
struct ExperimentGrid {
  std::vector<GridCell> cells;

  const GridCell& at(ViewKind view, CellKind cell, PoolStrategy strategy,
                     Direction direction) const;
  /// Header plus one row per cell: view, cell, strategy, direction, P, R, F1.
  std::string to_tsv() const;
};

/// Trains all 24 RNN variants on `train` and evaluates each on `dev`.
/// `base_spec` supplies dimensions and table sizes; the four axes override
/// its view and rnn fields cell by cell.
ExperimentGrid run_grid(const std::vector<RelationMention>& train,
                        const std::vector<RelationMention>& dev,
                        const ModelSpec& base_spec, const TrainConfig& config);

}  // namespace renn
