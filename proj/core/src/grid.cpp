#include "renn/grid.hpp"

#include <iomanip>
#include <sstream>

#include "renn/errors.hpp"

namespace renn {

const GridCell& ExperimentGrid::at(ViewKind view, CellKind cell,
                                   PoolStrategy strategy,
                                   Direction direction) const {
  for (const GridCell& c : cells) {
    if (c.view == view && c.cell == cell && c.strategy == strategy &&
        c.direction == direction) {
      return c;
    }
  }
  throw ConfigError("grid cell not found");
}

std::string ExperimentGrid::to_tsv() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "view\tcell\tstrategy\tdirection\tP\tR\tF1\n";
  for (const GridCell& c : cells) {
    out << to_string(c.view) << '\t' << to_string(c.cell) << '\t'
        << to_string(c.strategy) << '\t' << to_string(c.direction) << '\t'
        << c.report.precision << '\t' << c.report.recall << '\t'
        << c.report.f1 << '\n';
  }
  return out.str();
}

ExperimentGrid run_grid(const std::vector<RelationMention>& train,
                        const std::vector<RelationMention>& dev,
                        const ModelSpec& base_spec,
                        const TrainConfig& config) {
  ExperimentGrid grid;
  std::vector<std::size_t> dev_gold;
  for (CellKind cell : {CellKind::kFf, CellKind::kGru}) {
    for (PoolStrategy strategy : {PoolStrategy::kHead, PoolStrategy::kMax}) {
      for (Direction direction : {Direction::kBidirect, Direction::kForward,
                                  Direction::kBackward}) {
        for (ViewKind view : {ViewKind::kDep, ViewKind::kSeq}) {
          ModelSpec spec = base_spec;
          spec.kind = "rnn";
          spec.view = view;
          spec.rnn.cell = cell;
          spec.rnn.strategy = strategy;
          spec.rnn.direction = direction;
          Rng rng(config.seed, /*salt=*/0x03);
          std::unique_ptr<Classifier> model =
              build_classifier(spec, train, {&dev}, rng);
          renn::train(*model, train, &dev, config);
          std::vector<std::size_t> preds;
          preds.reserve(dev.size());
          if (dev_gold.empty()) {
            for (const auto& m : dev) {
              dev_gold.push_back(model->labels().index_of(m.gold_class));
            }
          }
          for (const auto& m : dev) preds.push_back(model->predict_class(m));
          GridCell c{view, cell, strategy, direction,
                     score(preds, dev_gold, model->labels())};
          grid.cells.push_back(std::move(c));
        }
      }
    }
  }
  return grid;
}

}  // namespace renn
