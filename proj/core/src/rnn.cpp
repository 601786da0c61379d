#include "renn/rnn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "renn/errors.hpp"

namespace renn {

std::string to_string(CellKind c) {
  return c == CellKind::kFf ? "ff" : "gru";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kForward: return "forward";
    case Direction::kBackward: return "backward";
    default: return "bidirect";
  }
}

std::string to_string(PoolStrategy s) {
  return s == PoolStrategy::kHead ? "head" : "max";
}

CellKind cell_kind_from_string(const std::string& s) {
  if (s == "ff" || s == "FF") return CellKind::kFf;
  if (s == "gru" || s == "GRU") return CellKind::kGru;
  throw ConfigError("unknown rnn cell: " + s);
}

Direction direction_from_string(const std::string& s) {
  if (s == "forward") return Direction::kForward;
  if (s == "backward") return Direction::kBackward;
  if (s == "bidirect" || s == "bidirectional") return Direction::kBidirect;
  throw ConfigError("unknown rnn direction: " + s);
}

PoolStrategy pool_strategy_from_string(const std::string& s) {
  if (s == "head" || s == "HEAD") return PoolStrategy::kHead;
  if (s == "max" || s == "MAX") return PoolStrategy::kMax;
  throw ConfigError("unknown rnn strategy: " + s);
}

Column represent(const std::vector<Column>& hiddens, PoolStrategy strategy,
                 std::size_t head1, std::size_t head2, std::size_t real_len) {
  if (hiddens.empty()) throw DimensionError("represent: no hidden vectors");
  if (strategy == PoolStrategy::kHead) {
    if (head1 >= hiddens.size() || head2 >= hiddens.size()) {
      throw DimensionError("represent: head index out of range");
    }
    Column out = hiddens[head1];
    out.insert(out.end(), hiddens[head2].begin(), hiddens[head2].end());
    return out;
  }
  std::size_t limit = std::min(real_len, hiddens.size());
  if (limit == 0) throw DimensionError("represent: empty real span");
  Column out = hiddens[0];
  for (std::size_t i = 1; i < limit; ++i) {
    for (std::size_t d = 0; d < out.size(); ++d) {
      out[d] = std::max(out[d], hiddens[i][d]);
    }
  }
  return out;
}

namespace {

using ConstMat = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                        Eigen::RowMajor>>;
using ConstVec = Eigen::Map<const Eigen::VectorXd>;

Eigen::VectorXd matvec_plain(const Parameter& w, const Column& x) {
  ConstMat wm(w.value.data(), static_cast<Eigen::Index>(w.value.rows()),
              static_cast<Eigen::Index>(w.value.cols()));
  ConstVec xm(x.data(), static_cast<Eigen::Index>(x.size()));
  return wm * xm;
}

double sigmoid_scalar(double x) { return 1.0 / (1.0 + std::exp(-x)); }

const RnnConfig& validated(const RnnConfig& config) {
  if (config.hidden < 1) throw ConfigError("rnn: hidden size must be >= 1");
  return config;
}

}  // namespace

RnnModel::RnnModel(ModelParameters& params, const std::string& prefix,
                   const RnnConfig& config, std::size_t input_dim, Rng& rng)
    : cfg_(validated(config)), input_dim_(input_dim) {
  primary_ = make_cell(params, prefix + ".cell", rng);
  if (cfg_.direction == Direction::kBidirect) {
    reverse_ = make_cell(params, prefix + ".cell_rev", rng);
  }
}

RnnModel::CellParams RnnModel::make_cell(ModelParameters& params,
                                         const std::string& prefix,
                                         Rng& rng) const {
  CellParams cell;
  std::size_t h = cfg_.hidden;
  if (cfg_.cell == CellKind::kFf) {
    cell.U = &params.add(prefix + ".U", glorot_uniform(h, input_dim_, rng));
    cell.V = &params.add(prefix + ".V", glorot_uniform(h, h, rng));
    return cell;
  }
  cell.Wu = &params.add(prefix + ".Wu", glorot_uniform(h, input_dim_, rng));
  cell.Uu = &params.add(prefix + ".Uu", glorot_uniform(h, h, rng));
  cell.Wr = &params.add(prefix + ".Wr", glorot_uniform(h, input_dim_, rng));
  cell.Ur = &params.add(prefix + ".Ur", glorot_uniform(h, h, rng));
  cell.Wh = &params.add(prefix + ".Wh", glorot_uniform(h, input_dim_, rng));
  cell.Uh = &params.add(prefix + ".Uh", glorot_uniform(h, h, rng));
  if (cfg_.gate_biases) {
    cell.bu = &params.add(prefix + ".bu", Tensor::zeros({h}));
    cell.br = &params.add(prefix + ".br", Tensor::zeros({h}));
    cell.bh = &params.add(prefix + ".bh", Tensor::zeros({h}));
  }
  return cell;
}

std::size_t RnnModel::output_dim() const {
  return (cfg_.direction == Direction::kBidirect ? 2 : 1) * cfg_.hidden;
}

Column RnnModel::cell_step(const Column& x, const Column& h_prev,
                           bool reverse_params) const {
  bool has_reverse = cfg_.direction == Direction::kBidirect;
  const CellParams& cell =
      (reverse_params && has_reverse) ? reverse_ : primary_;
  if (x.size() != input_dim_ || h_prev.size() != cfg_.hidden) {
    throw DimensionError("cell_step: input/hidden size mismatch");
  }
  std::size_t h = cfg_.hidden;
  Column out(h);
  if (cfg_.cell == CellKind::kFf) {
    Eigen::VectorXd z =
        matvec_plain(*cell.U, x) + matvec_plain(*cell.V, h_prev);
    for (std::size_t i = 0; i < h; ++i) out[i] = sigmoid_scalar(z[i]);
    return out;
  }
  Eigen::VectorXd u =
      matvec_plain(*cell.Wu, x) + matvec_plain(*cell.Uu, h_prev);
  Eigen::VectorXd r =
      matvec_plain(*cell.Wr, x) + matvec_plain(*cell.Ur, h_prev);
  for (std::size_t i = 0; i < h; ++i) {
    u[i] = sigmoid_scalar(u[i] + (cell.bu ? cell.bu->value[i] : 0.0));
    r[i] = sigmoid_scalar(r[i] + (cell.br ? cell.br->value[i] : 0.0));
  }
  Column gated(h);
  for (std::size_t i = 0; i < h; ++i) gated[i] = r[i] * h_prev[i];
  Eigen::VectorXd cand =
      matvec_plain(*cell.Wh, x) + matvec_plain(*cell.Uh, gated);
  for (std::size_t i = 0; i < h; ++i) {
    double c = std::tanh(cand[i] + (cell.bh ? cell.bh->value[i] : 0.0));
    out[i] = u[i] * c + (1.0 - u[i]) * h_prev[i];
  }
  return out;
}

std::vector<Column> RnnModel::run_direction(const std::vector<Column>& X,
                                            Direction direction,
                                            bool reverse_params) const {
  if (X.empty()) throw DimensionError("run_direction: empty input");
  if (direction == Direction::kBidirect) {
    std::vector<Column> fwd = run_direction(X, Direction::kForward, false);
    std::vector<Column> bwd = run_direction(X, Direction::kBackward, true);
    std::vector<Column> out(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
      out[i] = fwd[i];
      out[i].insert(out[i].end(), bwd[i].begin(), bwd[i].end());
    }
    return out;
  }
  std::vector<Column> hiddens(X.size());
  Column h(cfg_.hidden, 0.0);  // initial hidden state is zero
  if (direction == Direction::kForward) {
    for (std::size_t i = 0; i < X.size(); ++i) {
      h = cell_step(X[i], h, reverse_params);
      hiddens[i] = h;
    }
  } else {
    for (std::size_t i = X.size(); i-- > 0;) {
      h = cell_step(X[i], h, reverse_params);
      hiddens[i] = h;
    }
  }
  return hiddens;
}

std::vector<Column> RnnModel::hidden_sequence(
    const std::vector<Column>& X) const {
  return run_direction(X, cfg_.direction);
}

Value RnnModel::build_cell_step(Tape& tape, const CellParams& cell, Value x,
                                Value h_prev) const {
  if (cfg_.cell == CellKind::kFf) {
    return tape.sigmoid(tape.add(tape.matvec(tape.param(*cell.U), x),
                                 tape.matvec(tape.param(*cell.V), h_prev)));
  }
  auto with_bias = [&](Value z, Parameter* bias) {
    return bias ? tape.add(z, tape.param(*bias)) : z;
  };
  Value u = tape.sigmoid(with_bias(
      tape.add(tape.matvec(tape.param(*cell.Wu), x),
               tape.matvec(tape.param(*cell.Uu), h_prev)),
      cell.bu));
  Value r = tape.sigmoid(with_bias(
      tape.add(tape.matvec(tape.param(*cell.Wr), x),
               tape.matvec(tape.param(*cell.Ur), h_prev)),
      cell.br));
  Value cand = tape.tanh(with_bias(
      tape.add(tape.matvec(tape.param(*cell.Wh), x),
               tape.matvec(tape.param(*cell.Uh), tape.mul(r, h_prev))),
      cell.bh));
  // u . cand + (1-u) . h_prev
  return tape.add(tape.mul(u, cand), tape.sub(h_prev, tape.mul(u, h_prev)));
}

std::vector<Value> RnnModel::build_run(Tape& tape,
                                       const std::vector<Value>& columns,
                                       const CellParams& cell,
                                       bool backward) const {
  std::vector<Value> hiddens(columns.size());
  Value h = tape.constant(Tensor::zeros({cfg_.hidden}));
  if (!backward) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      h = build_cell_step(tape, cell, columns[i], h);
      hiddens[i] = h;
    }
  } else {
    for (std::size_t i = columns.size(); i-- > 0;) {
      h = build_cell_step(tape, cell, columns[i], h);
      hiddens[i] = h;
    }
  }
  return hiddens;
}

std::vector<Value> RnnModel::build_hidden_sequence(
    Tape& tape, const std::vector<Value>& columns) const {
  if (columns.empty()) throw DimensionError("rnn: empty input");
  switch (cfg_.direction) {
    case Direction::kForward:
      return build_run(tape, columns, primary_, false);
    case Direction::kBackward:
      return build_run(tape, columns, primary_, true);
    case Direction::kBidirect: {
      std::vector<Value> fwd = build_run(tape, columns, primary_, false);
      std::vector<Value> bwd = build_run(tape, columns, reverse_, true);
      std::vector<Value> out(columns.size());
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out[i] = tape.concat({fwd[i], bwd[i]});
      }
      return out;
    }
  }
  throw ConfigError("rnn: bad direction");
}

Value RnnModel::build_represent(Tape& tape, const std::vector<Value>& hiddens,
                                std::size_t head1, std::size_t head2,
                                std::size_t real_len) const {
  if (cfg_.strategy == PoolStrategy::kHead) {
    if (head1 >= hiddens.size() || head2 >= hiddens.size()) {
      throw DimensionError("represent: head index out of range");
    }
    return tape.concat({hiddens[head1], hiddens[head2]});
  }
  std::size_t limit = std::min(real_len, hiddens.size());
  if (limit == 0) throw DimensionError("represent: empty real span");
  std::vector<Value> real(hiddens.begin(),
                          hiddens.begin() + static_cast<long>(limit));
  return tape.max_elementwise(real);
}

}  // namespace renn
