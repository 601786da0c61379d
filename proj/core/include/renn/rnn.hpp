#pragma once

#include <string>
#include <vector>

#include "renn/autodiff.hpp"
#include "renn/featurize.hpp"
#include "renn/mlp.hpp"
#include "renn/parameters.hpp"

namespace renn {

enum class CellKind { kFf, kGru };
enum class Direction { kForward, kBackward, kBidirect };
enum class PoolStrategy { kHead, kMax };

std::string to_string(CellKind c);
std::string to_string(Direction d);
std::string to_string(PoolStrategy s);
CellKind cell_kind_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);
PoolStrategy pool_strategy_from_string(const std::string& s);

struct RnnConfig {
  CellKind cell = CellKind::kGru;
  Direction direction = Direction::kForward;
  PoolStrategy strategy = PoolStrategy::kMax;
  std::size_t hidden = 300;
  std::vector<std::size_t> mlp_hidden = {300};
  double dropout_rate = 0.5;
  std::size_t classes = 0;
  /// GRU gate biases exist as zero-initialized parameters; set false to
  /// drop them entirely.
  bool gate_biases = true;
};

/// HEAD: concatenation of the hidden vectors at the two head positions.
/// MAX: dimensionwise maximum over the first `real_len` hidden vectors
/// (PAD positions are excluded from the maximum).
Column represent(const std::vector<Column>& hiddens, PoolStrategy strategy,
                 std::size_t head1, std::size_t head2, std::size_t real_len);

/// Recurrent sequence encoder. FF cell: h = sigmoid(U x + V h_prev). GRU
/// cell: u = sigmoid(Wu x + Uu h + bu), r = sigmoid(Wr x + Ur h + br),
/// cand = tanh(Wh x + Uh (r . h) + bh), h = u . cand + (1-u) . h_prev.
/// Gate biases exist as parameters and default to zero. Initial hidden
/// states are zero. The bidirectional direction runs independent forward and
/// backward parameter sets and concatenates the two hidden vectors at each
/// position. Heads live in the owning classifier.
class RnnModel {
 public:
  RnnModel(ModelParameters& params, const std::string& prefix,
           const RnnConfig& config, std::size_t input_dim, Rng& rng);

  const RnnConfig& config() const { return cfg_; }
  std::size_t input_dim() const { return input_dim_; }
  /// hidden (forward/backward) or 2*hidden (bidirectional)
  std::size_t output_dim() const;

  /// One plain-path cell application. `reverse_params` selects the backward
  /// parameter set of a bidirectional model (ignored otherwise).
  Column cell_step(const Column& x, const Column& h_prev,
                   bool reverse_params = false) const;

  /// Plain-path recurrence: forward recurs 1..n, backward n..1; both return
  /// position-aligned hidden sequences. Bidirect concatenates a forward run
  /// of the primary set with a backward run of the reverse set (or of the
  /// primary set again when the model has only one set).
  std::vector<Column> run_direction(const std::vector<Column>& X,
                                    Direction direction,
                                    bool reverse_params = false) const;

  /// Plain-path positionwise hidden sequence per the configured direction.
  std::vector<Column> hidden_sequence(const std::vector<Column>& X) const;

  /// Tape equivalent of hidden_sequence().
  std::vector<Value> build_hidden_sequence(
      Tape& tape, const std::vector<Value>& columns) const;

  /// Tape-side representation vector (HEAD concat or masked MAX).
  Value build_represent(Tape& tape, const std::vector<Value>& hiddens,
                        std::size_t head1, std::size_t head2,
                        std::size_t real_len) const;

 private:
  struct CellParams {
    // FF
    Parameter* U = nullptr;
    Parameter* V = nullptr;
    // GRU
    Parameter* Wu = nullptr;
    Parameter* Uu = nullptr;
    Parameter* Wr = nullptr;
    Parameter* Ur = nullptr;
    Parameter* Wh = nullptr;
    Parameter* Uh = nullptr;
    Parameter* bu = nullptr;
    Parameter* br = nullptr;
    Parameter* bh = nullptr;
  };
  CellParams make_cell(ModelParameters& params, const std::string& prefix,
                       Rng& rng) const;
  Value build_cell_step(Tape& tape, const CellParams& cell, Value x,
                        Value h_prev) const;
  std::vector<Value> build_run(Tape& tape, const std::vector<Value>& columns,
                               const CellParams& cell, bool backward) const;

  RnnConfig cfg_;
  std::size_t input_dim_;
  CellParams primary_;
  CellParams reverse_;  // bidirectional only
};

}  // namespace renn
