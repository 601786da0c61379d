#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "renn/errors.hpp"
#include "renn/rnn.hpp"
#include "renn/rng.hpp"

using namespace renn;

namespace {

RnnModel make_model(ModelParameters& mp, RnnConfig cfg, std::size_t input_dim,
                    std::uint64_t seed = 21) {
  Rng rng(seed);
  cfg.classes = 2;  // unused by the encoder itself
  return RnnModel(mp, "rnn", cfg, input_dim, rng);
}

std::vector<Column> random_columns(std::size_t n, std::size_t dim, Rng& rng) {
  std::vector<Column> out(n, Column(dim));
  for (auto& col : out) {
    for (double& v : col) v = rng.uniform(-1.0, 1.0);
  }
  return out;
}

void zero_params(ModelParameters& mp) {
  for (Parameter* p : mp.pointers()) p->value.fill(0.0);
}

}  // namespace

TEST_CASE("GRU with all-zero weights is a zero fixed point") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.hidden = 3;
  RnnModel model = make_model(mp, cfg, 2);
  zero_params(mp);
  Column h = model.cell_step({0.7, -0.3}, {0.0, 0.0, 0.0});
  for (double v : h) CHECK(v == 0.0);  // u = r = 0.5, cand = 0, h = 0
}

TEST_CASE("FF with zero weights yields sigmoid(0) everywhere") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.cell = CellKind::kFf;
  cfg.hidden = 4;
  RnnModel model = make_model(mp, cfg, 3);
  zero_params(mp);
  Column h = model.cell_step({1.0, 2.0, 3.0}, Column(4, 0.6));
  for (double v : h) CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("1-dim GRU hand evaluation") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.hidden = 1;
  RnnModel model = make_model(mp, cfg, 1);
  zero_params(mp);
  mp.get("rnn.cell.Wh").value[0] = 1.0;
  Column h = model.cell_step({1.0}, {0.0});
  // u = 0.5, cand = tanh(1) ~ 0.76159, h = 0.5 * cand ~ 0.38080
  CHECK(h[0] == doctest::Approx(0.5 * std::tanh(1.0)).epsilon(1e-12));
  CHECK(h[0] == doctest::Approx(0.38080).epsilon(1e-4));
}

TEST_CASE("backward equals reverse-forward-reverse with shared weights") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.hidden = 5;
  cfg.direction = Direction::kForward;
  RnnModel model = make_model(mp, cfg, 3);
  Rng rng(31);
  std::vector<Column> X = random_columns(7, 3, rng);

  std::vector<Column> bwd = model.run_direction(X, Direction::kBackward);
  std::vector<Column> reversed(X.rbegin(), X.rend());
  std::vector<Column> fwd = model.run_direction(reversed, Direction::kForward);
  std::vector<Column> fwd_rev(fwd.rbegin(), fwd.rend());
  CHECK(bwd == fwd_rev);  // exact equality
}

TEST_CASE("bidirectional output dimensionality is twice the hidden size") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.hidden = 6;
  cfg.direction = Direction::kBidirect;
  RnnModel model = make_model(mp, cfg, 2);
  CHECK(model.output_dim() == 12);
  Rng rng(32);
  std::vector<Column> X = random_columns(4, 2, rng);
  for (const Column& h : model.hidden_sequence(X)) CHECK(h.size() == 12);
}

TEST_CASE("single-step forward and backward agree with shared weights") {
  ModelParameters mp;
  RnnConfig cfg;
  cfg.hidden = 4;
  RnnModel model = make_model(mp, cfg, 3);
  Rng rng(33);
  std::vector<Column> X = random_columns(1, 3, rng);
  CHECK(model.run_direction(X, Direction::kForward) ==
        model.run_direction(X, Direction::kBackward));
}

TEST_CASE("represent HEAD concatenates the head hidden vectors") {
  std::vector<Column> hiddens = {{1, 2}, {3, 4}, {5, 6}, {7, 8}};
  Column v = represent(hiddens, PoolStrategy::kHead, 0, 2, 4);
  CHECK(v == Column{1, 2, 5, 6});
}

TEST_CASE("represent MAX examples") {
  std::vector<Column> hiddens = {{1, 4}, {3, 2}};
  CHECK(represent(hiddens, PoolStrategy::kMax, 0, 1, 2) == Column{3, 4});
  std::vector<Column> same = {{0.5, -1}, {0.5, -1}, {0.5, -1}};
  CHECK(represent(same, PoolStrategy::kMax, 0, 1, 3) == Column{0.5, -1});
}

TEST_CASE("represent MAX is invariant under permutations of the hiddens") {
  Rng rng(34);
  std::vector<Column> hiddens = random_columns(8, 3, rng);
  Column base = represent(hiddens, PoolStrategy::kMax, 0, 1, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Column> shuffled = hiddens;
    rng.shuffle(shuffled);
    CHECK(represent(shuffled, PoolStrategy::kMax, 0, 1, 8) == base);
  }
}

TEST_CASE("represent MAX excludes PAD positions") {
  std::vector<Column> hiddens = {{1, 1}, {2, 0}, {9, 9}};
  CHECK(represent(hiddens, PoolStrategy::kMax, 0, 1, 2) == Column{2, 1});
}

TEST_CASE("represent rejects out-of-range heads") {
  std::vector<Column> hiddens = {{1, 2}};
  CHECK_THROWS_AS(represent(hiddens, PoolStrategy::kHead, 0, 5, 1),
                  DimensionError);
}

TEST_CASE("graph hidden sequence equals the plain path") {
  for (CellKind cell : {CellKind::kFf, CellKind::kGru}) {
    for (Direction dir : {Direction::kForward, Direction::kBackward,
                          Direction::kBidirect}) {
      ModelParameters mp;
      RnnConfig cfg;
      cfg.cell = cell;
      cfg.direction = dir;
      cfg.hidden = 4;
      RnnModel model = make_model(mp, cfg, 3);
      Rng rng(35);
      std::vector<Column> X = random_columns(5, 3, rng);
      std::vector<Column> plain = model.hidden_sequence(X);
      Tape tape;
      std::vector<Value> cols;
      for (const Column& c : X) cols.push_back(tape.constant_vector(c));
      std::vector<Value> graph = model.build_hidden_sequence(tape, cols);
      REQUIRE(graph.size() == plain.size());
      for (std::size_t i = 0; i < plain.size(); ++i) {
        const Tensor& g = tape.value(graph[i]);
        REQUIRE(g.size() == plain[i].size());
        for (std::size_t j = 0; j < plain[i].size(); ++j) {
          CHECK(g[j] == doctest::Approx(plain[i][j]).epsilon(1e-14));
        }
      }
    }
  }
}
