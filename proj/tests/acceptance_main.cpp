// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with --criterion N to execute a single criterion.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "renn/cnn.hpp"
#include "renn/combine.hpp"
#include "renn/eval.hpp"
#include "renn/gradcheck_suite.hpp"
#include "renn/model_factory.hpp"
#include "renn/systems.hpp"
#include "renn/trainer.hpp"

using namespace renn;

namespace {

struct Criterion {
  int number;
  std::string summary;
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back(what);
    }
  }
};

std::string format(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ---------------------------------------------------------------------------
// shared desk-scale setup

ModelSpec desk_spec(const std::string& kind) {
  ModelSpec s;
  s.kind = kind;
  s.tables.word_dim = 24;
  s.tables.dist_dim = 8;
  s.tables.label_dim = 8;
  s.cnn.window_sizes = {2, 3};
  s.cnn.maps_per_window = 24;
  s.cnn.mlp_hidden = {32};
  s.rnn.hidden = 32;
  s.rnn.mlp_hidden = {32};
  s.dropout_rate = 0.5;
  s.cnn.dropout_rate = 0.5;
  s.rnn.dropout_rate = 0.5;
  return s;
}

struct DeskData {
  std::vector<RelationMention> train_set;
  std::vector<RelationMention> dev_set;

  DeskData() {
    SynthSpec spec;  // 4 classes + negative, seed fixed
    spec.classes = 4;
    spec.vocab = 120;
    spec.pattern_length = 3;
    spec.size = 2400;
    spec.seed = 42;
    spec.negative_fraction = 0.2;
    std::vector<RelationMention> all = generate_synthetic(spec);
    train_set.assign(all.begin(), all.begin() + 2000);
    dev_set.assign(all.begin() + 2000, all.end());
  }
};

double dev_f1(Predictor& model, const std::vector<RelationMention>& dev) {
  std::vector<std::size_t> gold, preds;
  for (const auto& m : dev) {
    gold.push_back(model.labels().index_of(m.gold_class));
    preds.push_back(model.predict_class(m));
  }
  return score(preds, gold, model.labels()).f1;
}

// ---------------------------------------------------------------------------
// criterion 1: gradient correctness

Criterion criterion_1() {
  Criterion c{1, "gradient correctness for every model variant"};
  GradCheckSuiteResult r = run_gradcheck_suite(1e-5, 1e-4);
  c.require(r.cases.size() >= 16, "expected at least 16 variants");
  std::set<std::string> names;
  for (const auto& cs : r.cases) {
    names.insert(cs.name);
    c.require(cs.report.ok(), cs.name + " flagged entries beyond 1e-4");
  }
  c.require(names.count("cnn") == 1, "cnn variant missing");
  for (const char* cell : {"ff", "gru"}) {
    for (const char* dir : {"forward", "backward", "bidirect"}) {
      for (const char* strat : {"head", "max"}) {
        std::string name = std::string("rnn-") + cell + "-" + dir + "-" + strat;
        c.require(names.count(name) == 1, name + " variant missing");
      }
    }
  }
  c.require(names.count("stack-rnn-cnn") == 1, "stack-rnn-cnn missing");
  c.require(names.count("stack-cnn-rnn") == 1, "stack-cnn-rnn missing");
  c.require(names.count("hybrid-cnn-loglinear") == 1, "hybrid missing");
  c.require(r.max_rel_err < 1e-4,
            format("max relative error %.3e", r.max_rel_err));
  c.require(r.seconds < 60.0, format("runtime %.1fs exceeds 60s", r.seconds));
  c.notes.push_back(
      format("max_rel_err=%.3e, runtime=%.2fs", r.max_rel_err, r.seconds));
  return c;
}

// ---------------------------------------------------------------------------
// criterion 2: oracle equivalence

std::vector<double> conv_brute_force(const std::vector<Column>& X,
                                     const Tensor& f, double b, bool same) {
  std::size_t k = f.rows(), dim = f.cols();
  std::size_t pl = same ? k / 2 : 0;
  std::size_t pr = same ? k - 1 - k / 2 : 0;
  std::vector<Column> padded;
  for (std::size_t i = 0; i < pl; ++i) padded.push_back(Column(dim, 0.0));
  for (const Column& col : X) padded.push_back(col);
  for (std::size_t i = 0; i < pr; ++i) padded.push_back(Column(dim, 0.0));
  std::vector<double> out;
  for (std::size_t i = 0; i + k <= padded.size(); ++i) {
    double acc = b;
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t d = 0; d < dim; ++d) {
        acc += f.at(j, d) * padded[i + j][d];
      }
    }
    out.push_back(std::tanh(acc));
  }
  return out;
}

std::size_t vote_brute_force(const VoteBallot& ballots) {
  std::size_t classes = 0;
  for (const auto& b : ballots) classes = std::max(classes, b.predicted + 1);
  std::vector<int> votes(classes, 0);
  for (const auto& b : ballots) votes[b.predicted]++;
  int top = *std::max_element(votes.begin(), votes.end());
  std::size_t winner = classes;
  double winner_p = -1.0;
  for (std::size_t cls = 0; cls < classes; ++cls) {
    if (votes[cls] != top) continue;
    double max_p = -1.0;
    for (const auto& b : ballots) {
      if (b.predicted == cls) max_p = std::max(max_p, b.dist.probs[cls]);
    }
    if (max_p > winner_p) {
      winner_p = max_p;
      winner = cls;
    }
  }
  return winner;
}

Criterion criterion_2() {
  Criterion c{2, "oracle equivalence (conv, vote, products)"};
  Rng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 1 + rng.uniform_index(5);
    std::size_t k = 1 + rng.uniform_index(5);
    std::size_t n = k + rng.uniform_index(12);
    std::vector<Column> X(n, Column(dim));
    for (auto& col : X) {
      for (double& v : col) v = rng.uniform(-1.5, 1.5);
    }
    Tensor f = Tensor::random_uniform({k, dim}, -1.0, 1.0, rng);
    double b = rng.uniform(-0.5, 0.5);
    bool same = rng.bernoulli(0.5);
    std::vector<double> got =
        conv_scores(X, f, b, same ? ConvMode::kSame : ConvMode::kValid);
    std::vector<double> want = conv_brute_force(X, f, b, same);
    c.require(got.size() == want.size(), "conv length mismatch");
    for (std::size_t i = 0; i < got.size(); ++i) {
      c.require(std::abs(got[i] - want[i]) <= 1e-12,
                "conv mismatch beyond 1e-12");
    }
  }

  // all prediction tuples over 4 models x 3 classes
  for (std::size_t t = 0; t < 81; ++t) {
    std::size_t code = t;
    VoteBallot ballots;
    for (std::size_t model = 0; model < 4; ++model) {
      std::size_t pred = code % 3;
      code /= 3;
      std::vector<double> p(3, 0.15);
      p[pred] = 0.3 + 0.11 * static_cast<double>(model) +
                0.03 * static_cast<double>(pred);
      double z = p[0] + p[1] + p[2];
      for (double& v : p) v /= z;
      ballots.push_back(BallotEntry{pred, ClassDistribution{p}});
    }
    c.require(majority_vote(ballots) == vote_brute_force(ballots),
              "vote mismatch on tuple " + std::to_string(t));
  }

  for (int trial = 0; trial < 200; ++trial) {
    std::size_t classes = 2 + rng.uniform_index(4);
    std::size_t members = 2 + rng.uniform_index(3);
    std::vector<ClassDistribution> dists;
    std::vector<double> hand(classes, 1.0);
    for (std::size_t m = 0; m < members; ++m) {
      std::vector<double> p(classes);
      double z = 0.0;
      for (double& v : p) {
        v = rng.uniform(0.01, 1.0);
        z += v;
      }
      for (double& v : p) v /= z;
      for (std::size_t i = 0; i < classes; ++i) hand[i] *= p[i];
      dists.push_back(ClassDistribution{p});
    }
    double z = 0.0;
    for (double v : hand) z += v;
    for (double& v : hand) v /= z;
    ClassDistribution got = ensemble(dists);
    for (std::size_t i = 0; i < classes; ++i) {
      c.require(std::abs(got.probs[i] - hand[i]) <= 1e-12,
                "product mismatch beyond 1e-12");
    }
    // the tape route used by joint hybrid training
    Tape tape;
    Value prod = tape.constant_vector(dists[0].probs);
    for (std::size_t m = 1; m < members; ++m) {
      prod = tape.mul(prod, tape.constant_vector(dists[m].probs));
    }
    const Tensor& graph = tape.value(tape.normalize(prod));
    for (std::size_t i = 0; i < classes; ++i) {
      c.require(std::abs(graph[i] - hand[i]) <= 1e-12,
                "graph product mismatch beyond 1e-12");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 3: shape and structure invariants

Criterion criterion_3() {
  Criterion c{3, "shape/structure invariants"};
  // same-length hidden sequences for k in {2..5}, n in {5..40}
  for (std::size_t k : {2, 3, 4, 5}) {
    ModelParameters mp;
    ConvConfig cfg;
    cfg.window_sizes = {k};
    cfg.maps_per_window = 2;
    Rng rng(1003);
    CnnModel cnn(mp, "cnn", cfg, 3, rng);
    for (std::size_t n = 5; n <= 40; ++n) {
      Tape tape;
      std::vector<Value> cols;
      for (std::size_t i = 0; i < n; ++i) {
        cols.push_back(tape.constant(Tensor::vector({0.3, -0.1, 0.2})));
      }
      c.require(cnn.build_hidden_sequence(tape, cols).size() == n,
                "hidden sequence length != n for k=" + std::to_string(k));
    }
  }

  // bidirectional dimension and exact reversal identity
  {
    ModelParameters mp;
    RnnConfig cfg;
    cfg.hidden = 7;
    cfg.direction = Direction::kBidirect;
    Rng rng(1004);
    RnnModel rnn(mp, "rnn", cfg, 4, rng);
    std::vector<Column> X(9, Column(4));
    for (auto& col : X) {
      for (double& v : col) v = rng.uniform(-1.0, 1.0);
    }
    for (const Column& h : rnn.hidden_sequence(X)) {
      c.require(h.size() == 14, "bidirectional dimension != 2 x hidden");
    }
    ModelParameters mp2;
    RnnConfig fwd_cfg;
    fwd_cfg.hidden = 7;
    Rng rng2(1005);
    RnnModel fwd(mp2, "rnn", fwd_cfg, 4, rng2);
    std::vector<Column> backward = fwd.run_direction(X, Direction::kBackward);
    std::vector<Column> reversed(X.rbegin(), X.rend());
    std::vector<Column> fr = fwd.run_direction(reversed, Direction::kForward);
    std::vector<Column> want(fr.rbegin(), fr.rend());
    c.require(backward == want, "backward != reverse(forward(reverse))");
  }

  // DEP views against an independent BFS oracle on 1000 random trees
  Rng rng(1006);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 2 + rng.uniform_index(12);
    RelationMention m;
    m.id = "t" + std::to_string(trial);
    for (std::size_t i = 0; i < n; ++i) {
      m.tokens.push_back("w" + std::to_string(i));
    }
    m.entity_types.assign(n, "O");
    m.chunks.assign(n, "B-NP");
    for (std::size_t i = 1; i < n; ++i) {
      m.dep_edges.push_back({rng.uniform_index(i), i, "d"});
    }
    m.head1 = rng.uniform_index(n);
    m.head2 = rng.uniform_index(n);
    if (m.head1 == m.head2) m.head2 = (m.head2 + 1) % n;
    m.gold_class = "R0";

    // oracle: BFS parent chase
    std::vector<std::vector<std::size_t>> nb(n);
    for (const DepEdge& e : m.dep_edges) {
      nb[e.gov].push_back(e.dep);
      nb[e.dep].push_back(e.gov);
    }
    std::vector<long> parent(n, -2);
    std::vector<std::size_t> queue{m.head1};
    parent[m.head1] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (std::size_t v : nb[queue[qi]]) {
        if (parent[v] == -2) {
          parent[v] = static_cast<long>(queue[qi]);
          queue.push_back(v);
        }
      }
    }
    std::vector<std::size_t> want;
    for (long cur = static_cast<long>(m.head2); cur != -1;
         cur = parent[static_cast<std::size_t>(cur)]) {
      want.push_back(static_cast<std::size_t>(cur));
    }
    std::sort(want.begin(), want.end());
    SentenceView view = build_view(m, ViewKind::kDep);
    c.require(view.indices == want, "DEP view disagrees with the BFS oracle");
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 4: distribution invariants

Criterion criterion_4() {
  Criterion c{4, "distribution invariants"};
  SynthSpec synth;
  synth.classes = 3;
  synth.vocab = 50;
  synth.pattern_length = 2;
  synth.size = 35;
  synth.seed = 1007;
  synth.negative_fraction = 0.2;
  std::vector<RelationMention> corpus = generate_synthetic(synth);

  ModelSpec spec = desk_spec("cnn");
  spec.tables.word_dim = 6;
  spec.tables.dist_dim = 3;
  spec.tables.label_dim = 3;
  spec.cnn.maps_per_window = 3;
  spec.cnn.mlp_hidden = {6};
  spec.rnn.hidden = 6;
  spec.rnn.mlp_hidden = {6};

  std::size_t checked = 0;
  const char* kinds[] = {"cnn", "rnn", "stack-rnn-cnn", "stack-cnn-rnn",
                         "loglinear", "hybrid"};
  for (const char* kind : kinds) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ModelSpec s = spec;
      s.kind = kind;
      Rng rng(seed * 31 + 7);
      std::unique_ptr<Classifier> model = build_classifier(s, corpus, {}, rng);
      for (const auto& m : corpus) {
        ClassDistribution d = model->predict(m);
        double sum = 0.0;
        for (double p : d.probs) {
          c.require(p >= 0.0, "negative probability");
          sum += p;
        }
        c.require(std::abs(sum - 1.0) <= 1e-6, "distribution sum beyond 1e-6");
        ++checked;
      }
    }
  }
  c.require(checked >= 1000,
            "only " + std::to_string(checked) + " model outputs checked");
  c.notes.push_back(format("%zu random model outputs", checked));

  Rng rng(1008);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> z(4);
    for (double& v : z) v = rng.uniform(-6.0, 6.0);
    double shift = rng.uniform(-50.0, 50.0);
    std::vector<double> shifted = z;
    for (double& v : shifted) v += shift;
    ClassDistribution a = softmax(z);
    ClassDistribution b = softmax(shifted);
    for (std::size_t i = 0; i < z.size(); ++i) {
      c.require(std::abs(a.probs[i] - b.probs[i]) <= 1e-12,
                "softmax shift variance beyond 1e-12");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 5: optimizer oracle

Criterion criterion_5() {
  Criterion c{5, "AdaDelta reaches |theta| < 1e-3 on theta^2 in 500 steps"};
  const double rho = 0.95, eps = 1e-6;
  // scripted recurrence
  double theta = 1.0, eg = 0.0, ed = 0.0;
  std::vector<double> trace;
  for (int t = 0; t < 500; ++t) {
    double g = 2.0 * theta;
    eg = rho * eg + (1 - rho) * g * g;
    double delta = -std::sqrt((ed + eps) / (eg + eps)) * g;
    ed = rho * ed + (1 - rho) * delta * delta;
    theta += delta;
    trace.push_back(theta);
  }
  c.require(std::abs(theta) < 1e-3, "scripted recurrence did not converge");

  ModelParameters mp;
  Parameter& p = mp.add("theta", Tensor::vector({1.0}));
  std::vector<Parameter*> params = mp.pointers();
  AdaDeltaState state = AdaDeltaState::for_parameters(params);
  bool reached = false;
  for (int t = 0; t < 500; ++t) {
    p.grad[0] = 2.0 * p.value[0];
    adadelta_step(params, state, rho, eps);
    c.require(p.value[0] == trace[static_cast<std::size_t>(t)],
              "implementation deviates from the scripted recurrence");
    if (std::abs(p.value[0]) < 1e-3) reached = true;
  }
  c.require(reached, "implementation did not reach |theta| < 1e-3");
  c.notes.push_back(format("final |theta| = %.3e", std::abs(p.value[0])));
  return c;
}

// ---------------------------------------------------------------------------
// criterion 6 (+ mechanics observers for criterion 8)

struct MechanicsLog {
  bool max_norm_ok = true;
  bool permutation_ok = true;
  std::size_t batches = 0;
  std::map<std::size_t, std::vector<std::size_t>> epoch_examples;

  TrainObserver observer(std::size_t corpus_size, double threshold) {
    TrainObserver obs;
    obs.on_batch = [this, corpus_size, threshold](
                       std::size_t epoch, std::size_t batch,
                       const std::vector<std::size_t>& idx,
                       const std::vector<Parameter*>& params) {
      (void)batch;
      ++batches;
      auto& seen = epoch_examples[epoch];
      seen.insert(seen.end(), idx.begin(), idx.end());
      if (seen.size() == corpus_size) {
        std::set<std::size_t> unique(seen.begin(), seen.end());
        if (unique.size() != corpus_size) permutation_ok = false;
        seen.clear();
        epoch_examples.erase(epoch);
      }
      for (const Parameter* p : params) {
        if (!p->max_norm_target || p->value.rank() != 2) continue;
        std::size_t cols = p->value.cols();
        for (std::size_t r = 0; r < p->value.rows(); ++r) {
          double sq = 0.0;
          for (std::size_t ci = 0; ci < cols; ++ci) {
            double v = p->value.at(r, ci);
            sq += v * v;
          }
          if (std::sqrt(sq) > threshold + 1e-9) max_norm_ok = false;
        }
      }
    };
    return obs;
  }
};

struct TrainedModel {
  std::string name;
  std::unique_ptr<Classifier> model;
  double f1 = 0.0;
  double seconds = 0.0;
};

TrainedModel train_one(const std::string& name, const ModelSpec& spec,
                       const DeskData& data, MechanicsLog* mech) {
  TrainedModel out;
  out.name = name;
  TrainConfig tc;
  tc.epochs = 30;
  tc.seed = 7;
  tc.target_dev_f1 = 0.95;
  Rng rng(1009);
  double t0 = now_seconds();
  out.model = build_classifier(spec, data.train_set, {&data.dev_set}, rng);
  TrainObserver obs;
  if (mech) obs = mech->observer(data.train_set.size(), tc.max_norm);
  train(*out.model, data.train_set, &data.dev_set, tc, mech ? &obs : nullptr);
  out.seconds = now_seconds() - t0;
  out.f1 = dev_f1(*out.model, data.dev_set);
  return out;
}

Criterion criterion_6(MechanicsLog* mech = nullptr) {
  Criterion c{6, "desk-scale learning reaches dev F1 >= 0.95"};
  DeskData data;

  ModelSpec fwd = desk_spec("rnn");
  ModelSpec bwd = desk_spec("rnn");
  bwd.rnn.direction = Direction::kBackward;
  ModelSpec bidi = desk_spec("rnn");
  bidi.rnn.direction = Direction::kBidirect;
  ModelSpec hyb_cnn = desk_spec("hybrid");
  hyb_cnn.hybrid_network = "cnn";
  ModelSpec hyb_bidi = desk_spec("hybrid");
  hyb_bidi.hybrid_network = "rnn";
  hyb_bidi.rnn.direction = Direction::kBidirect;
  ModelSpec hyb_bwd = desk_spec("hybrid");
  hyb_bwd.hybrid_network = "rnn";
  hyb_bwd.rnn.direction = Direction::kBackward;

  std::vector<TrainedModel> trained;
  trained.push_back(train_one("CNN", desk_spec("cnn"), data, mech));
  trained.push_back(train_one("FORWARD", fwd, data, mech));
  trained.push_back(train_one("BACKWARD", bwd, data, mech));
  trained.push_back(train_one("BIDIRECT", bidi, data, mech));
  trained.push_back(
      train_one("STACK-FORWARD", desk_spec("stack-cnn-rnn"), data, mech));
  trained.push_back(
      train_one("FORWARD-CNN", desk_spec("stack-rnn-cnn"), data, mech));
  trained.push_back(train_one("HYBRID-CNN", hyb_cnn, data, mech));
  trained.push_back(train_one("HYBRID-BIDIRECT", hyb_bidi, data, mech));
  trained.push_back(train_one("HYBRID-BACKWARD", hyb_bwd, data, mech));

  auto& cnn = trained[0];
  auto& forward = trained[1];
  auto& backward = trained[2];
  auto& bidirect = trained[3];
  auto& hybrid_cnn = trained[6];
  auto& hybrid_bidi = trained[7];
  auto& hybrid_bwd = trained[8];

  for (const TrainedModel& t : trained) {
    c.require(t.f1 >= 0.95, format("%s F1 %.4f below 0.95", t.name.c_str(),
                                   t.f1));
    c.require(t.seconds < 300.0,
              format("%s took %.1fs", t.name.c_str(), t.seconds));
    c.notes.push_back(
        format("%s F1=%.4f (%.2fs)", t.name.c_str(), t.f1, t.seconds));
  }

  // separately trained members, voted at inference
  VotingSystem vote_bidi({cnn.model.get(), bidirect.model.get()});
  VotingSystem vote_bwd({cnn.model.get(), backward.model.get()});
  double f_vote_bidi = dev_f1(vote_bidi, data.dev_set);
  double f_vote_bwd = dev_f1(vote_bwd, data.dev_set);
  c.require(f_vote_bidi >= 0.95, "VOTE-BIDIRECT below 0.95");
  c.require(f_vote_bwd >= 0.95, "VOTE-BACKWARD below 0.95");
  c.notes.push_back(format("VOTE-BIDIRECT F1=%.4f", f_vote_bidi));
  c.notes.push_back(format("VOTE-BACKWARD F1=%.4f", f_vote_bwd));

  // hybrid-voting: network, its jointly trained hybrid, a second network,
  // and that network's hybrid
  VotingSystem hv_bidi({cnn.model.get(), hybrid_cnn.model.get(),
                        bidirect.model.get(), hybrid_bidi.model.get()});
  VotingSystem hv_bwd({cnn.model.get(), hybrid_cnn.model.get(),
                       backward.model.get(), hybrid_bwd.model.get()});
  struct HvCase {
    const char* name;
    VotingSystem* system;
    std::vector<const TrainedModel*> members;
  };
  HvCase cases[] = {
      {"HYBRID-VOTING-BIDIRECT", &hv_bidi,
       {&cnn, &hybrid_cnn, &bidirect, &hybrid_bidi}},
      {"HYBRID-VOTING-BACKWARD", &hv_bwd,
       {&cnn, &hybrid_cnn, &backward, &hybrid_bwd}},
  };
  for (const HvCase& hv : cases) {
    double f = dev_f1(*hv.system, data.dev_set);
    double best_member = 0.0;
    for (const TrainedModel* m : hv.members) {
      best_member = std::max(best_member, m->f1);
    }
    c.require(f >= 0.95, std::string(hv.name) + " below 0.95");
    c.require(f >= best_member - 0.02,
              format("%s F1 %.4f trails its best member %.4f by more than "
                     "0.02",
                     hv.name, f, best_member));
    c.notes.push_back(
        format("%s F1=%.4f best_member=%.4f", hv.name, f, best_member));
  }

  (void)forward;
  return c;
}

// ---------------------------------------------------------------------------
// criterion 7: determinism

Criterion criterion_7() {
  Criterion c{7, "identical seeds give bitwise-identical artifacts"};
  DeskData data;
  std::vector<RelationMention> small_train(data.train_set.begin(),
                                           data.train_set.begin() + 400);
  std::vector<RelationMention> small_dev(data.dev_set.begin(),
                                         data.dev_set.begin() + 100);
  auto run = [&](const std::string& tag) {
    ModelSpec spec = desk_spec("cnn");
    TrainConfig tc;
    tc.epochs = 3;
    tc.seed = 97;
    tc.metrics_csv = "/tmp/renn_acc7_" + tag + ".csv";
    Rng rng(tc.seed, 0x03);
    auto model = build_classifier(spec, small_train, {&small_dev}, rng);
    train(*model, small_train, &small_dev, tc);
    save_classifier("/tmp/renn_acc7_" + tag + ".ckpt", *model);
  };
  run("a");
  run("b");
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  std::string ck_a = slurp("/tmp/renn_acc7_a.ckpt");
  c.require(!ck_a.empty(), "checkpoint missing");
  c.require(ck_a == slurp("/tmp/renn_acc7_b.ckpt"),
            "checkpoints differ between identical-seed runs");
  c.require(slurp("/tmp/renn_acc7_a.csv") == slurp("/tmp/renn_acc7_b.csv"),
            "metrics CSVs differ between identical-seed runs");
  for (const char* t : {"a", "b"}) {
    std::remove(("/tmp/renn_acc7_" + std::string(t) + ".ckpt").c_str());
    std::remove(("/tmp/renn_acc7_" + std::string(t) + ".csv").c_str());
  }
  return c;
}

// ---------------------------------------------------------------------------
// criterion 8: training mechanics during a desk-scale learning run

Criterion criterion_8() {
  Criterion c{8, "training mechanics hold during learning runs"};
  DeskData data;
  MechanicsLog mech;
  ModelSpec spec = desk_spec("cnn");
  TrainConfig tc;
  tc.epochs = 5;
  tc.seed = 7;
  Rng rng(1009);
  auto model = build_classifier(spec, data.train_set, {&data.dev_set}, rng);
  TrainObserver obs = mech.observer(data.train_set.size(), tc.max_norm);
  train(*model, data.train_set, &data.dev_set, tc, &obs);
  c.require(mech.batches == 5 * ((2000 + 49) / 50), "unexpected batch count");
  c.require(mech.max_norm_ok,
            "a targeted row exceeded the max-norm threshold after a step");
  c.require(mech.permutation_ok, "an epoch was not a permutation");

  // inverted-dropout expectation on 1e5 samples
  Rng drop_rng(1010);
  std::vector<double> v(100000, 1.0);
  std::vector<double> dropped = apply_dropout(v, 0.5, RunMode::kTrain,
                                              drop_rng);
  std::size_t survivors = 0;
  double sum = 0.0;
  for (double x : dropped) {
    if (x != 0.0) ++survivors;
    sum += x;
  }
  double fraction = static_cast<double>(survivors) / 100000.0;
  double mean = sum / 100000.0;
  c.require(std::abs(fraction - 0.5) <= 0.01,
            format("survivor fraction %.4f", fraction));
  c.require(std::abs(mean - 1.0) <= 0.02,
            format("dropout mean %.4f off by more than 2%%", mean));
  c.notes.push_back(format("survivors=%.4f, mean=%.4f", fraction, mean));
  return c;
}

void report(const Criterion& c, int& failures) {
  std::printf("[%s] criterion %d: %s\n", c.passed ? "PASS" : "FAIL", c.number,
              c.summary.c_str());
  for (const std::string& note : c.notes) {
    std::printf("        %s\n", note.c_str());
  }
  if (!c.passed) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }

  int failures = 0;
  auto want = [&](int n) { return only == 0 || only == n; };
  if (want(1)) report(criterion_1(), failures);
  if (want(2)) report(criterion_2(), failures);
  if (want(3)) report(criterion_3(), failures);
  if (want(4)) report(criterion_4(), failures);
  if (want(5)) report(criterion_5(), failures);
  if (want(6)) {
    // criterion-8 observers ride along on every criterion-6 training
    MechanicsLog mech;
    Criterion c = criterion_6(&mech);
    c.require(mech.max_norm_ok, "max-norm violated during learning runs");
    c.require(mech.permutation_ok, "epoch permutation violated");
    report(c, failures);
  }
  if (want(7)) report(criterion_7(), failures);
  if (want(8)) report(criterion_8(), failures);
  return failures == 0 ? 0 : 1;
}
