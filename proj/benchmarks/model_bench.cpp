// Micro-benchmarks for the hot paths: the convolution kernel, recurrent
// steps, whole-model forward/backward graphs, and the optimizer update.

#include <benchmark/benchmark.h>

#include "renn/gradcheck_suite.hpp"
#include "renn/model_factory.hpp"
#include "renn/trainer.hpp"

namespace {

using namespace renn;

std::vector<Column> random_columns(std::size_t n, std::size_t dim, Rng& rng) {
  std::vector<Column> out(n, Column(dim));
  for (auto& col : out) {
    for (double& v : col) v = rng.uniform(-1.0, 1.0);
  }
  return out;
}

void BM_ConvScores(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::size_t dim = 62;
  Rng rng(1);
  std::vector<Column> X = random_columns(n, dim, rng);
  Tensor f = Tensor::random_uniform({3, dim}, -0.5, 0.5, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conv_scores(X, f, 0.1, ConvMode::kValid));
  }
}
BENCHMARK(BM_ConvScores)->Arg(16)->Arg(64);

void BM_GruStep(benchmark::State& state) {
  std::size_t hidden = static_cast<std::size_t>(state.range(0));
  ModelParameters mp;
  RnnConfig cfg;
  cfg.hidden = hidden;
  Rng rng(2);
  RnnModel rnn(mp, "rnn", cfg, 62, rng);
  Column x = random_columns(1, 62, rng)[0];
  Column h(hidden, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rnn.cell_step(x, h));
  }
}
BENCHMARK(BM_GruStep)->Arg(32)->Arg(128);

struct ModelFixture {
  std::vector<RelationMention> corpus;
  std::unique_ptr<Classifier> model;

  explicit ModelFixture(const std::string& kind) {
    SynthSpec synth;
    synth.classes = 4;
    synth.vocab = 120;
    synth.pattern_length = 3;
    synth.size = 64;
    synth.seed = 3;
    corpus = generate_synthetic(synth);
    ModelSpec spec;
    spec.kind = kind;
    spec.tables.word_dim = 24;
    spec.tables.dist_dim = 8;
    spec.tables.label_dim = 8;
    spec.cnn.window_sizes = {2, 3};
    spec.cnn.maps_per_window = 24;
    spec.cnn.mlp_hidden = {32};
    spec.rnn.hidden = 32;
    spec.rnn.mlp_hidden = {32};
    Rng rng(4);
    model = build_classifier(spec, corpus, {}, rng);
  }
};

void BM_ForwardBackward(benchmark::State& state, const std::string& kind) {
  ModelFixture fx(kind);
  std::vector<RelationMention> batch(fx.corpus.begin(),
                                     fx.corpus.begin() + 8);
  for (auto _ : state) {
    double loss = classifier_batch_loss(*fx.model, batch, /*with_grad=*/true);
    benchmark::DoNotOptimize(loss);
    for (Parameter* p : fx.model->parameters()) p->zero_grad();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 8);
}
BENCHMARK_CAPTURE(BM_ForwardBackward, cnn, "cnn");
BENCHMARK_CAPTURE(BM_ForwardBackward, rnn, "rnn");
BENCHMARK_CAPTURE(BM_ForwardBackward, stack_cnn_rnn, "stack-cnn-rnn");
BENCHMARK_CAPTURE(BM_ForwardBackward, hybrid, "hybrid");

void BM_Predict(benchmark::State& state, const std::string& kind) {
  ModelFixture fx(kind);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fx.model->predict(fx.corpus[i++ % 64]));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK_CAPTURE(BM_Predict, cnn, "cnn");
BENCHMARK_CAPTURE(BM_Predict, rnn, "rnn");

void BM_AdaDeltaStep(benchmark::State& state) {
  ModelFixture fx("cnn");
  std::vector<Parameter*> params = fx.model->parameters();
  AdaDeltaState opt = AdaDeltaState::for_parameters(params);
  Rng rng(5);
  for (Parameter* p : params) {
    for (std::size_t i = 0; i < p->grad.size(); ++i) {
      p->grad[i] = rng.uniform(-0.01, 0.01);
    }
  }
  for (auto _ : state) {
    adadelta_step(params, opt, 0.95, 1e-6);
    benchmark::DoNotOptimize(params[0]->value[0]);
  }
}
BENCHMARK(BM_AdaDeltaStep);

void BM_Featurize(benchmark::State& state) {
  ModelFixture fx("cnn");
  auto* base = dynamic_cast<NeuralClassifierBase*>(fx.model.get());
  for (auto _ : state) {
    benchmark::DoNotOptimize(base->encode(fx.corpus[0]));
  }
}
BENCHMARK(BM_Featurize);

}  // namespace

BENCHMARK_MAIN();
