// Command-line front end: corpus synthesis, training, evaluation,
// prediction, the architecture grid, gradient checking, and coverage
// diagnostics over JSONL relation-mention corpora.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "renn/errors.hpp"
#include "renn/eval.hpp"
#include "renn/gradcheck_suite.hpp"
#include "renn/grid.hpp"
#include "renn/model_factory.hpp"
#include "renn/systems.hpp"
#include "renn/trainer.hpp"

namespace {

using namespace renn;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

struct LoadedModels {
  std::vector<std::unique_ptr<Classifier>> owned;
  std::unique_ptr<Predictor> combined;  // set when --combine is used
  Predictor* predictor = nullptr;
};

LoadedModels load_models(const std::vector<std::string>& paths,
                         const std::string& combine) {
  if (paths.empty()) throw ConfigError("no model checkpoint given");
  LoadedModels out;
  for (const std::string& p : paths) out.owned.push_back(load_classifier(p));
  if (out.owned.size() == 1 && combine.empty()) {
    out.predictor = out.owned[0].get();
    return out;
  }
  std::vector<Predictor*> members;
  for (auto& m : out.owned) members.push_back(m.get());
  if (combine == "vote") {
    out.combined = std::make_unique<VotingSystem>(members);
  } else if (combine == "ensemble") {
    out.combined = std::make_unique<EnsembleSystem>(members);
  } else if (combine.empty()) {
    throw ConfigError("multiple models need --combine vote|ensemble");
  } else {
    throw ConfigError("unknown combination method: " + combine +
                      " (expected vote or ensemble; stacked architectures "
                      "are single trained models)");
  }
  out.predictor = out.combined.get();
  return out;
}

std::vector<std::size_t> gold_indices(
    const std::vector<RelationMention>& corpus, const LabelSpace& labels) {
  std::vector<std::size_t> out;
  out.reserve(corpus.size());
  for (const auto& m : corpus) out.push_back(labels.index_of(m.gold_class));
  return out;
}

void print_report(const EvalReport& r) {
  std::cout << std::fixed << std::setprecision(4);
  std::cout << r.partition << "\tP=" << r.precision << "\tR=" << r.recall
            << "\tF1=" << r.f1 << "\t(TP=" << r.tp << " FP=" << r.fp
            << " FN=" << r.fn << ")\n";
}

int cmd_synth(const std::string& out_path, const SynthSpec& spec) {
  std::vector<RelationMention> corpus = generate_synthetic(spec);
  save_corpus(out_path, corpus);
  std::cout << "wrote " << corpus.size() << " mentions to " << out_path
            << "\n";
  return 0;
}

int cmd_train(const std::string& config_path, const std::string& corpus_path,
              const std::string& dev_path, const std::string& out_path,
              const std::string& metrics_path, long seed_override,
              long epochs_override, long batch_override) {
  Config config = config_path.empty() ? Config()
                                      : Config::parse_file(config_path);
  ModelSpec spec = spec_from_config(config);
  TrainConfig tc = train_config_from(config);
  if (seed_override >= 0) tc.seed = static_cast<std::uint64_t>(seed_override);
  if (epochs_override >= 0) tc.epochs = static_cast<std::size_t>(epochs_override);
  if (batch_override >= 0) tc.batch_size = static_cast<std::size_t>(batch_override);
  tc.metrics_csv = metrics_path;

  std::vector<RelationMention> train_set = load_corpus(corpus_path);
  std::vector<RelationMention> dev_set;
  bool has_dev = !dev_path.empty();
  if (has_dev) dev_set = load_corpus(dev_path);

  Rng rng(tc.seed, /*salt=*/0x03);
  std::vector<const std::vector<RelationMention>*> extra;
  if (has_dev) extra.push_back(&dev_set);
  std::unique_ptr<Classifier> model =
      build_classifier(spec, train_set, extra, rng);

  TrainResult result =
      train(*model, train_set, has_dev ? &dev_set : nullptr, tc);
  save_classifier(out_path, *model);
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "trained " << model->kind() << " for "
            << result.history.size() << " epochs";
  if (has_dev) {
    std::cout << "; best dev F1 " << result.best_dev_f1 << " at epoch "
              << result.best_epoch;
  }
  std::cout << "; checkpoint " << out_path << "\n";
  if (result.clamp_warnings > 0) {
    std::cerr << "warning: clamped " << result.clamp_warnings
              << " zero probabilities in the NLL\n";
  }
  return 0;
}

int cmd_eval(const std::vector<std::string>& model_paths,
             const std::string& combine, const std::string& corpus_path,
             bool by_domain, bool show_breakdown) {
  LoadedModels models = load_models(model_paths, combine);
  std::vector<RelationMention> corpus = load_corpus(corpus_path);
  const LabelSpace& labels = models.predictor->labels();
  std::vector<std::size_t> gold = gold_indices(corpus, labels);
  std::vector<std::size_t> preds;
  preds.reserve(corpus.size());
  for (const auto& m : corpus) {
    preds.push_back(models.predictor->predict_class(m));
  }
  print_report(score(preds, gold, labels));
  if (by_domain) {
    for (const EvalReport& r : score_by_domain(corpus, preds, gold, labels)) {
      print_report(r);
    }
  }
  if (show_breakdown) {
    for (const BreakdownRow& row : breakdown(preds, gold, labels)) {
      print_report(row.report);
    }
  }
  return 0;
}

int cmd_predict(const std::vector<std::string>& model_paths,
                const std::string& combine, const std::string& corpus_path,
                const std::string& out_path) {
  LoadedModels models = load_models(model_paths, combine);
  std::vector<RelationMention> corpus = load_corpus(corpus_path);
  const LabelSpace& labels = models.predictor->labels();
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw IoError("cannot write predictions: " + out_path);
  for (const auto& m : corpus) {
    std::size_t cls = models.predictor->predict_class(m);
    ClassDistribution dist = models.predictor->predict(m);
    nlohmann::ordered_json j;
    j["id"] = m.id;
    j["label"] = labels.classes[cls];
    nlohmann::ordered_json d;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      d[labels.classes[c]] = dist.probs[c];
    }
    j["dist"] = std::move(d);
    out << j.dump() << "\n";
  }
  std::cout << "wrote predictions for " << corpus.size() << " mentions to "
            << out_path << "\n";
  return 0;
}

int cmd_grid(const std::string& config_path, const std::string& corpus_path,
             const std::string& dev_path, const std::string& out_path,
             long seed_override, long epochs_override) {
  Config config = config_path.empty() ? Config()
                                      : Config::parse_file(config_path);
  ModelSpec spec = spec_from_config(config);
  TrainConfig tc = train_config_from(config);
  if (seed_override >= 0) tc.seed = static_cast<std::uint64_t>(seed_override);
  if (epochs_override >= 0) tc.epochs = static_cast<std::size_t>(epochs_override);
  std::vector<RelationMention> train_set = load_corpus(corpus_path);
  std::vector<RelationMention> dev_set = load_corpus(dev_path);
  ExperimentGrid grid = run_grid(train_set, dev_set, spec, tc);
  std::string tsv = grid.to_tsv();
  if (out_path.empty()) {
    std::cout << tsv;
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw IoError("cannot write grid: " + out_path);
    out << tsv;
    std::cout << "wrote 24-cell grid to " << out_path << "\n";
  }
  return 0;
}

int cmd_gradcheck(double eps, double tau) {
  GradCheckSuiteResult result = run_gradcheck_suite(eps, tau);
  for (const GradCheckCase& c : result.cases) {
    std::cout << (c.report.ok() ? "ok   " : "FAIL ") << c.name
              << "  max_rel_err=" << std::scientific << std::setprecision(3)
              << c.report.max_rel_err << "\n";
  }
  std::cout << (result.ok() ? "all gradients verified" : "gradient failures")
            << " in " << std::fixed << std::setprecision(2) << result.seconds
            << "s\n";
  return result.ok() ? 0 : 1;
}

int cmd_coverage(const std::string& a_path, const std::string& b_path,
                 const std::string& gold_path) {
  std::vector<RelationMention> corpus = load_corpus(gold_path);
  auto load_preds = [](const std::string& path) {
    std::map<std::string, std::string> out;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open predictions: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
        out[j.at("id").get<std::string>()] = j.at("label").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + " line " + std::to_string(line_no) + ": " +
                         e.what());
      }
    }
    return out;
  };
  std::map<std::string, std::string> preds_a = load_preds(a_path);
  std::map<std::string, std::string> preds_b = load_preds(b_path);

  LabelSpace labels = LabelSpace::from_corpus(corpus, "");
  std::vector<std::string> ids;
  std::vector<std::size_t> a, b, gold;
  for (const auto& m : corpus) {
    auto ia = preds_a.find(m.id);
    auto ib = preds_b.find(m.id);
    if (ia == preds_a.end() || ib == preds_b.end()) {
      throw ValidationError("missing prediction for mention " + m.id);
    }
    ids.push_back(m.id);
    gold.push_back(labels.index_of(m.gold_class));
    // a prediction outside the gold label space can never be correct
    auto index_or_sentinel = [&](const std::string& label) {
      for (std::size_t c = 0; c < labels.size(); ++c) {
        if (labels.classes[c] == label) return c;
      }
      return labels.size();
    };
    a.push_back(index_or_sentinel(ia->second));
    b.push_back(index_or_sentinel(ib->second));
  }
  CoverageReport r = coverage_diff(ids, a, b, gold);
  std::cout << "|S_A| = " << r.a_correct << "\n"
            << "|S_B| = " << r.b_correct << "\n"
            << "|S_A n S_B| = " << r.both << "\n"
            << "|S_A \\ S_B| = " << r.only_a << "\n"
            << "|S_B \\ S_A| = " << r.only_b << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relation extraction models: training and evaluation"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  SynthSpec synth_spec;
  std::string synth_out;
  std::string synth_domains;
  synth->add_option("--out", synth_out, "output JSONL path")->required();
  synth->add_option("--seed", synth_spec.seed, "generator seed");
  synth->add_option("--size", synth_spec.size, "number of mentions");
  synth->add_option("--classes", synth_spec.classes, "positive class count");
  synth->add_option("--vocab", synth_spec.vocab, "vocabulary size");
  synth->add_option("--pattern", synth_spec.pattern_length,
                    "trigger k-gram length");
  synth->add_option("--negative-fraction", synth_spec.negative_fraction,
                    "share of no-relation mentions");
  synth->add_option("--affix-span", synth_spec.affix_span,
                    "prefix/suffix length bound");
  synth->add_option("--filler-span", synth_spec.filler_span,
                    "between-heads filler length bound");
  synth->add_option("--domains", synth_domains,
                    "comma-separated domain labels to cycle");

  // train
  auto* train_cmd = app.add_subcommand("train", "train a model");
  std::string train_config, train_corpus, train_dev, train_out, train_metrics;
  long train_seed = -1, train_epochs = -1, train_batch = -1;
  train_cmd->add_option("--config", train_config, "flat key=value config");
  train_cmd->add_option("--corpus", train_corpus, "training JSONL")
      ->required();
  train_cmd->add_option("--dev", train_dev, "development JSONL");
  train_cmd->add_option("--out", train_out, "checkpoint path")->required();
  train_cmd->add_option("--metrics", train_metrics, "per-epoch CSV log");
  train_cmd->add_option("--seed", train_seed, "override train.seed");
  train_cmd->add_option("--epochs", train_epochs, "override train.epochs");
  train_cmd->add_option("--batch", train_batch, "override train.batch");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "score a model on a corpus");
  std::string eval_models, eval_combine, eval_corpus;
  bool eval_by_domain = false, eval_breakdown = false;
  eval_cmd->add_option("--model,--models", eval_models,
                       "checkpoint path(s), comma separated")
      ->required();
  eval_cmd->add_option("--combine", eval_combine,
                       "vote|ensemble for multiple models");
  eval_cmd->add_option("--corpus", eval_corpus, "evaluation JSONL")
      ->required();
  eval_cmd->add_flag("--by-domain", eval_by_domain,
                     "report per-domain partitions");
  eval_cmd->add_flag("--breakdown", eval_breakdown,
                     "report per-relation rows");

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "write predictions");
  std::string pred_models, pred_combine, pred_corpus, pred_out;
  predict_cmd
      ->add_option("--model,--models", pred_models,
                   "checkpoint path(s), comma separated")
      ->required();
  predict_cmd->add_option("--combine", pred_combine,
                          "vote|ensemble for multiple models");
  predict_cmd->add_option("--corpus", pred_corpus, "input JSONL")->required();
  predict_cmd->add_option("--out", pred_out, "output JSONL")->required();

  // grid
  auto* grid_cmd = app.add_subcommand(
      "grid", "train and score the 24-cell architecture sweep");
  std::string grid_config, grid_corpus, grid_dev, grid_out;
  long grid_seed = -1, grid_epochs = -1;
  grid_cmd->add_option("--config", grid_config, "flat key=value config");
  grid_cmd->add_option("--corpus", grid_corpus, "training JSONL")->required();
  grid_cmd->add_option("--dev", grid_dev, "development JSONL")->required();
  grid_cmd->add_option("--out", grid_out, "TSV output (stdout when empty)");
  grid_cmd->add_option("--seed", grid_seed, "override train.seed");
  grid_cmd->add_option("--epochs", grid_epochs, "override train.epochs");

  // gradcheck
  auto* gc_cmd = app.add_subcommand(
      "gradcheck", "verify gradients of every model variant at toy size");
  std::string gc_model = "all", gc_dims = "toy";
  double gc_eps = 1e-5, gc_tau = 1e-4;
  gc_cmd->add_option("--model", gc_model, "'all' (the full sweep)");
  gc_cmd->add_option("--dims", gc_dims, "'toy'");
  gc_cmd->add_option("--eps", gc_eps, "finite-difference step");
  gc_cmd->add_option("--tau", gc_tau, "relative-error tolerance");

  // coverage
  auto* cov_cmd = app.add_subcommand(
      "coverage", "coverage-set overlap of two prediction files");
  std::string cov_a, cov_b, cov_gold;
  cov_cmd->add_option("--a", cov_a, "predictions JSONL A")->required();
  cov_cmd->add_option("--b", cov_b, "predictions JSONL B")->required();
  cov_cmd->add_option("--gold", cov_gold, "gold corpus JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // exit 0 with help text
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (*synth) {
      if (!synth_domains.empty()) synth_spec.domains = split_list(synth_domains);
      return cmd_synth(synth_out, synth_spec);
    }
    if (*train_cmd) {
      return cmd_train(train_config, train_corpus, train_dev, train_out,
                       train_metrics, train_seed, train_epochs, train_batch);
    }
    if (*eval_cmd) {
      return cmd_eval(split_list(eval_models), eval_combine, eval_corpus,
                      eval_by_domain, eval_breakdown);
    }
    if (*predict_cmd) {
      return cmd_predict(split_list(pred_models), pred_combine, pred_corpus,
                         pred_out);
    }
    if (*grid_cmd) {
      return cmd_grid(grid_config, grid_corpus, grid_dev, grid_out, grid_seed,
                      grid_epochs);
    }
    if (*gc_cmd) {
      if (gc_model != "all") {
        throw ConfigError("gradcheck currently runs the full sweep: "
                          "--model all");
      }
      if (gc_dims != "toy") {
        throw ConfigError("gradcheck runs at toy dimensions: --dims toy");
      }
      return cmd_gradcheck(gc_eps, gc_tau);
    }
    if (*cov_cmd) {
      return cmd_coverage(cov_a, cov_b, cov_gold);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
