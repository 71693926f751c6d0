#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "newsclf/cli/driver.hpp"
#include "newsclf/cli/run_config.hpp"
#include "newsclf/util/error.hpp"

namespace {

using newsclf::Error;
using newsclf::ErrorCode;
namespace cli = newsclf::cli;
namespace models = newsclf::models;

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == ErrorCode::DivergedLoss || e.code() == ErrorCode::NonFiniteValue ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Financial news classification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_dir;
  bool continue_on_error = false;
  auto* config_opt = app.add_option("--config", config_path, "Run configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Override the configured seeds");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads for encoding and evaluation");
  auto* out_dir_opt = app.add_option("--out-dir", out_dir, "Override the configured output directory");
  app.add_flag("--continue-on-error", continue_on_error, "Keep predicting past malformed articles");

  const auto make_config = [&]() {
    cli::RunConfig cfg;
    if (config_opt->count()) cfg = cli::load_run_config(config_path);
    if (seed_opt->count()) {
      cfg.train.seed = seed;
      cfg.data.split_seed = seed;
    }
    if (out_dir_opt->count()) cfg.out_dir = out_dir;
    if (workers_opt->count()) {
      if (workers < 1) newsclf::fail(ErrorCode::ConfigError, "--workers must be at least 1");
      cfg.workers = workers;
    }
    return cfg;
  };

  int rc = 0;

  auto* stats = app.add_subcommand("stats", "Print the corpus statistics table per split");
  std::string stats_corpus, stats_labels, stats_lexicon;
  stats->add_option("--corpus", stats_corpus, "Article file (defaults to the config entry)");
  stats->add_option("--labels", stats_labels, "Label sidecar (defaults to the config entry)");
  stats->add_option("--lexicon", stats_lexicon, "Lexicon file (defaults to the config entry)");
  stats->callback([&] {
    rc = guarded([&] {
      const cli::RunConfig cfg = make_config();
      const std::string corpus = stats_corpus.empty() ? cfg.data.corpus : stats_corpus;
      const std::string labels = stats_labels.empty() ? cfg.data.labels : stats_labels;
      const std::string lexicon = stats_lexicon.empty() ? cfg.data.lexicon : stats_lexicon;
      if (corpus.empty()) newsclf::fail(ErrorCode::ConfigError, "stats needs --corpus or a config with [data] corpus");
      if (lexicon.empty()) newsclf::fail(ErrorCode::ConfigError, "stats needs --lexicon or a config with [data] lexicon");
      std::fputs(cli::run_stats(corpus, labels, lexicon, cfg.data.split_seed).c_str(), stdout);
      return 0;
    });
  });

  auto* preprocess = app.add_subcommand("preprocess", "Write vocabulary, split lists and POS tags");
  preprocess->callback([&] {
    rc = guarded([&] {
      for (const auto& path : cli::run_preprocess(make_config()))
        std::printf("%s\n", path.string().c_str());
      return 0;
    });
  });

  auto* train = app.add_subcommand("train", "Train a model and write checkpoint, manifest and history");
  train->callback([&] {
    rc = guarded([&] {
      const cli::TrainOutcome out = cli::run_train(make_config());
      const int best = out.history.best_epoch;
      std::printf("best epoch %d\n", best + 1);
      std::printf("validation loss %.4f\n", out.history.val_loss[static_cast<std::size_t>(best)]);
      std::printf("validation accuracy %.2f%%\n",
                  100.0 * out.history.val_accuracy[static_cast<std::size_t>(best)]);
      std::printf("checkpoint %s\n", out.checkpoint.string().c_str());
      return 0;
    });
  });

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the test split");
  std::string eval_checkpoint;
  eval->add_option("--checkpoint", eval_checkpoint, "Trained checkpoint file")->required();
  eval->callback([&] {
    rc = guarded([&] {
      const cli::EvalOutcome out = cli::run_eval(make_config(), eval_checkpoint);
      std::fputs(out.rendered.c_str(), stdout);
      return 0;
    });
  });

  auto* predict = app.add_subcommand("predict", "Classify articles and print per-article labels");
  std::string predict_checkpoint, predict_input;
  predict->add_option("--checkpoint", predict_checkpoint, "Trained checkpoint file")->required();
  predict->add_option("--input", predict_input, "Article file or embedding file")->required();
  predict->callback([&] {
    rc = guarded([&] {
      const cli::PredictOutcome out =
          cli::run_predict(predict_checkpoint, predict_input, continue_on_error);
      for (const std::string& line : out.lines) std::printf("%s\n", line.c_str());
      for (const std::string& message : out.errors)
        std::fprintf(stderr, "error: %s\n", message.c_str());
      return 0;
    });
  });

  auto* gradcheck = app.add_subcommand("gradcheck", "Compare tape gradients against central differences");
  std::string arch_name = "rnn_plus";
  bool corrupt = false;
  gradcheck->add_option("--architecture", arch_name, "rnn_plus, dense_head or attention_head");
  gradcheck->add_flag("--corrupt", corrupt, "Corrupt the loss to exercise the failure path")
      ->group("");
  gradcheck->callback([&] {
    rc = guarded([&] {
      const auto arch = models::architecture_from_name(arch_name);
      if (!arch)
        newsclf::fail(ErrorCode::ConfigError, "unknown architecture '" + arch_name + "'");
      const cli::GradCheckOutcome out = cli::run_gradcheck(*arch, seed, corrupt);
      std::fputs(out.text.c_str(), stdout);
      return out.pass ? 0 : 1;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return rc;
}
