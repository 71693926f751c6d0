#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "newsclf/cli/run_config.hpp"
#include "newsclf/pipeline/evaluate.hpp"
#include "newsclf/pipeline/train.hpp"

namespace newsclf::cli {

inline constexpr double kLayerGradThreshold = 1e-2;
inline constexpr double kFullGradThreshold = 2e-2;

// Corpus statistics table: one row set per metric, one column per split.
std::string run_stats(const std::string& corpus_path, const std::string& labels_path,
                      const std::string& lexicon_path, std::uint64_t seed);

// Writes vocab.txt, splits.json and pos_tags.tsv under the configured output
// directory; returns the paths written.
std::vector<std::filesystem::path> run_preprocess(const RunConfig& cfg);

struct TrainOutcome {
  pipeline::TrainHistory history;
  std::filesystem::path checkpoint;
  std::filesystem::path manifest;
  std::filesystem::path history_file;
};

// Full training workflow: load, split, encode or embed, train, then write
// checkpoint, manifest, history and split listing atomically.
TrainOutcome run_train(const RunConfig& cfg);

struct EvalOutcome {
  pipeline::EvalReport report;
  std::string rendered;
  std::filesystem::path metrics;
};

// Evaluates the checkpoint on the test split drawn from the config's data
// section; writes the metrics document next to the other artifacts.
EvalOutcome run_eval(const RunConfig& cfg, const std::string& checkpoint_path);

struct PredictOutcome {
  std::vector<std::string> lines;
  std::vector<std::string> errors;
};

// One tab-separated line per input: id, label, probabilities and, for the
// attention head, the sentence weights. Input is an article file for the
// recurrent model and an embedding file for the heads.
PredictOutcome run_predict(const std::string& checkpoint_path, const std::string& input_path,
                           bool continue_on_error);

struct GradCheckOutcome {
  std::vector<std::pair<std::string, double>> errors;
  bool pass = true;
  std::string text;
};

// Finite-difference checks for every layer kind plus the full model of the
// given architecture. corrupt skews the numeric side and is only for
// exercising the failure path.
GradCheckOutcome run_gradcheck(models::Architecture architecture, std::uint64_t seed,
                               bool corrupt = false);

}  // namespace newsclf::cli
