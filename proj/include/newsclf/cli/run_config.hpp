#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "newsclf/corpus/split.hpp"
#include "newsclf/models/config.hpp"
#include "newsclf/pipeline/train.hpp"

namespace newsclf::cli {

// Full description of one run, parsed from a strict line-oriented
// `key = value` file with [data], [model], [train] and [output] sections.
// Unknown sections or keys are fatal so typos cannot silently change a run.
struct RunConfig {
  struct Data {
    std::string corpus;
    std::string labels;
    std::string lexicon;
    std::string embeddings;
    std::string pos_sidecar;
    std::string vocab;
    std::uint64_t split_seed = 1;
    std::array<double, 3> ratios = corpus::kDefaultRatios;
  };

  Data data;
  models::Architecture architecture = models::Architecture::RnnPlus;
  models::RnnPlusConfig rnn;        // vocab_size filled in after vocab build
  models::FineTuneConfig head;
  int min_freq = 2;
  std::string pretrained_vectors;
  bool freeze_pretrained = false;
  pipeline::TrainConfig train;
  std::string out_dir = "out";
  // Command-line only, never a config key. Shards per-article encoding and
  // evaluation; artifacts are identical at any worker count.
  int workers = 1;
};

// Throws Error with ConfigError naming the offending line, section or key.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

}  // namespace newsclf::cli
