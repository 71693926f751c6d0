#include "newsclf/cli/run_config.hpp"

#include <cstdlib>
#include <sstream>

#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"

namespace newsclf::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    fail(ErrorCode::ConfigError, "bad integer for '" + key + "': " + value);
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    fail(ErrorCode::ConfigError, "bad integer for '" + key + "': " + value);
  return static_cast<std::uint64_t>(v);
}

double parse_double(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty())
    fail(ErrorCode::ConfigError, "bad number for '" + key + "': " + value);
  return v;
}

float parse_float(const std::string& value, const std::string& key) {
  return static_cast<float>(parse_double(value, key));
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  fail(ErrorCode::ConfigError, "bad flag for '" + key + "': " + value);
}

void apply_data(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "corpus")
    cfg.data.corpus = value;
  else if (key == "labels")
    cfg.data.labels = value;
  else if (key == "lexicon")
    cfg.data.lexicon = value;
  else if (key == "embeddings")
    cfg.data.embeddings = value;
  else if (key == "pos_sidecar")
    cfg.data.pos_sidecar = value;
  else if (key == "vocab")
    cfg.data.vocab = value;
  else if (key == "split_seed")
    cfg.data.split_seed = parse_u64(value, key);
  else if (key == "train_ratio")
    cfg.data.ratios[0] = parse_double(value, key);
  else if (key == "validation_ratio")
    cfg.data.ratios[1] = parse_double(value, key);
  else if (key == "test_ratio")
    cfg.data.ratios[2] = parse_double(value, key);
  else
    fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [data]");
}

void apply_model(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "architecture") {
    const auto arch = models::architecture_from_name(value);
    if (!arch) fail(ErrorCode::ConfigError, "unknown architecture '" + value + "'");
    cfg.architecture = *arch;
  } else if (key == "steps") {
    cfg.rnn.steps = parse_int(value, key);
  } else if (key == "word_embed_dim") {
    cfg.rnn.word_embed_dim = parse_int(value, key);
  } else if (key == "pos_embed_dim") {
    cfg.rnn.pos_embed_dim = parse_int(value, key);
  } else if (key == "gru_hidden") {
    cfg.rnn.gru_hidden = parse_int(value, key);
  } else if (key == "fc_units") {
    cfg.rnn.fc_units = parse_int(value, key);
    cfg.head.fc_units = cfg.rnn.fc_units;
  } else if (key == "use_char_branch") {
    cfg.rnn.use_char_branch = parse_bool(value, key);
  } else if (key == "char_embed_dim") {
    cfg.rnn.char_embed_dim = parse_int(value, key);
  } else if (key == "max_chars") {
    cfg.rnn.max_chars = parse_int(value, key);
  } else if (key == "min_freq") {
    cfg.min_freq = parse_int(value, key);
  } else if (key == "pretrained_vectors") {
    cfg.pretrained_vectors = value;
  } else if (key == "freeze_pretrained") {
    cfg.freeze_pretrained = parse_bool(value, key);
  } else if (key == "input_steps") {
    cfg.head.input_steps = parse_int(value, key);
  } else if (key == "input_dim") {
    cfg.head.input_dim = parse_int(value, key);
  } else if (key == "pooling") {
    const auto pooling = models::pooling_from_name(value);
    if (!pooling) fail(ErrorCode::ConfigError, "unknown pooling '" + value + "'");
    cfg.head.pooling = *pooling;
  } else {
    fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [model]");
  }
}

void apply_train(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "batch_size")
    cfg.train.batch_size = parse_int(value, key);
  else if (key == "max_epochs")
    cfg.train.max_epochs = parse_int(value, key);
  else if (key == "learning_rate")
    cfg.train.learning_rate = parse_float(value, key);
  else if (key == "optimizer") {
    if (value == "adam")
      cfg.train.optimizer = pipeline::OptimizerKind::Adam;
    else if (value == "sgd")
      cfg.train.optimizer = pipeline::OptimizerKind::Sgd;
    else
      fail(ErrorCode::ConfigError, "unknown optimizer '" + value + "'");
  } else if (key == "beta1")
    cfg.train.beta1 = parse_float(value, key);
  else if (key == "beta2")
    cfg.train.beta2 = parse_float(value, key);
  else if (key == "epsilon")
    cfg.train.epsilon = parse_float(value, key);
  else if (key == "patience")
    cfg.train.early_stop_patience = parse_int(value, key);
  else if (key == "seed")
    cfg.train.seed = parse_u64(value, key);
  else if (key == "shuffle")
    cfg.train.shuffle = parse_bool(value, key);
  else if (key == "class_weights")
    cfg.train.class_weights = parse_bool(value, key);
  else
    fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [train]");
}

void apply_output(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "dir")
    cfg.out_dir = value;
  else
    fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [output]");
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": bad section header");
      section = line.substr(1, line.size() - 2);
      if (section != "data" && section != "model" && section != "train" && section != "output")
        fail(ErrorCode::ConfigError, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    if (section.empty())
      fail(ErrorCode::ConfigError, "key '" + key + "' appears before any section");
    if (section == "data")
      apply_data(cfg, key, value);
    else if (section == "model")
      apply_model(cfg, key, value);
    else if (section == "train")
      apply_train(cfg, key, value);
    else
      apply_output(cfg, key, value);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path));
}

}  // namespace newsclf::cli
