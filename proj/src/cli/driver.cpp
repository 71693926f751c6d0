#include "newsclf/cli/driver.hpp"

#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

#include "newsclf/corpus/article_parser.hpp"
#include "newsclf/corpus/corpus_io.hpp"
#include "newsclf/corpus/embedding_file.hpp"
#include "newsclf/corpus/stats.hpp"
#include "newsclf/models/heads.hpp"
#include "newsclf/models/predict.hpp"
#include "newsclf/models/pretrained.hpp"
#include "newsclf/models/rnn_plus.hpp"
#include "newsclf/nn/checkpoint.hpp"
#include "newsclf/nn/grad_check.hpp"
#include "newsclf/preprocess/encode.hpp"
#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "newsclf/util/rng.hpp"

namespace newsclf::cli {

namespace fs = std::filesystem;

namespace {

std::string with_separators(std::int64_t value) {
  const std::string digits = std::to_string(value);
  std::string out;
  int until_comma = static_cast<int>(digits.size() % 3);
  if (until_comma == 0) until_comma = 3;
  for (char c : digits) {
    if (until_comma == 0) {
      out += ',';
      until_comma = 3;
    }
    out += c;
    --until_comma;
  }
  return out;
}

void require_path(const std::string& value, const char* key) {
  if (value.empty()) fail(ErrorCode::ConfigError, std::string("missing [data] ") + key);
}

// Runs fn(index, shard) over [0, n) striped across workers threads. Stripes
// are fixed by index, so results assembled by index are identical at any
// worker count. The first captured exception (in shard order) is rethrown.
template <class Fn>
void run_sharded(std::size_t n, int workers, Fn&& fn) {
  const int shards =
      std::max(1, std::min(workers, static_cast<int>(std::min<std::size_t>(n, 64))));
  if (shards <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shards));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(shards));
  for (int k = 0; k < shards; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (std::size_t i = static_cast<std::size_t>(k); i < n;
             i += static_cast<std::size_t>(shards))
          fn(i, k);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<corpus::Article> load_labeled_articles(const RunConfig& cfg) {
  std::vector<corpus::Article> articles =
      corpus::load_corpus(cfg.data.corpus, cfg.data.labels);
  if (articles.empty()) fail(ErrorCode::EmptyCorpus, cfg.data.corpus + ": no articles");
  return articles;
}

std::vector<int> labels_of(const std::vector<corpus::Article>& articles) {
  std::vector<int> ys;
  ys.reserve(articles.size());
  for (const corpus::Article& a : articles) {
    if (!a.label) fail(ErrorCode::DanglingLabel, "article " + a.id + " has no label");
    ys.push_back(static_cast<int>(*a.label));
  }
  return ys;
}

// ---- encoded article datasets (recurrent model) ----

std::vector<preprocess::EncodedSequence> encode_split(
    const std::vector<corpus::Article>& articles, const preprocess::Vocab& vocab,
    const preprocess::Lexicon& lexicon, const preprocess::PosTagger* tagger,
    const std::unordered_map<std::string, std::vector<int>>* sidecar, int steps,
    int workers) {
  std::vector<preprocess::EncodedSequence> xs(articles.size());
  run_sharded(articles.size(), workers, [&](std::size_t i, int) {
    const corpus::Article& article = articles[i];
    std::vector<preprocess::TokenRecord> records;
    if (sidecar) {
      const auto it = sidecar->find(article.id);
      if (it == sidecar->end())
        fail(ErrorCode::SidecarLengthMismatch, "no sidecar tags for article " + article.id);
      records = preprocess::article_records(article, lexicon, it->second);
    } else {
      records = preprocess::article_records(article, lexicon, *tagger);
    }
    xs[i] = preprocess::encode_records(records, vocab, steps);
  });
  return xs;
}

template <class Model>
pipeline::EvalReport evaluate_sharded(Model& model,
                                      const std::vector<typename Model::Example>& xs,
                                      const std::vector<int>& ys, int workers) {
  if (workers <= 1 || xs.size() < 2) return pipeline::evaluate(model, xs, ys);
  if (xs.size() != ys.size()) fail(ErrorCode::ConfigError, "example and label counts differ");
  for (int y : ys)
    if (y < 0 || y >= corpus::kNumClasses)
      fail(ErrorCode::LabelOutOfRange, "label " + std::to_string(y));
  std::vector<pipeline::Confusion> parts(static_cast<std::size_t>(workers));
  run_sharded(xs.size(), workers, [&](std::size_t i, int shard) {
    const models::Prediction p = models::predict(model, xs[i]);
    ++parts[static_cast<std::size_t>(shard)][static_cast<std::size_t>(ys[i])]
           [static_cast<std::size_t>(p.label)];
  });
  pipeline::Confusion confusion{};
  for (const pipeline::Confusion& part : parts)
    for (std::size_t r = 0; r < part.size(); ++r)
      for (std::size_t c = 0; c < part[r].size(); ++c) confusion[r][c] += part[r][c];
  return pipeline::report_from_confusion(confusion);
}

// ---- embedded article datasets (fine-tuning heads) ----

std::vector<nn::Tensor> embed_split(const std::vector<corpus::Article>& articles,
                                    const corpus::EmbeddingMatrix& matrix) {
  std::vector<nn::Tensor> xs;
  xs.reserve(articles.size());
  for (const corpus::Article& article : articles) {
    const auto row = matrix.row_for(article.id);
    if (!row) fail(ErrorCode::IoError, "no embedding row for article " + article.id);
    nn::Tensor t({static_cast<int>(matrix.steps), static_cast<int>(matrix.dim)});
    const float* src = matrix.row(*row);
    std::copy(src, src + t.data.size(), t.data.begin());
    xs.push_back(std::move(t));
  }
  return xs;
}

// ---- manifest ----

nlohmann::json data_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["corpus"] = cfg.data.corpus;
  j["corpus_hash"] = hex64(fnv1a64_file(cfg.data.corpus));
  j["labels"] = cfg.data.labels;
  j["labels_hash"] = hex64(fnv1a64_file(cfg.data.labels));
  j["lexicon"] = cfg.data.lexicon;
  j["lexicon_hash"] = hex64(fnv1a64_file(cfg.data.lexicon));
  j["split_seed"] = cfg.data.split_seed;
  j["ratios"] = cfg.data.ratios;
  if (!cfg.data.embeddings.empty()) {
    j["embeddings"] = cfg.data.embeddings;
    j["embeddings_hash"] = hex64(fnv1a64_file(cfg.data.embeddings));
  }
  if (!cfg.data.pos_sidecar.empty()) j["pos_sidecar"] = cfg.data.pos_sidecar;
  return j;
}

nlohmann::json model_json(const RunConfig& cfg, int vocab_size) {
  nlohmann::json j;
  if (cfg.architecture == models::Architecture::RnnPlus) {
    j["steps"] = cfg.rnn.steps;
    j["vocab_size"] = vocab_size;
    j["word_embed_dim"] = cfg.rnn.word_embed_dim;
    j["pos_embed_dim"] = cfg.rnn.pos_embed_dim;
    j["gru_hidden"] = cfg.rnn.gru_hidden;
    j["fc_units"] = cfg.rnn.fc_units;
    j["use_char_branch"] = cfg.rnn.use_char_branch;
    j["char_embed_dim"] = cfg.rnn.char_embed_dim;
    j["max_chars"] = cfg.rnn.max_chars;
    j["min_freq"] = cfg.min_freq;
    if (!cfg.pretrained_vectors.empty()) {
      j["pretrained_vectors"] = cfg.pretrained_vectors;
      j["freeze_pretrained"] = cfg.freeze_pretrained;
    }
  } else {
    j["input_steps"] = cfg.head.input_steps;
    j["input_dim"] = cfg.head.input_dim;
    j["fc_units"] = cfg.head.fc_units;
    j["pooling"] = models::pooling_name(cfg.head.pooling);
  }
  return j;
}

nlohmann::json train_json(const pipeline::TrainConfig& t) {
  return {{"batch_size", t.batch_size},
          {"max_epochs", t.max_epochs},
          {"learning_rate", t.learning_rate},
          {"optimizer", pipeline::optimizer_name(t.optimizer)},
          {"beta1", t.beta1},
          {"beta2", t.beta2},
          {"epsilon", t.epsilon},
          {"patience", t.early_stop_patience},
          {"seed", t.seed},
          {"shuffle", t.shuffle},
          {"class_weights", t.class_weights}};
}

struct Manifest {
  models::Architecture architecture = models::Architecture::RnnPlus;
  models::RnnPlusConfig rnn;
  models::FineTuneConfig head;
  fs::path dir;
  std::string vocab_file;
  std::string lexicon_path;
  nlohmann::json raw;
};

Manifest read_manifest_for(const std::string& checkpoint_path) {
  const fs::path manifest_path = fs::path(checkpoint_path).parent_path() / "manifest.json";
  if (!fs::exists(manifest_path))
    fail(ErrorCode::IoError, "no manifest.json next to " + checkpoint_path);
  Manifest m;
  m.dir = manifest_path.parent_path();
  try {
    m.raw = nlohmann::json::parse(read_text_file(manifest_path));
    const auto arch = models::architecture_from_name(m.raw.at("architecture"));
    if (!arch) fail(ErrorCode::ArchitectureMismatch, "unknown architecture in manifest");
    m.architecture = *arch;
    const nlohmann::json& model = m.raw.at("model");
    if (m.architecture == models::Architecture::RnnPlus) {
      m.rnn.steps = model.at("steps");
      m.rnn.vocab_size = model.at("vocab_size");
      m.rnn.word_embed_dim = model.at("word_embed_dim");
      m.rnn.pos_embed_dim = model.at("pos_embed_dim");
      m.rnn.gru_hidden = model.at("gru_hidden");
      m.rnn.fc_units = model.at("fc_units");
      m.rnn.use_char_branch = model.at("use_char_branch");
      m.rnn.char_embed_dim = model.at("char_embed_dim");
      m.rnn.max_chars = model.at("max_chars");
      m.vocab_file = m.raw.at("vocab").at("file");
    } else {
      m.head.input_steps = model.at("input_steps");
      m.head.input_dim = model.at("input_dim");
      m.head.fc_units = model.at("fc_units");
      const auto pooling = models::pooling_from_name(model.at("pooling"));
      if (!pooling) fail(ErrorCode::ArchitectureMismatch, "unknown pooling in manifest");
      m.head.pooling = *pooling;
    }
    m.lexicon_path = m.raw.at("data").value("lexicon", std::string());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, "bad manifest: " + std::string(e.what()));
  }
  return m;
}

preprocess::Vocab manifest_vocab(const Manifest& m) {
  const fs::path path = m.dir / m.vocab_file;
  preprocess::Vocab vocab = preprocess::Vocab::load(path.string());
  const std::string recorded = m.raw.at("vocab").at("hash");
  if (hex64(vocab.content_hash()) != recorded)
    fail(ErrorCode::VocabMismatch, "vocab file does not match the manifest hash");
  return vocab;
}

void write_json_atomic(const fs::path& path, const nlohmann::json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

nlohmann::json splits_json(const corpus::CorpusSplit& split,
                           const std::array<double, 3>& ratios) {
  const auto ids = [](const std::vector<corpus::Article>& articles) {
    std::vector<std::string> out;
    out.reserve(articles.size());
    for (const corpus::Article& a : articles) out.push_back(a.id);
    return out;
  };
  return {{"seed", split.seed},
          {"ratios", ratios},
          {"train", ids(split.train)},
          {"validation", ids(split.validation)},
          {"test", ids(split.test)}};
}

nlohmann::json history_json(const pipeline::TrainHistory& h) {
  return {{"train_loss", h.train_loss},
          {"val_loss", h.val_loss},
          {"val_accuracy", h.val_accuracy},
          {"best_epoch", h.best_epoch}};
}

std::string format_probs(const std::array<float, corpus::kNumClasses>& probs) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f %.4f %.4f", probs[0], probs[1], probs[2]);
  return buf;
}

}  // namespace

std::string run_stats(const std::string& corpus_path, const std::string& labels_path,
                      const std::string& lexicon_path, std::uint64_t seed) {
  const preprocess::Lexicon lexicon = preprocess::Lexicon::load(lexicon_path);
  std::vector<corpus::Article> articles = labels_path.empty()
                                              ? corpus::load_articles(corpus_path)
                                              : corpus::load_corpus(corpus_path, labels_path);
  if (articles.empty()) fail(ErrorCode::EmptyCorpus, corpus_path + ": no articles");
  const corpus::CorpusSplit split = corpus::split_corpus(articles, corpus::kDefaultRatios, seed);

  const corpus::CorpusStats train = corpus::corpus_stats(split.train, lexicon);
  const corpus::CorpusStats validation = corpus::corpus_stats(split.validation, lexicon);
  const corpus::CorpusStats test = corpus::corpus_stats(split.test, lexicon);

  std::ostringstream out;
  out << "\tTraining\tValidation\tTest\n";
  const auto row = [&](const char* name, std::int64_t a, std::int64_t b, std::int64_t c) {
    out << name << '\t' << with_separators(a) << '\t' << with_separators(b) << '\t'
        << with_separators(c) << '\n';
  };
  row("Articles", train.articles, validation.articles, test.articles);
  row("Sentences", train.sentences, validation.sentences, test.sentences);
  row("Words", train.words, validation.words, test.words);
  row("Illegitimate words", train.illegitimate_words, validation.illegitimate_words,
      test.illegitimate_words);
  const auto label_row = [&](const char* name, corpus::Label label) {
    const std::size_t k = static_cast<std::size_t>(label);
    row(name, train.label_counts[k], validation.label_counts[k], test.label_counts[k]);
  };
  label_row("No of Fund raising News (label)", corpus::Label::FundRaising);
  label_row("No of M&A News (label)", corpus::Label::MergerAcquisition);
  label_row("No of General News (label)", corpus::Label::GeneralNews);
  return out.str();
}

std::vector<fs::path> run_preprocess(const RunConfig& cfg) {
  require_path(cfg.data.corpus, "corpus");
  require_path(cfg.data.labels, "labels");
  require_path(cfg.data.lexicon, "lexicon");
  const preprocess::Lexicon lexicon = preprocess::Lexicon::load(cfg.data.lexicon);
  std::vector<corpus::Article> articles = load_labeled_articles(cfg);
  const corpus::CorpusSplit split =
      corpus::split_corpus(articles, cfg.data.ratios, cfg.data.split_seed);

  fs::create_directories(cfg.out_dir);
  std::vector<fs::path> written;

  const preprocess::Vocab vocab = preprocess::build_vocab(split.train, lexicon, cfg.min_freq);
  const fs::path vocab_path = fs::path(cfg.out_dir) / "vocab.txt";
  vocab.save(vocab_path.string());
  written.push_back(vocab_path);

  const fs::path splits_path = fs::path(cfg.out_dir) / "splits.json";
  write_json_atomic(splits_path, splits_json(split, cfg.data.ratios));
  written.push_back(splits_path);

  const preprocess::PosTagger tagger = preprocess::PosTagger::bundled();
  std::vector<std::string> tag_lines(articles.size());
  run_sharded(articles.size(), cfg.workers, [&](std::size_t i, int) {
    const auto records = preprocess::article_records(articles[i], lexicon, tagger);
    std::string line = articles[i].id + '\t';
    for (std::size_t r = 0; r < records.size(); ++r) {
      if (r) line += ' ';
      line += preprocess::pos_tag_name(records[r].pos_tag);
    }
    line += '\n';
    tag_lines[i] = std::move(line);
  });
  std::string tags;
  for (const std::string& line : tag_lines) tags += line;
  const fs::path tags_path = fs::path(cfg.out_dir) / "pos_tags.tsv";
  write_file_atomic(tags_path, tags);
  written.push_back(tags_path);
  return written;
}

TrainOutcome run_train(const RunConfig& cfg) {
  require_path(cfg.data.corpus, "corpus");
  require_path(cfg.data.labels, "labels");
  require_path(cfg.data.lexicon, "lexicon");
  cfg.train.validate();

  const preprocess::Lexicon lexicon = preprocess::Lexicon::load(cfg.data.lexicon);
  std::vector<corpus::Article> articles = load_labeled_articles(cfg);
  const corpus::CorpusSplit split =
      corpus::split_corpus(articles, cfg.data.ratios, cfg.data.split_seed);
  const std::vector<int> train_y = labels_of(split.train);
  const std::vector<int> val_y = labels_of(split.validation);

  fs::create_directories(cfg.out_dir);
  const fs::path checkpoint_path = fs::path(cfg.out_dir) / "checkpoint.nnpk";
  const fs::path manifest_path = fs::path(cfg.out_dir) / "manifest.json";
  const fs::path history_path = fs::path(cfg.out_dir) / "history.json";

  nlohmann::json manifest;
  manifest["architecture"] = models::architecture_name(cfg.architecture);
  manifest["train"] = train_json(cfg.train);
  manifest["data"] = data_json(cfg);

  pipeline::TrainHistory history;

  if (cfg.architecture == models::Architecture::RnnPlus) {
    preprocess::Vocab vocab = cfg.data.vocab.empty()
                                  ? preprocess::build_vocab(split.train, lexicon, cfg.min_freq)
                                  : preprocess::Vocab::load(cfg.data.vocab);
    const fs::path vocab_path = fs::path(cfg.out_dir) / "vocab.txt";
    vocab.save(vocab_path.string());
    manifest["vocab"] = {{"file", "vocab.txt"}, {"hash", hex64(vocab.content_hash())}};

    std::optional<preprocess::PosTagger> tagger;
    std::unordered_map<std::string, std::vector<int>> sidecar;
    const bool use_sidecar = !cfg.data.pos_sidecar.empty();
    if (use_sidecar)
      sidecar = preprocess::load_pos_sidecar(cfg.data.pos_sidecar);
    else
      tagger = preprocess::PosTagger::bundled();

    models::RnnPlusConfig model_cfg = cfg.rnn;
    model_cfg.vocab_size = vocab.size();
    models::RnnPlusModel model(model_cfg);
    model.init(cfg.train.seed);
    if (!cfg.pretrained_vectors.empty()) {
      const models::PretrainedVectors vectors = models::load_pretrained_word_embeddings(
          vocab, cfg.pretrained_vectors, model_cfg.word_embed_dim, cfg.train.seed);
      model.set_word_vectors(vectors, cfg.freeze_pretrained);
    }

    const auto train_x = encode_split(split.train, vocab, lexicon, tagger ? &*tagger : nullptr,
                                      use_sidecar ? &sidecar : nullptr, model_cfg.steps,
                                      cfg.workers);
    const auto val_x = encode_split(split.validation, vocab, lexicon, tagger ? &*tagger : nullptr,
                                    use_sidecar ? &sidecar : nullptr, model_cfg.steps,
                                    cfg.workers);

    history = pipeline::train(model, train_x, train_y, val_x, val_y, cfg.train);
    nn::save_checkpoint(model.params(), checkpoint_path.string());
    manifest["model"] = model_json(cfg, model_cfg.vocab_size);
  } else {
    require_path(cfg.data.embeddings, "embeddings");
    const corpus::EmbeddingMatrix matrix = corpus::read_embeddings(cfg.data.embeddings);
    if (static_cast<int>(matrix.steps) != cfg.head.input_steps ||
        static_cast<int>(matrix.dim) != cfg.head.input_dim)
      fail(ErrorCode::DimensionMismatch,
           "embedding file is " + std::to_string(matrix.steps) + "x" + std::to_string(matrix.dim) +
               ", config expects " + std::to_string(cfg.head.input_steps) + "x" +
               std::to_string(cfg.head.input_dim));

    const auto train_x = embed_split(split.train, matrix);
    const auto val_x = embed_split(split.validation, matrix);

    if (cfg.architecture == models::Architecture::DenseHead) {
      models::DenseHeadModel model(cfg.head);
      model.init(cfg.train.seed);
      history = pipeline::train(model, train_x, train_y, val_x, val_y, cfg.train);
      nn::save_checkpoint(model.params(), checkpoint_path.string());
    } else {
      models::AttentionHeadModel model(cfg.head);
      model.init(cfg.train.seed);
      history = pipeline::train(model, train_x, train_y, val_x, val_y, cfg.train);
      nn::save_checkpoint(model.params(), checkpoint_path.string());
    }
    manifest["model"] = model_json(cfg, 0);
  }

  write_json_atomic(fs::path(cfg.out_dir) / "splits.json", splits_json(split, cfg.data.ratios));
  write_json_atomic(history_path, history_json(history));

  manifest["checkpoint"] = {{"file", "checkpoint.nnpk"},
                            {"hash", hex64(fnv1a64_file(checkpoint_path))}};
  manifest["best_epoch"] = history.best_epoch;
  const std::size_t best = static_cast<std::size_t>(history.best_epoch);
  manifest["metrics"] = {{"val_loss", history.val_loss[best]},
                         {"val_accuracy", history.val_accuracy[best]}};
  write_json_atomic(manifest_path, manifest);

  return TrainOutcome{history, checkpoint_path, manifest_path, history_path};
}

EvalOutcome run_eval(const RunConfig& cfg, const std::string& checkpoint_path) {
  const Manifest m = read_manifest_for(checkpoint_path);
  require_path(cfg.data.corpus, "corpus");
  require_path(cfg.data.labels, "labels");
  require_path(cfg.data.lexicon, "lexicon");

  if (m.architecture == models::Architecture::RnnPlus && !cfg.data.embeddings.empty())
    fail(ErrorCode::ArchitectureMismatch,
         "checkpoint expects encoded articles, not an embedding file");
  if (m.architecture != models::Architecture::RnnPlus && cfg.data.embeddings.empty())
    fail(ErrorCode::ArchitectureMismatch, "checkpoint expects an embedding file");

  const preprocess::Lexicon lexicon = preprocess::Lexicon::load(cfg.data.lexicon);
  std::vector<corpus::Article> articles = load_labeled_articles(cfg);
  const corpus::CorpusSplit split =
      corpus::split_corpus(articles, cfg.data.ratios, cfg.data.split_seed);
  const std::vector<int> test_y = labels_of(split.test);

  pipeline::EvalReport report;
  if (m.architecture == models::Architecture::RnnPlus) {
    const preprocess::Vocab vocab = manifest_vocab(m);
    models::RnnPlusModel model(m.rnn);
    nn::load_checkpoint(model.params(), checkpoint_path);
    const preprocess::PosTagger tagger = preprocess::PosTagger::bundled();
    const auto test_x =
        encode_split(split.test, vocab, lexicon, &tagger, nullptr, m.rnn.steps, cfg.workers);
    report = evaluate_sharded(model, test_x, test_y, cfg.workers);
  } else {
    const corpus::EmbeddingMatrix matrix = corpus::read_embeddings(cfg.data.embeddings);
    if (static_cast<int>(matrix.steps) != m.head.input_steps ||
        static_cast<int>(matrix.dim) != m.head.input_dim)
      fail(ErrorCode::DimensionMismatch, "embedding file does not match the checkpoint");
    const auto test_x = embed_split(split.test, matrix);
    if (m.architecture == models::Architecture::DenseHead) {
      models::DenseHeadModel model(m.head);
      nn::load_checkpoint(model.params(), checkpoint_path);
      report = evaluate_sharded(model, test_x, test_y, cfg.workers);
    } else {
      models::AttentionHeadModel model(m.head);
      nn::load_checkpoint(model.params(), checkpoint_path);
      report = evaluate_sharded(model, test_x, test_y, cfg.workers);
    }
  }

  const std::vector<std::pair<std::string, pipeline::EvalReport>> reports{
      {models::architecture_name(m.architecture), report}};
  EvalOutcome out;
  out.report = report;
  out.rendered = pipeline::render_report(reports);
  fs::create_directories(cfg.out_dir);
  out.metrics = fs::path(cfg.out_dir) / "metrics.json";
  write_file_atomic(out.metrics, pipeline::serialize_reports(reports));
  return out;
}

PredictOutcome run_predict(const std::string& checkpoint_path, const std::string& input_path,
                           bool continue_on_error) {
  const Manifest m = read_manifest_for(checkpoint_path);
  PredictOutcome out;

  if (m.architecture == models::Architecture::RnnPlus) {
    if (m.lexicon_path.empty())
      fail(ErrorCode::IoError, "manifest records no lexicon path");
    const preprocess::Lexicon lexicon = preprocess::Lexicon::load(m.lexicon_path);
    const preprocess::Vocab vocab = manifest_vocab(m);
    models::RnnPlusModel model(m.rnn);
    nn::load_checkpoint(model.params(), checkpoint_path);
    const preprocess::PosTagger tagger = preprocess::PosTagger::bundled();

    // Blank-line separated chunks, parsed one by one so a malformed article
    // can be reported without dropping the rest.
    const std::string text = read_text_file(input_path);
    std::vector<std::string> chunks;
    std::string current;
    std::istringstream in(text);
    std::string line;
    const auto flush = [&] {
      if (current.find_first_not_of(" \t\r\n") != std::string::npos) chunks.push_back(current);
      current.clear();
    };
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        flush();
      else
        current += line + "\n";
    }
    flush();

    std::size_t index = 0;
    for (const std::string& chunk : chunks) {
      ++index;
      char id[16];
      std::snprintf(id, sizeof(id), "a%06zu", index);
      try {
        const corpus::Article article = corpus::parse_article(chunk);
        const preprocess::EncodedSequence seq =
            preprocess::encode_sequence(article, vocab, lexicon, tagger, m.rnn.steps);
        const models::Prediction p = models::predict(model, seq);
        out.lines.push_back(std::string(id) + '\t' + corpus::label_name(p.label) + '\t' +
                            format_probs(p.probabilities));
      } catch (const Error& e) {
        std::string detail = e.what();
        const std::string prefix = std::string(to_string(e.code())) + ": ";
        if (detail.rfind(prefix, 0) == 0) detail = detail.substr(prefix.size());
        if (!continue_on_error) fail(e.code(), std::string(id) + ": " + detail);
        out.errors.push_back(std::string(id) + ": " + prefix + detail);
      }
    }
    return out;
  }

  const corpus::EmbeddingMatrix matrix = corpus::read_embeddings(input_path);
  if (static_cast<int>(matrix.steps) != m.head.input_steps ||
      static_cast<int>(matrix.dim) != m.head.input_dim)
    fail(ErrorCode::DimensionMismatch, "embedding file does not match the checkpoint");

  const auto tensor_at = [&](std::size_t r) {
    nn::Tensor t({m.head.input_steps, m.head.input_dim});
    const float* src = matrix.row(r);
    std::copy(src, src + t.data.size(), t.data.begin());
    return t;
  };

  if (m.architecture == models::Architecture::DenseHead) {
    models::DenseHeadModel model(m.head);
    nn::load_checkpoint(model.params(), checkpoint_path);
    for (std::size_t r = 0; r < matrix.row_count; ++r) {
      const models::Prediction p = models::predict(model, tensor_at(r));
      out.lines.push_back(matrix.article_ids[r] + '\t' + corpus::label_name(p.label) + '\t' +
                          format_probs(p.probabilities));
    }
  } else {
    models::AttentionHeadModel model(m.head);
    nn::load_checkpoint(model.params(), checkpoint_path);
    for (std::size_t r = 0; r < matrix.row_count; ++r) {
      const nn::Tensor x = tensor_at(r);
      std::vector<float> alpha;
      nn::Tape tape(&model.params());
      const nn::Tensor& probs = tape.value(model.forward(tape, x, &alpha));
      std::array<float, corpus::kNumClasses> pr{};
      for (int k = 0; k < corpus::kNumClasses; ++k)
        pr[static_cast<std::size_t>(k)] = probs.data[static_cast<std::size_t>(k)];
      std::string alpha_text = "alpha=";
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.4f", alpha[i]);
        alpha_text += (i ? "," : "") + std::string(buf);
      }
      out.lines.push_back(matrix.article_ids[r] + '\t' +
                          corpus::label_name(models::argmax_label(pr)) + '\t' + format_probs(pr) +
                          '\t' + alpha_text);
    }
  }
  return out;
}

}  // namespace newsclf::cli
