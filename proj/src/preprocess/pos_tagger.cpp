#include "newsclf/preprocess/pos_tagger.hpp"

#include <algorithm>
#include <cctype>

#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "newsclf/util/rng.hpp"

namespace newsclf::preprocess {

namespace {

// Id 0 is PAD; ids 1..45 are the Penn Treebank tags.
const char* kTagNames[kNumPosTags] = {
    "PAD", "#",   "$",    "''",  "(",    ")",   ",",   ".",   ":",    "CC",  "CD", "DT",
    "EX",  "FW",  "IN",   "JJ",  "JJR",  "JJS", "LS",  "MD",  "NN",   "NNP", "NNPS",
    "NNS", "PDT", "POS",  "PRP", "PRP$", "RB",  "RBR", "RBS", "RP",   "SYM", "TO",
    "UH",  "VB",  "VBD",  "VBG", "VBN",  "VBP", "VBZ", "WDT", "WP",   "WP$", "WRB", "``"};

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Collapses open word classes the tagger should not memorize verbatim.
std::string normalize(const std::string& word) {
  if (word.size() > 1 && word[0] == '$' && std::isdigit(static_cast<unsigned char>(word[1])))
    return "!DOLLAR";
  if (word.find('-') != std::string::npos && word[0] != '-') return "!HYPHEN";
  if (all_digits(word) && word.size() == 4) return "!YEAR";
  if (!word.empty() && std::isdigit(static_cast<unsigned char>(word[0]))) return "!DIGITS";
  std::string out = word;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string suffix3(const std::string& word) {
  return word.size() <= 3 ? word : word.substr(word.size() - 3);
}

constexpr int kTagdictMinFreq = 5;

}  // namespace

const char* pos_tag_name(int id) {
  if (id < 0 || id >= kNumPosTags) return "?";
  return kTagNames[id];
}

int pos_tag_id(const std::string& name) {
  for (int i = 0; i < kNumPosTags; ++i)
    if (name == kTagNames[i]) return i;
  return -1;
}

std::vector<std::string> PosTagger::features(const std::vector<std::string>& context,
                                             std::size_t i, int prev, int prev2) const {
  // context carries two start and two end sentinels around normalized words.
  const std::string& word = context[i];
  const std::string p1 = pos_tag_name(prev);
  const std::string p2 = pos_tag_name(prev2);
  std::vector<std::string> feats;
  feats.reserve(14);
  feats.push_back("bias");
  feats.push_back("i suf " + suffix3(word));
  feats.push_back("i pre " + word.substr(0, 1));
  feats.push_back("t-1 " + p1);
  feats.push_back("t-2 " + p2);
  feats.push_back("t-1 t-2 " + p1 + " " + p2);
  feats.push_back("i w " + word);
  feats.push_back("t-1 w " + p1 + " " + word);
  feats.push_back("w-1 " + context[i - 1]);
  feats.push_back("w-1 suf " + suffix3(context[i - 1]));
  feats.push_back("w-2 " + context[i - 2]);
  feats.push_back("w+1 " + context[i + 1]);
  feats.push_back("w+1 suf " + suffix3(context[i + 1]));
  feats.push_back("w+2 " + context[i + 2]);
  return feats;
}

int PosTagger::predict(const std::vector<std::string>& feats) const {
  double scores[kNumPosTags] = {};
  for (const std::string& feat : feats) {
    auto it = weights_.find(feat);
    if (it == weights_.end()) continue;
    for (const auto& [tag, weight] : it->second) scores[tag] += weight.value;
  }
  int best = 1;
  for (int tag = 2; tag < kNumPosTags; ++tag)
    if (scores[tag] > scores[best]) best = tag;
  return best;
}

void PosTagger::update(int truth, int guess, const std::vector<std::string>& feats) {
  ++updates_;
  auto bump = [&](const std::string& feat, int tag, double delta) {
    Weight& w = weights_[feat][tag];
    w.total += static_cast<double>(updates_ - w.stamp) * w.value;
    w.stamp = updates_;
    w.value += delta;
  };
  for (const std::string& feat : feats) {
    bump(feat, truth, 1.0);
    bump(feat, guess, -1.0);
  }
}

void PosTagger::average() {
  for (auto& [feat, tags] : weights_) {
    for (auto& [tag, w] : tags) {
      w.total += static_cast<double>(updates_ - w.stamp) * w.value;
      w.stamp = updates_;
      w.value = w.total / static_cast<double>(updates_);
    }
  }
}

void PosTagger::train(const std::vector<TaggedSentence>& sentences, int iterations,
                      std::uint64_t seed) {
  weights_.clear();
  tagdict_.clear();
  updates_ = 0;

  std::unordered_map<std::string, std::unordered_map<int, int>> tag_freq;
  for (const TaggedSentence& sentence : sentences) {
    for (const auto& [surface, tag] : sentence) {
      const int id = pos_tag_id(tag);
      if (id <= 0) throw Error(ErrorCode::ConfigError, "unknown POS tag " + tag);
      ++tag_freq[normalize(surface)][id];
    }
  }
  for (const auto& [word, freqs] : tag_freq) {
    int total = 0;
    int mode_tag = 0;
    int mode_count = -1;
    for (const auto& [tag, count] : freqs) {
      total += count;
      if (count > mode_count || (count == mode_count && tag < mode_tag)) {
        mode_tag = tag;
        mode_count = count;
      }
    }
    if (total >= kTagdictMinFreq && mode_count == total) tagdict_[word] = mode_tag;
  }

  std::vector<std::size_t> order(sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int iter = 0; iter < iterations; ++iter) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(iter)));
    rng.shuffle(order);
    for (std::size_t index : order) {
      const TaggedSentence& sentence = sentences[index];
      std::vector<std::string> context;
      context.reserve(sentence.size() + 4);
      context.push_back("-START2-");
      context.push_back("-START-");
      for (const auto& [surface, tag] : sentence) context.push_back(normalize(surface));
      context.push_back("-END-");
      context.push_back("-END2-");

      int prev = 0;
      int prev2 = 0;
      for (std::size_t i = 0; i < sentence.size(); ++i) {
        const int truth = pos_tag_id(sentence[i].second);
        auto dict = tagdict_.find(context[i + 2]);
        int guess;
        if (dict != tagdict_.end()) {
          guess = dict->second;
        } else {
          const auto feats = features(context, i + 2, prev, prev2);
          guess = predict(feats);
          if (guess != truth) update(truth, guess, feats);
        }
        prev2 = prev;
        prev = guess;
      }
    }
  }
  average();
}

std::vector<int> PosTagger::tag(const std::vector<std::string>& tokens) const {
  std::vector<std::string> context;
  context.reserve(tokens.size() + 4);
  context.push_back("-START2-");
  context.push_back("-START-");
  for (const std::string& token : tokens) context.push_back(normalize(token));
  context.push_back("-END-");
  context.push_back("-END2-");

  std::vector<int> tags;
  tags.reserve(tokens.size());
  int prev = 0;
  int prev2 = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto dict = tagdict_.find(context[i + 2]);
    const int guess = dict != tagdict_.end()
                          ? dict->second
                          : predict(features(context, i + 2, prev, prev2));
    tags.push_back(guess);
    prev2 = prev;
    prev = guess;
  }
  return tags;
}

double PosTagger::accuracy(const std::vector<TaggedSentence>& sentences) const {
  std::int64_t total = 0;
  std::int64_t correct = 0;
  for (const TaggedSentence& sentence : sentences) {
    std::vector<std::string> tokens;
    tokens.reserve(sentence.size());
    for (const auto& [surface, tag] : sentence) tokens.push_back(surface);
    const std::vector<int> guessed = tag(tokens);
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      ++total;
      if (guessed[i] == pos_tag_id(sentence[i].second)) ++correct;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

const PosTagger& PosTagger::bundled() {
  static const PosTagger tagger = [] {
    PosTagger t;
    t.train(bundled_pos_sample(), 10, 7041988);
    return t;
  }();
  return tagger;
}

std::unordered_map<std::string, std::vector<int>> load_pos_sidecar(const std::string& path) {
  std::unordered_map<std::string, std::vector<int>> out;
  const std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::IoError,
                  path + " line " + std::to_string(i + 1) + ": expected id<TAB>tags");
    const std::string id = line.substr(0, tab);
    std::vector<int> tags;
    std::size_t start = tab + 1;
    while (start <= line.size()) {
      std::size_t end = line.find(' ', start);
      if (end == std::string::npos) end = line.size();
      if (end > start) {
        const std::string name = line.substr(start, end - start);
        const int tag = pos_tag_id(name);
        if (tag < 0)
          throw Error(ErrorCode::IoError, path + " line " + std::to_string(i + 1) +
                                              ": unknown POS tag " + name);
        tags.push_back(tag);
      }
      start = end + 1;
    }
    if (!out.emplace(id, std::move(tags)).second)
      throw Error(ErrorCode::DuplicateArticleId, path + " repeats id " + id);
  }
  return out;
}

}  // namespace newsclf::preprocess
