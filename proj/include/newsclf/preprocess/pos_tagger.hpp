#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace newsclf::preprocess {

// Penn Treebank tagset (45 tags) with PAD at id 0.
inline constexpr int kNumPosTags = 46;

const char* pos_tag_name(int id);
// -1 for names outside the table.
int pos_tag_id(const std::string& name);

using TaggedSentence = std::vector<std::pair<std::string, std::string>>;

// Greedy averaged-perceptron tagger over the usual contextual and affix
// features, with a tag dictionary shortcut for frequent unambiguous words.
class PosTagger {
 public:
  PosTagger() = default;

  void train(const std::vector<TaggedSentence>& sentences, int iterations, std::uint64_t seed);
  std::vector<int> tag(const std::vector<std::string>& tokens) const;
  double accuracy(const std::vector<TaggedSentence>& sentences) const;

  // Shared instance trained once on the bundled annotated sample.
  static const PosTagger& bundled();

 private:
  struct Weight {
    double value = 0.0;
    double total = 0.0;
    std::int64_t stamp = 0;
  };

  std::vector<std::string> features(const std::vector<std::string>& context, std::size_t i,
                                    int prev, int prev2) const;
  int predict(const std::vector<std::string>& feats) const;
  void update(int truth, int guess, const std::vector<std::string>& feats);
  void average();

  std::unordered_map<std::string, std::unordered_map<int, Weight>> weights_;
  std::unordered_map<std::string, int> tagdict_;
  std::int64_t updates_ = 0;
};

// The embedded annotated sample the bundled tagger trains on; token
// conventions match the toolkit tokenizer. Exposed so tests can score the
// tagger against its reference annotations.
const std::vector<TaggedSentence>& bundled_pos_sample();

// Sidecar lines `article_id<TAB>tag1 tag2 ...` -> tag ids per article.
std::unordered_map<std::string, std::vector<int>> load_pos_sidecar(const std::string& path);

}  // namespace newsclf::preprocess
