#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "newsclf/corpus/article.hpp"

namespace newsclf::corpus {

struct CorpusSplit {
  std::vector<Article> train;
  std::vector<Article> validation;
  std::vector<Article> test;
  std::uint64_t seed = 0;
};

inline constexpr std::array<double, 3> kDefaultRatios = {0.70, 0.20, 0.10};

// Deterministic stratified split. Within each label the articles are shuffled
// with a seed derived from (seed, label) and apportioned to the three splits
// by largest remainder, so each class's proportion in each split matches its
// corpus proportion within one article. Articles keep corpus order inside
// each split.
//
// Throws Error with EmptyCorpus or BadRatios.
CorpusSplit split_corpus(const std::vector<Article>& articles,
                         const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace newsclf::corpus
