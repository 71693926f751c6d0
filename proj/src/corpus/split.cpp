#include "newsclf/corpus/split.hpp"

#include <algorithm>
#include <cmath>

#include "newsclf/util/error.hpp"
#include "newsclf/util/rng.hpp"

namespace newsclf::corpus {

namespace {

constexpr std::int64_t kRatioScale = 1'000'000'000;

// Seats for one stratum of n articles: floor of each quota, then leftover
// seats by largest remainder (ties broken toward the earlier split). Ratios
// are scaled to integers so remainders compare exactly.
std::array<std::int64_t, 3> apportion(std::int64_t n, const std::array<std::int64_t, 3>& scaled) {
  std::array<std::int64_t, 3> seats{};
  std::array<std::int64_t, 3> remainder{};
  std::int64_t assigned = 0;
  for (int s = 0; s < 3; ++s) {
    const std::int64_t quota = n * scaled[s];
    seats[s] = quota / kRatioScale;
    remainder[s] = quota % kRatioScale;
    assigned += seats[s];
  }
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return a < b;
  });
  for (std::int64_t leftover = n - assigned; leftover > 0; --leftover)
    ++seats[order[static_cast<std::size_t>(n - assigned - leftover) % 3]];
  return seats;
}

}  // namespace

CorpusSplit split_corpus(const std::vector<Article>& articles,
                         const std::array<double, 3>& ratios, std::uint64_t seed) {
  if (articles.empty()) throw Error(ErrorCode::EmptyCorpus, "no articles to split");
  double sum = 0.0;
  std::array<std::int64_t, 3> scaled{};
  for (int s = 0; s < 3; ++s) {
    if (ratios[static_cast<std::size_t>(s)] <= 0.0)
      throw Error(ErrorCode::BadRatios, "ratios must be positive");
    sum += ratios[static_cast<std::size_t>(s)];
    scaled[static_cast<std::size_t>(s)] =
        std::llround(ratios[static_cast<std::size_t>(s)] * static_cast<double>(kRatioScale));
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::BadRatios, "ratios must sum to 1");

  // Strata 0..2 are the labels in index order; 3 holds unlabeled articles.
  std::array<std::vector<std::size_t>, 4> strata;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& label = articles[i].label;
    strata[label ? static_cast<std::size_t>(*label) : 3].push_back(i);
  }

  std::array<std::vector<std::size_t>, 3> members;
  for (std::size_t stratum = 0; stratum < strata.size(); ++stratum) {
    std::vector<std::size_t>& indices = strata[stratum];
    if (indices.empty()) continue;
    Rng rng(Rng::derive(seed, stratum));
    rng.shuffle(indices);
    const auto seats = apportion(static_cast<std::int64_t>(indices.size()), scaled);
    std::size_t offset = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::int64_t k = 0; k < seats[s]; ++k) members[s].push_back(indices[offset++]);
    }
  }

  CorpusSplit split;
  split.seed = seed;
  std::array<std::vector<Article>*, 3> out = {&split.train, &split.validation, &split.test};
  for (std::size_t s = 0; s < 3; ++s) {
    std::sort(members[s].begin(), members[s].end());
    out[s]->reserve(members[s].size());
    for (std::size_t index : members[s]) out[s]->push_back(articles[index]);
  }
  return split;
}

}  // namespace newsclf::corpus
