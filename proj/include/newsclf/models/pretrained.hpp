#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newsclf/nn/tensor.hpp"
#include "newsclf/preprocess/vocab.hpp"

namespace newsclf::models {

// Word-embedding matrix assembled from a text vector file, one vocab row per
// id. hit_rows lists the vocab ids whose vectors came from the file.
struct PretrainedVectors {
  nn::Tensor matrix;
  std::vector<std::int32_t> hit_rows;
};

// Reads a `word v1 v2 ... vE` text file and fills a vocab_size x dim matrix.
// Vocab words present in the file get the file vector (last occurrence wins);
// every other row, the reserved ids included, draws uniform(-0.5, 0.5) from a
// generator derived per row, so misses are reproducible and independent of
// file order.
//
// Throws Error with BadVectorLine (unparsable line), InconsistentDim (a line
// whose vector length is not dim), or IoError (unreadable file).
PretrainedVectors load_pretrained_word_embeddings(const preprocess::Vocab& vocab,
                                                  const std::string& path, int dim,
                                                  std::uint64_t seed = 1);

}  // namespace newsclf::models
