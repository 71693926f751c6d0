#include "newsclf/models/pretrained.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"
#include "newsclf/util/rng.hpp"

namespace newsclf::models {

PretrainedVectors load_pretrained_word_embeddings(const preprocess::Vocab& vocab,
                                                  const std::string& path, int dim,
                                                  std::uint64_t seed) {
  if (dim <= 0) fail(ErrorCode::ConfigError, "embedding dim must be positive");
  const std::int32_t rows = vocab.size();

  PretrainedVectors out;
  out.matrix = nn::Tensor({rows, dim});
  for (std::int32_t r = 0; r < rows; ++r) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(r)));
    for (int c = 0; c < dim; ++c)
      out.matrix.at(r, c) = rng.uniform(-0.5f, 0.5f);
  }

  std::vector<bool> hit(static_cast<std::size_t>(rows), false);
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    std::istringstream in(line);
    std::string word;
    if (!(in >> word)) continue;

    std::vector<float> values;
    std::string field;
    while (in >> field) {
      char* end = nullptr;
      const float v = std::strtof(field.c_str(), &end);
      if (end != field.c_str() + field.size())
        fail(ErrorCode::BadVectorLine,
             path + ":" + std::to_string(line_no) + ": bad value '" + field + "'");
      values.push_back(v);
    }
    if (values.empty())
      fail(ErrorCode::BadVectorLine, path + ":" + std::to_string(line_no) + ": no vector values");
    if (static_cast<int>(values.size()) != dim)
      fail(ErrorCode::InconsistentDim,
           path + ":" + std::to_string(line_no) + ": expected " + std::to_string(dim) +
               " values, got " + std::to_string(values.size()));

    const auto id = vocab.id_of_word(word);
    if (!id) continue;
    for (int c = 0; c < dim; ++c)
      out.matrix.at(*id, c) = values[static_cast<std::size_t>(c)];
    if (!hit[static_cast<std::size_t>(*id)]) {
      hit[static_cast<std::size_t>(*id)] = true;
      out.hit_rows.push_back(*id);
    }
  }
  return out;
}

}  // namespace newsclf::models
