#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace newsclf::corpus {

// Precomputed per-article embeddings, row-major [row][step][dim]. steps is 1
// for one vector per article and T for per-step sequences.
struct EmbeddingMatrix {
  std::uint32_t row_count = 0;
  std::uint32_t steps = 0;
  std::uint32_t dim = 0;
  std::vector<float> data;
  std::vector<std::string> article_ids;

  const float* row(std::size_t r) const {
    return data.data() + r * static_cast<std::size_t>(steps) * dim;
  }
  std::optional<std::size_t> row_for(const std::string& article_id) const;
  void rebuild_index();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

// EMBV container, little-endian throughout: magic "EMBV", u32 version=1,
// u32 row_count, u32 steps, u32 dim, then per row [u16 id_length, id bytes,
// steps*dim f32]. Readers reject trailing bytes.
//
// Throws Error with BadMagic, VersionUnsupported, TruncatedPayload,
// DimensionMismatch or DuplicateArticleId.
EmbeddingMatrix read_embeddings(const std::string& path);
void write_embeddings(const EmbeddingMatrix& m, const std::string& path);

std::vector<std::uint8_t> encode_embeddings(const EmbeddingMatrix& m);
EmbeddingMatrix decode_embeddings(const std::vector<std::uint8_t>& bytes,
                                  const std::string& origin);

}  // namespace newsclf::corpus
