#include "newsclf/corpus/embedding_file.hpp"

#include <filesystem>
#include <fstream>

#include "newsclf/util/error.hpp"
#include "newsclf/util/io.hpp"

namespace newsclf::corpus {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', 'V'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

std::optional<std::size_t> EmbeddingMatrix::row_for(const std::string& article_id) const {
  auto it = index_.find(article_id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingMatrix::rebuild_index() {
  index_.clear();
  for (std::size_t r = 0; r < article_ids.size(); ++r) {
    if (!index_.emplace(article_ids[r], r).second)
      throw Error(ErrorCode::DuplicateArticleId, "embedding row id " + article_ids[r]);
  }
}

std::vector<std::uint8_t> encode_embeddings(const EmbeddingMatrix& m) {
  const std::size_t per_row = static_cast<std::size_t>(m.steps) * m.dim;
  if (m.article_ids.size() != m.row_count || m.data.size() != per_row * m.row_count)
    throw Error(ErrorCode::DimensionMismatch,
                "embedding matrix fields disagree on row count or shape");
  std::vector<std::uint8_t> out;
  out.reserve(20 + m.data.size() * 4);
  for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
  append_u32(out, kVersion);
  append_u32(out, m.row_count);
  append_u32(out, m.steps);
  append_u32(out, m.dim);
  for (std::size_t r = 0; r < m.row_count; ++r) {
    const std::string& id = m.article_ids[r];
    if (id.size() > 0xffff)
      throw Error(ErrorCode::IoError, "article id longer than 65535 bytes");
    append_u16(out, static_cast<std::uint16_t>(id.size()));
    for (char c : id) out.push_back(static_cast<std::uint8_t>(c));
    const float* row = m.row(r);
    for (std::size_t k = 0; k < per_row; ++k) append_f32(out, row[k]);
  }
  return out;
}

EmbeddingMatrix decode_embeddings(const std::vector<std::uint8_t>& bytes,
                                  const std::string& origin) {
  ByteReader reader(bytes);
  const std::string magic = reader.bytes(4);
  if (magic != std::string(kMagic, 4))
    throw Error(ErrorCode::BadMagic, origin + ": not an EMBV file");
  const std::uint32_t version = reader.u32();
  if (version != kVersion)
    throw Error(ErrorCode::VersionUnsupported,
                origin + ": EMBV version " + std::to_string(version));
  EmbeddingMatrix m;
  m.row_count = reader.u32();
  m.steps = reader.u32();
  m.dim = reader.u32();
  if (m.row_count > 0 && (m.steps == 0 || m.dim == 0))
    throw Error(ErrorCode::DimensionMismatch, origin + ": zero steps or dim");
  const std::size_t per_row = static_cast<std::size_t>(m.steps) * m.dim;
  m.data.reserve(per_row * m.row_count);
  m.article_ids.reserve(m.row_count);
  for (std::uint32_t r = 0; r < m.row_count; ++r) {
    const std::uint16_t id_length = reader.u16();
    m.article_ids.push_back(reader.bytes(id_length));
    for (std::size_t k = 0; k < per_row; ++k) m.data.push_back(reader.f32());
  }
  if (reader.remaining() != 0)
    throw Error(ErrorCode::TruncatedPayload,
                origin + ": " + std::to_string(reader.remaining()) +
                    " trailing bytes after last row");
  m.rebuild_index();
  return m;
}

EmbeddingMatrix read_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_embeddings(bytes, path);
}

void write_embeddings(const EmbeddingMatrix& m, const std::string& path) {
  write_file_atomic(std::filesystem::path(path), encode_embeddings(m));
}

}  // namespace newsclf::corpus
