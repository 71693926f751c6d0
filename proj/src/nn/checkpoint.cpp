#include "newsclf/nn/checkpoint.hpp"

#include <filesystem>
#include <fstream>

#include "newsclf/util/io.hpp"

namespace newsclf::nn {

namespace {

constexpr char kMagic[4] = {'N', 'N', 'P', 'K'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_checkpoint(const ParamSet& params, const std::string& path) {
  std::vector<std::uint8_t> out;
  for (char c : kMagic) out.push_back(static_cast<std::uint8_t>(c));
  append_u32(out, kVersion);
  append_u32(out, static_cast<std::uint32_t>(params.count()));
  for (int i = 0; i < params.count(); ++i) {
    const ParamSet::Entry& entry = params.entry(i);
    if (entry.name.size() > 0xffff)
      fail(ErrorCode::IoError, "parameter name longer than 65535 bytes");
    append_u16(out, static_cast<std::uint16_t>(entry.name.size()));
    for (char c : entry.name) out.push_back(static_cast<std::uint8_t>(c));
    out.push_back(static_cast<std::uint8_t>(entry.value.rank()));
    for (int d = 0; d < entry.value.rank(); ++d)
      append_u32(out, static_cast<std::uint32_t>(entry.value.dim(d)));
    for (float v : entry.value.data) append_f32(out, v);
  }
  write_file_atomic(std::filesystem::path(path), out);
}

void load_checkpoint(ParamSet& params, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  ByteReader reader(bytes);
  if (reader.bytes(4) != std::string(kMagic, 4))
    fail(ErrorCode::BadMagic, path + ": not an NNPK file");
  const std::uint32_t version = reader.u32();
  if (version != kVersion)
    fail(ErrorCode::VersionUnsupported, path + ": NNPK version " + std::to_string(version));
  const std::uint32_t count = reader.u32();
  if (count != static_cast<std::uint32_t>(params.count()))
    fail(ErrorCode::ArchitectureMismatch,
         path + " holds " + std::to_string(count) + " tensors, model expects " +
             std::to_string(params.count()));
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint16_t name_len = reader.u16();
    const std::string name = reader.bytes(name_len);
    ParamSet::Entry& entry = params.entry(static_cast<int>(i));
    if (name != entry.name)
      fail(ErrorCode::ArchitectureMismatch, path + " tensor " + std::to_string(i) + " is \"" +
                                                name + "\", model expects \"" + entry.name +
                                                "\"");
    const std::uint8_t rank = reader.u8();
    std::vector<int> shape;
    for (std::uint8_t d = 0; d < rank; ++d) shape.push_back(static_cast<int>(reader.u32()));
    if (shape != entry.value.shape)
      fail(ErrorCode::ArchitectureMismatch,
           path + " tensor \"" + name + "\" has shape " + Tensor(shape).shape_str() +
               ", model expects " + entry.value.shape_str());
    for (float& v : entry.value.data) v = reader.f32();
  }
  if (reader.remaining() != 0)
    fail(ErrorCode::TruncatedPayload,
         path + ": " + std::to_string(reader.remaining()) + " trailing bytes");
}

}  // namespace newsclf::nn
