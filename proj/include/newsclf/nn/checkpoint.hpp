#pragma once

#include <string>

#include "newsclf/nn/params.hpp"

namespace newsclf::nn {

// NNPK container, little-endian: magic "NNPK", u32 version=1, u32 tensor
// count, then per tensor [u16 name length, name, u8 rank, u32 dims..., f32
// payload]. Tensors appear in registration order; round-trips are bit-exact.
//
// load_checkpoint fills an already constructed ParamSet and throws
// ArchitectureMismatch when names, shapes or count differ; file-level errors
// are BadMagic, VersionUnsupported and TruncatedPayload.
void save_checkpoint(const ParamSet& params, const std::string& path);
void load_checkpoint(ParamSet& params, const std::string& path);

}  // namespace newsclf::nn
