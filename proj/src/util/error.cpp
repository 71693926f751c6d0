#include "newsclf/util/error.hpp"

namespace newsclf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingTag: return "MissingTag";
    case ErrorCode::EmptyContent: return "EmptyContent";
    case ErrorCode::MalformedTag: return "MalformedTag";
    case ErrorCode::UnknownLabelName: return "UnknownLabelName";
    case ErrorCode::DuplicateArticleId: return "DuplicateArticleId";
    case ErrorCode::DanglingLabel: return "DanglingLabel";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::BadRatios: return "BadRatios";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SidecarLengthMismatch: return "SidecarLengthMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::AllMasked: return "AllMasked";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::VocabMismatch: return "VocabMismatch";
    case ErrorCode::BadVectorLine: return "BadVectorLine";
    case ErrorCode::InconsistentDim: return "InconsistentDim";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::DivergedLoss: return "DivergedLoss";
    case ErrorCode::ArchitectureMismatch: return "ArchitectureMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace newsclf
