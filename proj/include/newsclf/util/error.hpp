#pragma once

#include <stdexcept>
#include <string>

namespace newsclf {

// Every failure mode the toolkit can report. CLI commands map these onto
// process exit codes (see tools/newsclf.cpp).
enum class ErrorCode {
  // corpus
  MissingTag,
  EmptyContent,
  MalformedTag,
  UnknownLabelName,
  DuplicateArticleId,
  DanglingLabel,
  EmptyCorpus,
  BadRatios,
  BadMagic,
  VersionUnsupported,
  TruncatedPayload,
  DimensionMismatch,
  // preprocess
  SidecarLengthMismatch,
  // nn
  ShapeMismatch,
  LabelOutOfRange,
  IdOutOfRange,
  AllMasked,
  NonFiniteValue,
  // models
  VocabMismatch,
  BadVectorLine,
  InconsistentDim,
  // pipeline
  EmptyDataset,
  DivergedLoss,
  // cli
  ArchitectureMismatch,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace newsclf
