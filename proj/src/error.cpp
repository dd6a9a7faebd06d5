#include "osnlink/error.hpp"

namespace osnlink {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SamePlatform: return "SamePlatform";
    case ErrorKind::MixedUser: return "MixedUser";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::InsufficientPool: return "InsufficientPool";
    case ErrorKind::DegenerateSplit: return "DegenerateSplit";
    case ErrorKind::TooFewExamples: return "TooFewExamples";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidTimestamp: return "InvalidTimestamp";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace osnlink
