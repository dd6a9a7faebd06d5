#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace osnlink {

enum class ErrorKind {
  InvalidArgument,
  SamePlatform,
  MixedUser,
  ModeMismatch,
  MalformedLine,
  DimensionMismatch,
  EmptyDataset,
  ParseError,
  EmptyCorpus,
  InsufficientPool,
  DegenerateSplit,
  TooFewExamples,
  LengthMismatch,
  InvalidTimestamp,
  FormatError,
  IoError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can report a single `error: <Kind>: <message>` line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace osnlink
