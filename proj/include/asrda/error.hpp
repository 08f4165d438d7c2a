#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asrda {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kUnsupportedFormat,
  kUnsupportedVersion,
  kSilentInput,
  kEmptyCorpus,
  kEmptyReference,
  kInsufficientData,
  kIo,
  kTimeout,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the toolkit; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kSilentInput: return "SilentInput";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kTimeout: return "Timeout";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace asrda
