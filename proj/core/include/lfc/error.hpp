#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lfc {

enum class ErrorCode {
  MissingView,
  DimensionMismatch,
  UnsupportedBitDepth,
  InvalidSelection,
  TargetTooSmall,
  InvalidGrid,
  InvalidConfig,
  CorruptStream,
  RefMismatch,
  VersionMismatch,
  NoOverlap,
  DegenerateFit,
  TooSmall,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void check(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) {
    fail(code, what);
  }
}

}  // namespace lfc
