#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fxwave {

enum class ErrorKind {
  NoData,
  MalformedRow,
  TooShort,
  Undefined,
  Unsupported,
  BadFilter,
  ScaleTooSmall,
  SignalTooShort,
  RefusedSize,
  UnknownScale,
  DegenerateDistribution,
  NoUsableScales,
  BadConfig,
  Io,
  Usage,
};

std::string_view error_name(ErrorKind kind);

// Exit-code class used by the CLI: data errors are about the input, numeric
// errors are about what the analysis could compute from it.
enum class ErrorClass { Usage, Data, Numeric };

ErrorClass error_class(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<long long> detail = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

  // Line number for MalformedRow, largest admissible scale for SignalTooShort.
  std::optional<long long> detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::optional<long long> detail_;
};

}  // namespace fxwave
