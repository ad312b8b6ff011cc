#include "fxwave/error.hpp"

namespace fxwave {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BadFilter: return "BadFilter";
    case ErrorKind::ScaleTooSmall: return "ScaleTooSmall";
    case ErrorKind::SignalTooShort: return "SignalTooShort";
    case ErrorKind::RefusedSize: return "RefusedSize";
    case ErrorKind::UnknownScale: return "UnknownScale";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::NoUsableScales: return "NoUsableScales";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

ErrorClass error_class(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::BadConfig:
      return ErrorClass::Usage;
    case ErrorKind::NoData:
    case ErrorKind::MalformedRow:
    case ErrorKind::Io:
    case ErrorKind::UnknownScale:
      return ErrorClass::Data;
    default:
      return ErrorClass::Numeric;
  }
}

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<long long> detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message),
      kind_(kind),
      detail_(detail) {}

}  // namespace fxwave
