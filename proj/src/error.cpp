// SPDX-License-Identifier: Apache-2.0
#include "phasekit/error.hpp"

namespace phasekit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotParseval: return "NotParseval";
    case ErrorKind::NotTracePreserving: return "NotTracePreserving";
    case ErrorKind::NotRankOne: return "NotRankOne";
    case ErrorKind::NotPOVM: return "NotPOVM";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ScaleLimit: return "ScaleLimit";
    case ErrorKind::UnknownChannel: return "UnknownChannel";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace phasekit
