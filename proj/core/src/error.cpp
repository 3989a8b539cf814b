// SPDX-License-Identifier: Apache-2.0
#include "galois/common.hpp"

namespace galois {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kZeroInverse: return "ZeroInverse";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kBadParameters: return "BadParameters";
    case ErrorCode::kMixedMessages: return "MixedMessages";
    case ErrorCode::kInsufficientRank: return "InsufficientRank";
    case ErrorCode::kUnknownPeer: return "UnknownPeer";
    case ErrorCode::kNotDecoded: return "NotDecoded";
    case ErrorCode::kInfeasibleDegree: return "InfeasibleDegree";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kWireFormat: return "WireFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace galois
