// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace galois {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Simulated time. Nodes never read a global clock; only the simulator does.
using Time = std::chrono::nanoseconds;

/// Peer identifier, 8 bytes on the wire.
enum class PeerId : std::uint64_t {};

constexpr std::uint64_t to_u64(PeerId id) noexcept {
  return static_cast<std::uint64_t>(id);
}

constexpr PeerId peer(std::uint64_t id) noexcept { return PeerId{id}; }

enum class ErrorCode {
  kZeroInverse,
  kSingularMatrix,
  kBadParameters,
  kMixedMessages,
  kInsufficientRank,
  kUnknownPeer,
  kNotDecoded,
  kInfeasibleDegree,
  kConfig,
  kWireFormat,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace galois
