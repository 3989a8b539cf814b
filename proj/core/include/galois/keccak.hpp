// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "galois/common.hpp"

namespace galois::crypto {

/// 32-byte keccak-256 output. Message identifiers are digests of the value.
struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  std::string hex() const;
  /// Throws Error(kBadParameters) unless text is 64 hex characters.
  static Digest from_hex(const std::string& text);

  friend auto operator<=>(const Digest&, const Digest&) = default;
};

/// Original Keccak padding (0x01), not the FIPS-202 SHA3 variant.
class Keccak256 {
 public:
  Keccak256() noexcept;

  Keccak256& update(ByteView data) noexcept;
  Digest finish() noexcept;

 private:
  static constexpr std::size_t kRate = 136;

  void absorb_block(const std::uint8_t* block) noexcept;

  std::array<std::uint64_t, 25> state_{};
  std::array<std::uint8_t, kRate> buffer_{};
  std::size_t buffered_ = 0;
};

Digest hash(ByteView data) noexcept;

}  // namespace galois::crypto

template <>
struct std::hash<galois::crypto::Digest> {
  std::size_t operator()(const galois::crypto::Digest& d) const noexcept {
    std::size_t h = 0;
    for (std::size_t i = 0; i < sizeof(std::size_t); ++i) {
      h = (h << 8) | d.bytes[i];
    }
    return h;
  }
};
