// SPDX-License-Identifier: Apache-2.0
#include "galois/keccak.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace galois::crypto {
namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL,
    0x8000000080008000ULL, 0x000000000000808BULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008AULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800AULL, 0x800000008000000AULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offset of lane x + 5y, and its destination under pi.
constexpr std::array<int, 25> kRotation = {0,  1,  62, 28, 27, 36, 44, 6,  55, 20, 3,  10, 43,
                                           25, 39, 41, 45, 15, 21, 8,  18, 2,  61, 56, 14};

constexpr std::array<int, 25> pi_destinations() {
  std::array<int, 25> out{};
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      out[x + 5 * y] = y + 5 * ((2 * x + 3 * y) % 5);
    }
  }
  return out;
}
constexpr std::array<int, 25> kPiDestination = pi_destinations();

// Loops have constant trip counts and are fully unrolled so every lane index
// is a compile-time constant and the state stays in registers.
void keccak_f1600(std::array<std::uint64_t, 25>& state) noexcept {
  std::uint64_t a[25];
  std::uint64_t b[25];
  std::memcpy(a, state.data(), sizeof a);
  for (const std::uint64_t rc : kRoundConstants) {
    std::uint64_t c[5];
#pragma GCC unroll 5
    for (int x = 0; x < 5; ++x) {
      c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    }
#pragma GCC unroll 5
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
#pragma GCC unroll 5
      for (int y = 0; y < 25; y += 5) {
        a[y + x] ^= d;
      }
    }
#pragma GCC unroll 25
    for (int i = 0; i < 25; ++i) {
      b[kPiDestination[i]] = std::rotl(a[i], kRotation[i]);
    }
#pragma GCC unroll 5
    for (int y = 0; y < 25; y += 5) {
#pragma GCC unroll 5
      for (int x = 0; x < 5; ++x) {
        a[y + x] = b[y + x] ^ (~b[y + (x + 1) % 5] & b[y + (x + 2) % 5]);
      }
    }
    a[0] ^= rc;
  }
  std::memcpy(state.data(), a, sizeof a);
}

std::uint64_t load_le(const std::uint8_t* p) noexcept {
  std::uint64_t v = 0;
  std::memcpy(&v, p, 8);
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap64(v);
  }
  return v;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string Digest::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (const auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

Digest Digest::from_hex(const std::string& text) {
  if (text.size() != 64) {
    throw Error(ErrorCode::kBadParameters, "digest hex must be 64 characters");
  }
  Digest d;
  for (std::size_t i = 0; i < 32; ++i) {
    const int hi = hex_value(text[2 * i]);
    const int lo = hex_value(text[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::kBadParameters, "digest hex has a non-hex character");
    }
    d.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return d;
}

Keccak256::Keccak256() noexcept = default;

void Keccak256::absorb_block(const std::uint8_t* block) noexcept {
  for (std::size_t i = 0; i < kRate / 8; ++i) {
    state_[i] ^= load_le(block + 8 * i);
  }
  keccak_f1600(state_);
}

Keccak256& Keccak256::update(ByteView data) noexcept {
  const std::uint8_t* p = data.data();
  std::size_t n = data.size();
  if (buffered_ > 0) {
    const std::size_t take = std::min(n, kRate - buffered_);
    std::memcpy(buffer_.data() + buffered_, p, take);
    buffered_ += take;
    p += take;
    n -= take;
    if (buffered_ < kRate) {
      return *this;
    }
    absorb_block(buffer_.data());
    buffered_ = 0;
  }
  while (n >= kRate) {
    absorb_block(p);
    p += kRate;
    n -= kRate;
  }
  if (n > 0) {
    std::memcpy(buffer_.data(), p, n);
    buffered_ = n;
  }
  return *this;
}

Digest Keccak256::finish() noexcept {
  std::memset(buffer_.data() + buffered_, 0, kRate - buffered_);
  buffer_[buffered_] ^= 0x01;
  buffer_[kRate - 1] ^= 0x80;
  absorb_block(buffer_.data());
  Digest d;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t b = 0; b < 8; ++b) {
      d.bytes[8 * i + b] = static_cast<std::uint8_t>(state_[i] >> (8 * b));
    }
  }
  state_.fill(0);
  buffered_ = 0;
  return d;
}

Digest hash(ByteView data) noexcept {
  Keccak256 h;
  h.update(data);
  return h.finish();
}

}  // namespace galois::crypto
