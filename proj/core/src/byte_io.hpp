// SPDX-License-Identifier: Apache-2.0
// Big-endian field helpers shared by the wire codecs.
#pragma once

#include <cstdint>
#include <string>

#include "galois/common.hpp"

namespace galois::detail {

inline void put_uint(Bytes& out, std::uint64_t v, int width) {
  for (int shift = 8 * (width - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

inline void put_bytes(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

class Reader {
 public:
  Reader(ByteView data, std::size_t offset) : data_(data), offset_(offset) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v = (v << 8) | data_[offset_++];
    }
    return v;
  }

  ByteView bytes(std::size_t n) {
    need(n);
    const ByteView out = data_.subspan(offset_, n);
    offset_ += n;
    return out;
  }

  std::size_t offset() const noexcept { return offset_; }
  std::size_t remaining() const noexcept { return data_.size() - offset_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - offset_ < n) {
      throw Error(ErrorCode::kWireFormat, "truncated input at offset " + std::to_string(offset_));
    }
  }

  ByteView data_;
  std::size_t offset_;
};

}  // namespace galois::detail
