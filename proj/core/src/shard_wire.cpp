// SPDX-License-Identifier: Apache-2.0
#include "galois/rlnc.hpp"

#include <limits>

#include "byte_io.hpp"

namespace galois::rlnc {

std::size_t wire_size(std::size_t k, std::size_t payloadLen, std::size_t sigLen) noexcept {
  return 32 + 8 + 2 + 8 + k + 4 + payloadLen + 2 + sigLen;
}

std::size_t wire_size(const Shard& shard) noexcept {
  return wire_size(shard.k(), shard.payload.size(), shard.signature.size());
}

namespace {

void append_fields(Bytes& out, const Shard& shard, ByteView signature) {
  if (shard.k() > std::numeric_limits<std::uint16_t>::max() ||
      shard.payload.size() > std::numeric_limits<std::uint32_t>::max() ||
      signature.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorCode::kWireFormat, "shard field exceeds its wire width");
  }
  detail::put_bytes(out, shard.msgId.bytes);
  detail::put_uint(out, to_u64(shard.creator), 8);
  detail::put_uint(out, shard.k(), 2);
  detail::put_uint(out, shard.originalLength, 8);
  detail::put_bytes(out, shard.coeffs);
  detail::put_uint(out, shard.payload.size(), 4);
  detail::put_bytes(out, shard.payload);
  detail::put_uint(out, signature.size(), 2);
  detail::put_bytes(out, signature);
}

}  // namespace

void append_wire(Bytes& out, const Shard& shard) { append_fields(out, shard, shard.signature); }

Bytes encode_wire(const Shard& shard) {
  Bytes out;
  append_wire(out, shard);
  return out;
}

Shard read_wire(ByteView data, std::size_t& offset) {
  detail::Reader in(data, offset);
  Shard s;
  const ByteView id = in.bytes(32);
  std::copy(id.begin(), id.end(), s.msgId.bytes.begin());
  s.creator = peer(in.uint(8));
  const auto k = static_cast<std::size_t>(in.uint(2));
  if (k == 0) {
    throw Error(ErrorCode::kWireFormat, "shard with k = 0");
  }
  s.originalLength = in.uint(8);
  const ByteView coeffs = in.bytes(k);
  s.coeffs.assign(coeffs.begin(), coeffs.end());
  const auto payloadLen = static_cast<std::size_t>(in.uint(4));
  if (payloadLen != fragment_length(s.originalLength, k)) {
    throw Error(ErrorCode::kWireFormat, "payload length disagrees with original length");
  }
  const ByteView payload = in.bytes(payloadLen);
  s.payload.assign(payload.begin(), payload.end());
  const auto sigLen = static_cast<std::size_t>(in.uint(2));
  const ByteView sig = in.bytes(sigLen);
  s.signature.assign(sig.begin(), sig.end());
  offset = in.offset();
  return s;
}

Shard decode_wire(ByteView data) {
  std::size_t offset = 0;
  Shard s = read_wire(data, offset);
  if (offset != data.size()) {
    throw Error(ErrorCode::kWireFormat, "trailing bytes after shard");
  }
  return s;
}

Bytes signing_bytes(const Shard& shard) {
  Bytes out;
  append_fields(out, shard, {});
  return out;
}

void sign(Shard& shard, const crypto::KeyPair& signer, const crypto::SignatureScheme& scheme) {
  shard.creator = signer.peer;
  shard.signature = scheme.sign(signer, signing_bytes(shard));
}

bool verify(const Shard& shard, const crypto::SignatureScheme& scheme) {
  return scheme.verify(shard.creator, signing_bytes(shard), shard.signature);
}

}  // namespace galois::rlnc
