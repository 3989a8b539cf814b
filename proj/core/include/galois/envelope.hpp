// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <variant>

#include "galois/common.hpp"
#include "galois/keccak.hpp"
#include "galois/rlnc.hpp"

namespace galois::protocol {

enum class MessageKind : std::uint8_t {
  kShard = 1,
  kIDontWant = 2,
  kIHave = 3,
  kIWant = 4,
  kAlert = 5,
  kPolluted = 6,
  kFullMessage = 7,
};

const char* to_string(MessageKind kind) noexcept;

/// Evidence that `accused` signed a shard which is not in the honest span.
/// On the wire: accused(8) | shard layout with empty signature | sigLen(2) | sig.
struct AlertBody {
  PeerId accused{};
  rlnc::ShardPtr evidence;  // evidence->signature is the accused's signature
};

/// On the wire: originalLength(8) | value.
struct FullMessageBody {
  std::shared_ptr<const Bytes> value;
};

using Body = std::variant<std::monostate, rlnc::ShardPtr, AlertBody, FullMessageBody>;

/// Header: kind(1) | from(8) | to(8) | msgId(32) | bodyLen(4), then the body.
struct Envelope {
  static constexpr std::size_t kHeaderSize = 1 + 8 + 8 + 32 + 4;

  MessageKind kind = MessageKind::kIDontWant;
  PeerId from{};
  PeerId to{};
  crypto::Digest msgId;
  Body body;

  const rlnc::ShardPtr& shard() const { return std::get<rlnc::ShardPtr>(body); }
  const AlertBody& alert() const { return std::get<AlertBody>(body); }
  const FullMessageBody& full() const { return std::get<FullMessageBody>(body); }
};

Envelope make_control(MessageKind kind, PeerId from, PeerId to, const crypto::Digest& m);
Envelope make_shard(PeerId from, PeerId to, rlnc::ShardPtr shard);
Envelope make_alert(PeerId from, PeerId to, PeerId accused, rlnc::ShardPtr evidence);
Envelope make_full(PeerId from, PeerId to, const crypto::Digest& m,
                   std::shared_ptr<const Bytes> value);

std::size_t body_size(const Envelope& env) noexcept;
std::size_t wire_size(const Envelope& env) noexcept;

/// Throws Error(kWireFormat) when the body does not match the kind.
Bytes encode(const Envelope& env);
/// Throws Error(kWireFormat) on unknown kinds, truncation, trailing bytes, or
/// a body that contradicts the kind.
Envelope decode(ByteView data);

}  // namespace galois::protocol
