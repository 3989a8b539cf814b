// SPDX-License-Identifier: Apache-2.0
#include "galois/envelope.hpp"

#include "byte_io.hpp"

namespace galois::protocol {
namespace {

bool body_matches(const Envelope& env) noexcept {
  switch (env.kind) {
    case MessageKind::kShard:
      return std::holds_alternative<rlnc::ShardPtr>(env.body) && env.shard() != nullptr;
    case MessageKind::kAlert:
      return std::holds_alternative<AlertBody>(env.body) && env.alert().evidence != nullptr;
    case MessageKind::kFullMessage:
      return std::holds_alternative<FullMessageBody>(env.body) && env.full().value != nullptr;
    case MessageKind::kIDontWant:
    case MessageKind::kIHave:
    case MessageKind::kIWant:
    case MessageKind::kPolluted:
      return std::holds_alternative<std::monostate>(env.body);
  }
  return false;
}

}  // namespace

const char* to_string(MessageKind kind) noexcept {
  switch (kind) {
    case MessageKind::kShard: return "SHARD";
    case MessageKind::kIDontWant: return "IDONTWANT";
    case MessageKind::kIHave: return "IHAVE";
    case MessageKind::kIWant: return "IWANT";
    case MessageKind::kAlert: return "ALERT";
    case MessageKind::kPolluted: return "POLLUTED";
    case MessageKind::kFullMessage: return "FULLMSG";
  }
  return "UNKNOWN";
}

Envelope make_control(MessageKind kind, PeerId from, PeerId to, const crypto::Digest& m) {
  return Envelope{kind, from, to, m, std::monostate{}};
}

Envelope make_shard(PeerId from, PeerId to, rlnc::ShardPtr shard) {
  const crypto::Digest m = shard->msgId;
  return Envelope{MessageKind::kShard, from, to, m, std::move(shard)};
}

Envelope make_alert(PeerId from, PeerId to, PeerId accused, rlnc::ShardPtr evidence) {
  const crypto::Digest m = evidence->msgId;
  return Envelope{MessageKind::kAlert, from, to, m, AlertBody{accused, std::move(evidence)}};
}

Envelope make_full(PeerId from, PeerId to, const crypto::Digest& m,
                   std::shared_ptr<const Bytes> value) {
  return Envelope{MessageKind::kFullMessage, from, to, m, FullMessageBody{std::move(value)}};
}

std::size_t body_size(const Envelope& env) noexcept {
  switch (env.kind) {
    case MessageKind::kShard:
      return rlnc::wire_size(*env.shard());
    case MessageKind::kAlert: {
      const auto& e = *env.alert().evidence;
      return 8 + rlnc::wire_size(e.k(), e.payload.size(), 0) + 2 + e.signature.size();
    }
    case MessageKind::kFullMessage:
      return 8 + env.full().value->size();
    default:
      return 0;
  }
}

std::size_t wire_size(const Envelope& env) noexcept {
  return Envelope::kHeaderSize + body_size(env);
}

Bytes encode(const Envelope& env) {
  if (!body_matches(env)) {
    throw Error(ErrorCode::kWireFormat, std::string("body does not match kind ") +
                                            to_string(env.kind));
  }
  Bytes out;
  out.reserve(wire_size(env));
  detail::put_uint(out, static_cast<std::uint8_t>(env.kind), 1);
  detail::put_uint(out, to_u64(env.from), 8);
  detail::put_uint(out, to_u64(env.to), 8);
  detail::put_bytes(out, env.msgId.bytes);
  detail::put_uint(out, body_size(env), 4);
  switch (env.kind) {
    case MessageKind::kShard:
      rlnc::append_wire(out, *env.shard());
      break;
    case MessageKind::kAlert: {
      const auto& alert = env.alert();
      detail::put_uint(out, to_u64(alert.accused), 8);
      rlnc::Shard stripped = *alert.evidence;
      stripped.signature.clear();
      rlnc::append_wire(out, stripped);
      detail::put_uint(out, alert.evidence->signature.size(), 2);
      detail::put_bytes(out, alert.evidence->signature);
      break;
    }
    case MessageKind::kFullMessage:
      detail::put_uint(out, env.full().value->size(), 8);
      detail::put_bytes(out, *env.full().value);
      break;
    default:
      break;
  }
  return out;
}

Envelope decode(ByteView data) {
  detail::Reader in(data, 0);
  Envelope env;
  const auto kind = in.uint(1);
  if (kind < 1 || kind > 7) {
    throw Error(ErrorCode::kWireFormat, "unknown envelope kind " + std::to_string(kind));
  }
  env.kind = static_cast<MessageKind>(kind);
  env.from = peer(in.uint(8));
  env.to = peer(in.uint(8));
  const ByteView id = in.bytes(32);
  std::copy(id.begin(), id.end(), env.msgId.bytes.begin());
  const auto bodyLen = static_cast<std::size_t>(in.uint(4));
  if (in.remaining() != bodyLen) {
    throw Error(ErrorCode::kWireFormat, "body length disagrees with envelope size");
  }
  const ByteView body = in.bytes(bodyLen);
  detail::Reader b(body, 0);
  switch (env.kind) {
    case MessageKind::kShard: {
      std::size_t offset = 0;
      env.body = std::make_shared<const rlnc::Shard>(rlnc::read_wire(body, offset));
      b = detail::Reader(body, offset);
      if (env.shard()->msgId != env.msgId) {
        throw Error(ErrorCode::kWireFormat, "shard msgId differs from envelope msgId");
      }
      break;
    }
    case MessageKind::kAlert: {
      const PeerId accused = peer(b.uint(8));
      std::size_t offset = b.offset();
      rlnc::Shard evidence = rlnc::read_wire(body, offset);
      if (!evidence.signature.empty()) {
        throw Error(ErrorCode::kWireFormat, "alert evidence must be embedded unsigned");
      }
      b = detail::Reader(body, offset);
      const auto sigLen = static_cast<std::size_t>(b.uint(2));
      const ByteView sig = b.bytes(sigLen);
      evidence.signature.assign(sig.begin(), sig.end());
      if (evidence.msgId != env.msgId) {
        throw Error(ErrorCode::kWireFormat, "evidence msgId differs from envelope msgId");
      }
      env.body = AlertBody{accused, std::make_shared<const rlnc::Shard>(std::move(evidence))};
      break;
    }
    case MessageKind::kFullMessage: {
      const auto len = static_cast<std::size_t>(b.uint(8));
      const ByteView value = b.bytes(len);
      env.body = FullMessageBody{std::make_shared<const Bytes>(value.begin(), value.end())};
      break;
    }
    default:
      break;
  }
  if (b.remaining() != 0) {
    throw Error(ErrorCode::kWireFormat, "trailing bytes in envelope body");
  }
  return env;
}

}  // namespace galois::protocol
