// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <unordered_map>

#include "galois/common.hpp"

namespace galois::crypto {

using Signature = Bytes;

struct KeyPair {
  PeerId peer{};
  Bytes secret;
  /// What a verifier needs. For the keyed-MAC stand-in this equals secret.
  Bytes verification;

  /// Deterministic key material for simulation; distinct (peer, seed) pairs
  /// give unrelated keys.
  static KeyPair derive(PeerId peer, std::uint64_t seed);
};

class SignatureScheme {
 public:
  virtual ~SignatureScheme() = default;

  virtual Signature sign(const KeyPair& signer, ByteView data) const = 0;
  /// Throws Error(kUnknownPeer) if no verification key is known for claimed.
  virtual bool verify(PeerId claimed, ByteView data, ByteView sig) const = 0;
};

/// sig = keccak256(secret || data). Stands in for a real signature scheme:
/// the registry is filled once at setup and only read afterwards, so one
/// instance can be shared by every node of a simulation.
class KeyedMacScheme final : public SignatureScheme {
 public:
  void register_peer(const KeyPair& keys);

  Signature sign(const KeyPair& signer, ByteView data) const override;
  bool verify(PeerId claimed, ByteView data, ByteView sig) const override;

 private:
  std::unordered_map<std::uint64_t, Bytes> registry_;
};

}  // namespace galois::crypto
