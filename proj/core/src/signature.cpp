// SPDX-License-Identifier: Apache-2.0
#include "galois/signature.hpp"

#include <algorithm>
#include <string>

#include "galois/keccak.hpp"

namespace galois::crypto {
namespace {

void append_u64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

Signature mac(ByteView secret, ByteView data) {
  Keccak256 h;
  h.update(secret).update(data);
  const Digest d = h.finish();
  return Signature(d.bytes.begin(), d.bytes.end());
}

}  // namespace

KeyPair KeyPair::derive(PeerId peer, std::uint64_t seed) {
  Bytes material;
  static constexpr char kLabel[] = "galois-key";
  material.insert(material.end(), kLabel, kLabel + sizeof(kLabel) - 1);
  append_u64(material, seed);
  append_u64(material, to_u64(peer));
  const Digest d = hash(material);
  KeyPair keys;
  keys.peer = peer;
  keys.secret.assign(d.bytes.begin(), d.bytes.end());
  keys.verification = keys.secret;
  return keys;
}

void KeyedMacScheme::register_peer(const KeyPair& keys) {
  registry_[to_u64(keys.peer)] = keys.verification;
}

Signature KeyedMacScheme::sign(const KeyPair& signer, ByteView data) const {
  return mac(signer.secret, data);
}

bool KeyedMacScheme::verify(PeerId claimed, ByteView data, ByteView sig) const {
  const auto it = registry_.find(to_u64(claimed));
  if (it == registry_.end()) {
    throw Error(ErrorCode::kUnknownPeer, "no verification key for peer " +
                                             std::to_string(to_u64(claimed)));
  }
  const Signature expected = mac(it->second, data);
  return sig.size() == expected.size() && std::equal(sig.begin(), sig.end(), expected.begin());
}

}  // namespace galois::crypto
