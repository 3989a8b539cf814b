// SPDX-License-Identifier: Apache-2.0
//
// Random linear network coding over GF(2^8). A value is cut into k equal
// fragments (the last zero-padded); every shard carries a dense coefficient
// vector c and the payload sum_j c_j * fragment_j, byte by byte.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "galois/common.hpp"
#include "galois/gf256.hpp"
#include "galois/keccak.hpp"
#include "galois/random.hpp"
#include "galois/signature.hpp"

namespace galois::rlnc {

using gf256::Element;

struct Shard {
  crypto::Digest msgId;
  PeerId creator{};
  std::uint64_t originalLength = 0;
  std::vector<Element> coeffs;
  Bytes payload;
  crypto::Signature signature;

  std::size_t k() const noexcept { return coeffs.size(); }

  friend bool operator==(const Shard&, const Shard&) = default;
};

/// Shards are immutable once signed and are shared between send queues.
using ShardPtr = std::shared_ptr<const Shard>;

/// ceil(length / k).
std::size_t fragment_length(std::uint64_t length, std::size_t k);

/// k fragments of fragment_length(value.size(), k) bytes each.
std::vector<Bytes> fragment(ByteView value, std::size_t k);

/// sum_j coeffs[j] * fragments[j].
Bytes combine(std::span<const Element> coeffs, const std::vector<Bytes>& fragments);

/// n shards with uniform nonzero coefficient vectors, msgId = hash(value),
/// unsigned and with creator left at its default.
/// Throws Error(kBadParameters) when k == 0, n < k, or value is empty.
std::vector<Shard> encode(ByteView value, std::size_t k, std::size_t n, Rng& rng);

/// A fresh random combination of the inputs, with a nonzero coefficient
/// vector. Throws Error(kMixedMessages) if inputs disagree on msgId or k,
/// Error(kBadParameters) if inputs are empty or span only the zero vector.
Shard recode(std::span<const Shard* const> inputs, Rng& rng);
Shard recode(const std::vector<Shard>& inputs, Rng& rng);
Shard recode(const std::vector<ShardPtr>& inputs, Rng& rng);

/// Solves for the k fragments from any k independent rows and strips the
/// padding. Dependent rows are ignored. Throws Error(kInsufficientRank) if the
/// rows span less than k dimensions, Error(kMixedMessages) on mixed inputs.
Bytes decode(std::span<const Shard* const> shards, std::size_t k, std::uint64_t originalLength);
Bytes decode(const std::vector<Shard>& shards, std::size_t k, std::uint64_t originalLength);
Bytes decode(const std::vector<ShardPtr>& shards, std::size_t k, std::uint64_t originalLength);

/// Incremental row-echelon basis over GF(2^8)^k.
class RankTracker {
 public:
  explicit RankTracker(std::size_t k);

  /// Adds the row if it increases the rank; returns whether it did.
  bool add(std::span<const Element> coeffs);
  bool is_innovative(std::span<const Element> coeffs) const;

  std::size_t k() const noexcept { return k_; }
  std::size_t rank() const noexcept { return rank_; }
  bool full() const noexcept { return rank_ == k_; }

 private:
  std::vector<Element> reduce(std::span<const Element> coeffs) const;

  std::size_t k_;
  std::size_t rank_ = 0;
  // basis_[c] is either empty or a row whose first nonzero entry is a 1 at c.
  std::vector<std::vector<Element>> basis_;
};

/// True iff candidate raises the rank of existing.
bool is_innovative(std::span<const Shard* const> existing, const Shard& candidate);
bool is_innovative(const std::vector<Shard>& existing, const Shard& candidate);

/// Row rank of the stacked coefficient vectors.
std::size_t coefficient_rank(std::span<const Shard* const> shards);

// Wire layout, big-endian:
//   msgId(32) | creator(8) | k(2) | originalLength(8) | coeffs(k) |
//   payloadLen(4) | payload | sigLen(2) | signature

std::size_t wire_size(const Shard& shard) noexcept;
/// Size of the layout for the given shape, without materializing a shard.
std::size_t wire_size(std::size_t k, std::size_t payloadLen, std::size_t sigLen) noexcept;

Bytes encode_wire(const Shard& shard);
void append_wire(Bytes& out, const Shard& shard);

/// Throws Error(kWireFormat) on truncation, trailing bytes, or payloadLen not
/// equal to fragment_length(originalLength, k).
Shard decode_wire(ByteView data);
/// Reads one shard starting at offset and advances offset past it.
Shard read_wire(ByteView data, std::size_t& offset);

/// The bytes a shard signature covers: the wire layout with an empty signature.
Bytes signing_bytes(const Shard& shard);

void sign(Shard& shard, const crypto::KeyPair& signer, const crypto::SignatureScheme& scheme);
/// Checks shard.signature under shard.creator.
bool verify(const Shard& shard, const crypto::SignatureScheme& scheme);

}  // namespace galois::rlnc
