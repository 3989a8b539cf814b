// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <set>
#include <string>

#include "galois/keccak.hpp"
#include "galois/random.hpp"
#include "galois/signature.hpp"

namespace galois::crypto {
namespace {

Bytes text(const std::string& s) { return Bytes(s.begin(), s.end()); }

// Expected digests were computed with pycryptodome's keccak (digest_bits=256).
struct Golden {
  const char* name;
  Bytes input;
  const char* hex;
};

std::vector<Golden> goldens() {
  Bytes counting;
  for (int rep = 0; rep < 2; ++rep) {
    for (int i = 0; i < 256; ++i) counting.push_back(static_cast<std::uint8_t>(i));
  }
  return {
      {"empty", {}, "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"},
      {"abc", text("abc"), "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45"},
      {"fox", text("The quick brown fox jumps over the lazy dog"),
       "4d741b6f1eb29cb2a9b9911c82f56fa8d73b04959d3d9d222895df6c0b28aa15"},
      {"counting512", counting,
       "f55ba327291604f0e5be6651752398b7be2331aad65f5763ce067df95cc13be1"},
      {"a135", Bytes(135, 'a'), "34367dc248bbd832f4e3e69dfaac2f92638bd0bbd18f2912ba4ef454919cf446"},
      {"a136", Bytes(136, 'a'), "a6c4d403279fe3e0af03729caada8374b5ca54d8065329a3ebcaeb4b60aa386e"},
      {"a137", Bytes(137, 'a'), "d869f639c7046b4929fc92a4d988a8b22c55fbadb802c0c66ebcd484f1915f39"},
  };
}

TEST(Keccak, GoldenDigests) {
  for (const auto& g : goldens()) {
    EXPECT_EQ(hash(g.input).hex(), g.hex) << g.name;
  }
}

TEST(Keccak, IncrementalMatchesOneShotForEveryChunking) {
  Rng rng(1);
  Bytes data(1000);
  for (auto& b : data) b = uniform_byte(rng);
  const Digest whole = hash(data);
  for (const std::size_t chunk : {1u, 7u, 135u, 136u, 137u, 500u}) {
    Keccak256 h;
    for (std::size_t at = 0; at < data.size(); at += chunk) {
      h.update(ByteView(data).subspan(at, std::min(chunk, data.size() - at)));
    }
    EXPECT_EQ(h.finish(), whole) << chunk;
  }
}

TEST(Keccak, DeterministicAndCollisionFreeOnCorpus) {
  std::set<std::string> seen;
  for (int i = 0; i < 2000; ++i) {
    const Bytes input = text("corpus-" + std::to_string(i));
    EXPECT_EQ(hash(input), hash(input));
    EXPECT_TRUE(seen.insert(hash(input).hex()).second);
  }
}

TEST(Digest, HexRoundTrip) {
  const Digest d = hash(text("abc"));
  EXPECT_EQ(Digest::from_hex(d.hex()), d);
  EXPECT_THROW(Digest::from_hex("abc"), Error);
  EXPECT_THROW(Digest::from_hex(std::string(64, 'g')), Error);
}

class SchemeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    p_ = KeyPair::derive(peer(1), 9);
    q_ = KeyPair::derive(peer(2), 9);
    scheme_.register_peer(p_);
    scheme_.register_peer(q_);
  }
  KeyPair p_;
  KeyPair q_;
  KeyedMacScheme scheme_;
};

TEST_F(SchemeTest, VerifyAcceptsOnlyTheSigner) {
  const Bytes m = text("message");
  const Signature sig = scheme_.sign(p_, m);
  EXPECT_TRUE(scheme_.verify(peer(1), m, sig));
  EXPECT_FALSE(scheme_.verify(peer(2), m, sig));
  EXPECT_FALSE(scheme_.verify(peer(1), text("messagf"), sig));
}

TEST_F(SchemeTest, EveryBitFlipBreaksVerification) {
  const Bytes m = text("flip me");
  const Signature sig = scheme_.sign(p_, m);
  for (std::size_t i = 0; i < m.size() * 8; ++i) {
    Bytes changed = m;
    changed[i / 8] ^= static_cast<std::uint8_t>(1U << (i % 8));
    ASSERT_FALSE(scheme_.verify(peer(1), changed, sig));
  }
  for (std::size_t i = 0; i < sig.size() * 8; ++i) {
    Signature changed = sig;
    changed[i / 8] ^= static_cast<std::uint8_t>(1U << (i % 8));
    ASSERT_FALSE(scheme_.verify(peer(1), m, changed));
  }
}

TEST_F(SchemeTest, UnknownPeerThrows) {
  try {
    scheme_.verify(peer(77), text("x"), Signature(32, 0));
    FAIL() << "expected UnknownPeer";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownPeer);
  }
}

TEST(KeyPair, DerivationIsDeterministicAndDistinct) {
  EXPECT_EQ(KeyPair::derive(peer(3), 4).secret, KeyPair::derive(peer(3), 4).secret);
  EXPECT_NE(KeyPair::derive(peer(3), 4).secret, KeyPair::derive(peer(4), 4).secret);
  EXPECT_NE(KeyPair::derive(peer(3), 4).secret, KeyPair::derive(peer(3), 5).secret);
}

}  // namespace
}  // namespace galois::crypto
