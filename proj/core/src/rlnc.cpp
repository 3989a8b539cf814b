// SPDX-License-Identifier: Apache-2.0
#include "galois/rlnc.hpp"

#include <algorithm>

namespace galois::rlnc {
namespace {

std::vector<Element> random_nonzero_vector(std::size_t k, Rng& rng) {
  std::vector<Element> v(k);
  for (;;) {
    bool nonzero = false;
    for (auto& x : v) {
      x = uniform_byte(rng);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) {
      return v;
    }
  }
}

bool all_zero(std::span<const Element> v) {
  return std::all_of(v.begin(), v.end(), [](Element x) { return x == 0; });
}

void check_same_message(std::span<const Shard* const> shards) {
  for (const Shard* s : shards) {
    if (s->msgId != shards.front()->msgId || s->k() != shards.front()->k() ||
        s->originalLength != shards.front()->originalLength) {
      throw Error(ErrorCode::kMixedMessages, "shards belong to different messages");
    }
  }
}

template <typename Range, typename Project>
std::vector<const Shard*> pointers(const Range& range, Project project) {
  std::vector<const Shard*> out;
  out.reserve(range.size());
  for (const auto& item : range) {
    out.push_back(project(item));
  }
  return out;
}

std::vector<const Shard*> pointers(const std::vector<Shard>& shards) {
  return pointers(shards, [](const Shard& s) { return &s; });
}

std::vector<const Shard*> pointers(const std::vector<ShardPtr>& shards) {
  return pointers(shards, [](const ShardPtr& s) { return s.get(); });
}

}  // namespace

std::size_t fragment_length(std::uint64_t length, std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::kBadParameters, "k must be at least 1");
  }
  return static_cast<std::size_t>((length + k - 1) / k);
}

std::vector<Bytes> fragment(ByteView value, std::size_t k) {
  const std::size_t len = fragment_length(value.size(), k);
  std::vector<Bytes> out(k, Bytes(len, 0));
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t begin = std::min(value.size(), j * len);
    const std::size_t end = std::min(value.size(), begin + len);
    std::copy(value.begin() + static_cast<std::ptrdiff_t>(begin),
              value.begin() + static_cast<std::ptrdiff_t>(end), out[j].begin());
  }
  return out;
}

Bytes combine(std::span<const Element> coeffs, const std::vector<Bytes>& fragments) {
  if (coeffs.size() != fragments.size() || fragments.empty()) {
    throw Error(ErrorCode::kBadParameters, "coefficient count differs from fragment count");
  }
  Bytes out(fragments.front().size(), 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    gf256::mul_add(out, fragments[j], coeffs[j]);
  }
  return out;
}

std::vector<Shard> encode(ByteView value, std::size_t k, std::size_t n, Rng& rng) {
  if (k == 0 || n < k || value.empty()) {
    throw Error(ErrorCode::kBadParameters, "encode needs k >= 1, n >= k and a nonempty value");
  }
  const auto fragments = fragment(value, k);
  const crypto::Digest id = crypto::hash(value);
  std::vector<Shard> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Shard s;
    s.msgId = id;
    s.originalLength = value.size();
    s.coeffs = random_nonzero_vector(k, rng);
    s.payload = combine(s.coeffs, fragments);
    out.push_back(std::move(s));
  }
  return out;
}

Shard recode(std::span<const Shard* const> inputs, Rng& rng) {
  if (inputs.empty()) {
    throw Error(ErrorCode::kBadParameters, "recode needs at least one shard");
  }
  check_same_message(inputs);
  const std::size_t k = inputs.front()->k();
  if (std::all_of(inputs.begin(), inputs.end(), [](const Shard* s) { return all_zero(s->coeffs); })) {
    throw Error(ErrorCode::kBadParameters, "inputs span only the zero vector");
  }
  std::vector<Element> weights(inputs.size());
  std::vector<Element> coeffs(k);
  do {
    std::fill(coeffs.begin(), coeffs.end(), Element{0});
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      weights[i] = uniform_byte(rng);
      gf256::mul_add(coeffs, inputs[i]->coeffs, weights[i]);
    }
  } while (all_zero(coeffs));

  Shard out;
  out.msgId = inputs.front()->msgId;
  out.creator = inputs.front()->creator;
  out.originalLength = inputs.front()->originalLength;
  out.coeffs = std::move(coeffs);
  out.payload.assign(inputs.front()->payload.size(), 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    gf256::mul_add(out.payload, inputs[i]->payload, weights[i]);
  }
  return out;
}

Shard recode(const std::vector<Shard>& inputs, Rng& rng) { return recode(pointers(inputs), rng); }

Shard recode(const std::vector<ShardPtr>& inputs, Rng& rng) {
  return recode(pointers(inputs), rng);
}

Bytes decode(std::span<const Shard* const> shards, std::size_t k, std::uint64_t originalLength) {
  if (k == 0) {
    throw Error(ErrorCode::kBadParameters, "k must be at least 1");
  }
  if (shards.empty()) {
    throw Error(ErrorCode::kInsufficientRank, "no shards");
  }
  check_same_message(shards);
  RankTracker tracker(k);
  std::vector<const Shard*> basis;
  for (const Shard* s : shards) {
    if (s->k() != k) {
      throw Error(ErrorCode::kMixedMessages, "shard k differs from decode k");
    }
    if (tracker.add(s->coeffs)) {
      basis.push_back(s);
      if (tracker.full()) {
        break;
      }
    }
  }
  if (!tracker.full()) {
    throw Error(ErrorCode::kInsufficientRank,
                "rank " + std::to_string(tracker.rank()) + " < k = " + std::to_string(k));
  }
  const std::size_t len = basis.front()->payload.size();
  gf256::Matrix a(k, k);
  gf256::Matrix rhs(k, len);
  for (std::size_t i = 0; i < k; ++i) {
    if (basis[i]->payload.size() != len) {
      throw Error(ErrorCode::kMixedMessages, "payload lengths differ");
    }
    std::copy(basis[i]->coeffs.begin(), basis[i]->coeffs.end(), a.row(i).begin());
    std::copy(basis[i]->payload.begin(), basis[i]->payload.end(), rhs.row(i).begin());
  }
  const gf256::Matrix x = gf256::solve(a, rhs);
  Bytes out;
  out.reserve(k * len);
  for (std::size_t j = 0; j < k; ++j) {
    out.insert(out.end(), x.row(j).begin(), x.row(j).end());
  }
  if (originalLength > out.size()) {
    throw Error(ErrorCode::kBadParameters, "original length exceeds decoded fragments");
  }
  out.resize(static_cast<std::size_t>(originalLength));
  return out;
}

Bytes decode(const std::vector<Shard>& shards, std::size_t k, std::uint64_t originalLength) {
  return decode(pointers(shards), k, originalLength);
}

Bytes decode(const std::vector<ShardPtr>& shards, std::size_t k, std::uint64_t originalLength) {
  return decode(pointers(shards), k, originalLength);
}

RankTracker::RankTracker(std::size_t k) : k_(k), basis_(k) {}

std::vector<Element> RankTracker::reduce(std::span<const Element> coeffs) const {
  if (coeffs.size() != k_) {
    throw Error(ErrorCode::kBadParameters, "coefficient vector has the wrong length");
  }
  std::vector<Element> v(coeffs.begin(), coeffs.end());
  for (std::size_t c = 0; c < k_; ++c) {
    if (v[c] != 0 && !basis_[c].empty()) {
      gf256::mul_add(v, basis_[c], v[c]);
    }
  }
  return v;
}

bool RankTracker::add(std::span<const Element> coeffs) {
  auto v = reduce(coeffs);
  const auto lead = std::find_if(v.begin(), v.end(), [](Element x) { return x != 0; });
  if (lead == v.end()) {
    return false;
  }
  const auto c = static_cast<std::size_t>(lead - v.begin());
  gf256::scale(v, gf256::inv(v[c]));
  basis_[c] = std::move(v);
  ++rank_;
  return true;
}

bool RankTracker::is_innovative(std::span<const Element> coeffs) const {
  return !all_zero(reduce(coeffs));
}

bool is_innovative(std::span<const Shard* const> existing, const Shard& candidate) {
  RankTracker tracker(candidate.k());
  for (const Shard* s : existing) {
    tracker.add(s->coeffs);
  }
  return tracker.is_innovative(candidate.coeffs);
}

bool is_innovative(const std::vector<Shard>& existing, const Shard& candidate) {
  return is_innovative(pointers(existing), candidate);
}

std::size_t coefficient_rank(std::span<const Shard* const> shards) {
  if (shards.empty()) {
    return 0;
  }
  RankTracker tracker(shards.front()->k());
  for (const Shard* s : shards) {
    tracker.add(s->coeffs);
  }
  return tracker.rank();
}

}  // namespace galois::rlnc
