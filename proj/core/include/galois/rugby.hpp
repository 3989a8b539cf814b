// SPDX-License-Identifier: Apache-2.0
//
// Pollution handling helpers. The node-side transitions (discovery, self
// isolation, alerts, quarantine audit) are members of OptimumNode; this header
// holds the pieces that do not need node state.
#pragma once

#include <vector>

#include "galois/common.hpp"
#include "galois/rlnc.hpp"

namespace galois::protocol {

/// True iff shard.payload equals the combination of the decoded fragments
/// selected by shard.coeffs. Given an honest basis, this holds exactly when
/// the shard could replace a basis row without changing the decoded value.
bool witness_test(const rlnc::Shard& shard, const std::vector<Bytes>& fragments);

}  // namespace galois::protocol
