// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by tests. They share no code with the
// library: field products come from shift-and-add, not tables, and the linear
// algebra runs on plain nested vectors.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace galois::oracle {

using Row = std::vector<std::uint8_t>;
using Rows = std::vector<Row>;

/// Shift-and-add product modulo x^8 + x^4 + x^3 + x + 1.
inline std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  unsigned acc = 0;
  unsigned x = a;
  for (unsigned bit = 0; bit < 8; ++bit) {
    if ((b >> bit) & 1U) {
      acc ^= x;
    }
    x <<= 1;
    if (x & 0x100U) {
      x ^= 0x11BU;
    }
  }
  return static_cast<std::uint8_t>(acc);
}

/// Exhaustive search; 0 has no inverse and maps to 0 here.
inline std::uint8_t inv(std::uint8_t a) {
  for (unsigned b = 1; b < 256; ++b) {
    if (mul(a, static_cast<std::uint8_t>(b)) == 1) {
      return static_cast<std::uint8_t>(b);
    }
  }
  return 0;
}

inline std::size_t rank(Rows m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) {
      ++p;
    }
    if (p == m.size()) {
      continue;
    }
    std::swap(m[p], m[r]);
    const std::uint8_t s = inv(m[r][c]);
    for (auto& x : m[r]) {
      x = mul(x, s);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i != r && m[i][c] != 0) {
        const std::uint8_t f = m[i][c];
        for (std::size_t j = 0; j < cols; ++j) {
          m[i][j] ^= mul(f, m[r][j]);
        }
      }
    }
    ++r;
  }
  return r;
}

inline Rows multiply(const Rows& a, const Rows& b) {
  Rows out(a.size(), Row(b.empty() ? 0 : b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < out[i].size(); ++j) {
      std::uint8_t acc = 0;
      for (std::size_t t = 0; t < b.size(); ++t) {
        acc ^= mul(a[i][t], b[t][j]);
      }
      out[i][j] = acc;
    }
  }
  return out;
}

/// Probability that a uniform k x k matrix over GF(256) is invertible:
/// prod_{i=1..k} (1 - 256^-i).
inline double full_rank_probability(unsigned k) {
  double p = 1.0;
  for (unsigned i = 1; i <= k; ++i) {
    p *= 1.0 - std::pow(256.0, -static_cast<double>(i));
  }
  return p;
}

}  // namespace galois::oracle
