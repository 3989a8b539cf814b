// SPDX-License-Identifier: Apache-2.0
#include "galois/gf256.hpp"

#include <array>
#include <utility>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

#include "galois/common.hpp"

namespace galois::gf256 {
namespace {

struct Tables {
  std::array<Element, 256> log{};
  std::array<Element, 512> exp{};
  std::array<Element, 256> inverse{};
  std::array<Element, 256 * 256> product{};
};

// Carry-less multiply by the generator 0x03, i.e. x * (x + 1).
Element times_generator(Element x) noexcept {
  unsigned doubled = static_cast<unsigned>(x) << 1;
  if (doubled & 0x100U) {
    doubled ^= kPolynomial;
  }
  return static_cast<Element>(doubled ^ x);
}

Tables build_tables() {
  Tables t;
  Element x = 1;
  for (unsigned i = 0; i < 255; ++i) {
    t.exp[i] = x;
    t.log[x] = static_cast<Element>(i);
    x = times_generator(x);
  }
  // exp has period 255; the doubled table saves a modulo on lookup.
  for (unsigned i = 255; i < 512; ++i) {
    t.exp[i] = t.exp[i - 255];
  }
  for (unsigned a = 1; a < 256; ++a) {
    t.inverse[a] = t.exp[255 - t.log[a]];
    for (unsigned b = 1; b < 256; ++b) {
      t.product[a * 256 + b] = t.exp[t.log[a] + t.log[b]];
    }
  }
  return t;
}

const Tables& tables() {
  static const Tables t = build_tables();
  return t;
}

#if defined(__x86_64__)
// Split-nibble multiply: c * s = c * (s & 0x0f) ^ c * (s & 0xf0), each half a
// 16-entry shuffle lookup.
// Returns the count of leading bytes handled; the caller finishes the tail.
template <bool Accumulate>
__attribute__((target("avx2"))) std::size_t mul_avx2(Element* dst, const Element* src,
                                                     std::size_t n, const Element* row) {
  alignas(16) Element lo[16];
  alignas(16) Element hi[16];
  for (unsigned i = 0; i < 16; ++i) {
    lo[i] = row[i];
    hi[i] = row[i << 4];
  }
  const __m256i tlo = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(lo)));
  const __m256i thi = _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(hi)));
  const __m256i mask = _mm256_set1_epi8(0x0f);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i l = _mm256_shuffle_epi8(tlo, _mm256_and_si256(s, mask));
    const __m256i h = _mm256_shuffle_epi8(thi, _mm256_and_si256(_mm256_srli_epi64(s, 4), mask));
    __m256i d = _mm256_xor_si256(l, h);
    if constexpr (Accumulate) {
      d = _mm256_xor_si256(d, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i)));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), d);
  }
  return i;
}

bool has_avx2() noexcept {
  static const bool yes = __builtin_cpu_supports("avx2") != 0;
  return yes;
}
#endif

}  // namespace

Element mul(Element a, Element b) noexcept { return tables().product[a * 256U + b]; }

Element inv(Element a) {
  if (a == 0) {
    throw Error(ErrorCode::kZeroInverse, "inverse of zero in GF(2^8)");
  }
  return tables().inverse[a];
}

Element div(Element a, Element b) { return mul(a, inv(b)); }

const Element* product_row(Element c) noexcept { return tables().product.data() + c * 256U; }

void mul_add(std::span<Element> dst, std::span<const Element> src, Element c) noexcept {
  if (c == 0) {
    return;
  }
  const std::size_t n = dst.size();
  if (c == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      dst[i] ^= src[i];
    }
    return;
  }
  const Element* row = product_row(c);
  std::size_t i = 0;
#if defined(__x86_64__)
  if (has_avx2()) {
    i = mul_avx2<true>(dst.data(), src.data(), n, row);
  }
#endif
  for (; i < n; ++i) {
    dst[i] ^= row[src[i]];
  }
}

void scale(std::span<Element> row, Element c) noexcept {
  if (c == 1) {
    return;
  }
  const Element* table = product_row(c);
  std::size_t i = 0;
#if defined(__x86_64__)
  if (has_avx2()) {
    i = mul_avx2<false>(row.data(), row.data(), row.size(), table);
  }
#endif
  for (; i < row.size(); ++i) {
    row[i] = table[row[i]];
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kBadParameters, "matrix entries do not match shape");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) noexcept {
  if (a == b) {
    return;
  }
  auto ra = row(a);
  auto rb = row(b);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::swap(ra[c], rb[c]);
  }
}

std::size_t rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) {
      ++pivot;
    }
    if (pivot == m.rows()) {
      continue;
    }
    m.swap_rows(r, pivot);
    scale(m.row(r), inv(m(r, c)));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      mul_add(m.row(i), m.row(r), m(i, c));
    }
    ++r;
  }
  return r;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kBadParameters, "matrix product shape mismatch");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      mul_add(out.row(i), b.row(j), a(i, j));
    }
  }
  return out;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  const std::size_t n = a.rows();
  if (a.cols() != n || rhs.rows() != n) {
    throw Error(ErrorCode::kBadParameters, "solve needs a square system");
  }
  Matrix lhs = a;
  Matrix x = rhs;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && lhs(pivot, c) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      throw Error(ErrorCode::kSingularMatrix, "coefficient matrix is rank deficient");
    }
    lhs.swap_rows(c, pivot);
    x.swap_rows(c, pivot);
    const Element scale_by = inv(lhs(c, c));
    scale(lhs.row(c), scale_by);
    scale(x.row(c), scale_by);
    for (std::size_t i = 0; i < n; ++i) {
      const Element f = lhs(i, c);
      if (i == c || f == 0) {
        continue;
      }
      mul_add(lhs.row(i), lhs.row(c), f);
      mul_add(x.row(i), x.row(c), f);
    }
  }
  return x;
}

Matrix invert(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

}  // namespace galois::gf256
