// SPDX-License-Identifier: Apache-2.0
//
// Arithmetic over GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x + 1
// (0x11B), plus the dense linear algebra the coder relies on.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace galois::gf256 {

using Element = std::uint8_t;

/// Reduction polynomial shared by every peer. Changing it breaks interop.
inline constexpr unsigned kPolynomial = 0x11B;
/// Primitive element used to build the log/antilog tables.
inline constexpr Element kGenerator = 0x03;

constexpr Element add(Element a, Element b) noexcept {
  return static_cast<Element>(a ^ b);
}

Element mul(Element a, Element b) noexcept;

/// Throws Error(kZeroInverse) for a == 0.
Element inv(Element a);

/// a / b; throws Error(kZeroInverse) for b == 0.
Element div(Element a, Element b);

/// Row of the product table: product_row(c)[x] == mul(c, x).
const Element* product_row(Element c) noexcept;

/// dst[i] ^= c * src[i]. Sizes must match.
void mul_add(std::span<Element> dst, std::span<const Element> src, Element c) noexcept;

/// row[i] = c * row[i].
void scale(std::span<Element> row, Element c) noexcept;

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Element> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  void swap_rows(std::size_t a, std::size_t b) noexcept;

  const std::vector<Element>& entries() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Row rank via Gaussian elimination.
std::size_t rank(Matrix m);

/// a * b; throws Error(kBadParameters) on a shape mismatch.
Matrix multiply(const Matrix& a, const Matrix& b);

/// x with a * x == rhs. a must be square; throws Error(kSingularMatrix) if
/// rank(a) < a.rows().
Matrix solve(const Matrix& a, const Matrix& rhs);

/// a^-1; throws Error(kSingularMatrix) if a is not invertible.
Matrix invert(const Matrix& a);

}  // namespace galois::gf256
