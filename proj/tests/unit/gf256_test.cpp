// SPDX-License-Identifier: Apache-2.0
#include "galois/gf256.hpp"

#include <gtest/gtest.h>

#include "galois/common.hpp"
#include "galois/random.hpp"
#include "oracles.hpp"

namespace galois::gf256 {
namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = uniform_byte(rng);
    }
  }
  return m;
}

oracle::Rows to_rows(const Matrix& m) {
  oracle::Rows out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out[r].assign(m.row(r).begin(), m.row(r).end());
  }
  return out;
}

TEST(Add, Examples) {
  EXPECT_EQ(add(0x57, 0x57), 0x00);
  for (unsigned a = 0; a < 256; ++a) {
    EXPECT_EQ(add(static_cast<Element>(a), 0x00), a);
  }
  EXPECT_EQ(add(0x57, 0x83), 0x57 ^ 0x83);
  EXPECT_EQ(add(0x57, 0x83), 0xD4);
}

TEST(Mul, MatchesShiftAndAddOracleExhaustively) {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      ASSERT_EQ(mul(static_cast<Element>(a), static_cast<Element>(b)),
                oracle::mul(static_cast<Element>(a), static_cast<Element>(b)))
          << a << " * " << b;
    }
  }
}

TEST(Mul, Examples) {
  for (unsigned a = 0; a < 256; ++a) {
    EXPECT_EQ(mul(static_cast<Element>(a), 0x01), a);
    EXPECT_EQ(mul(static_cast<Element>(a), 0x00), 0);
  }
  EXPECT_EQ(mul(0x53, 0xCA), 0x01);
}

TEST(Inv, MatchesExhaustiveSearch) {
  for (unsigned a = 1; a < 256; ++a) {
    ASSERT_EQ(inv(static_cast<Element>(a)), oracle::inv(static_cast<Element>(a))) << a;
  }
  EXPECT_EQ(inv(0x01), 0x01);
  EXPECT_EQ(inv(0x53), 0xCA);
}

TEST(Inv, ZeroThrows) {
  try {
    inv(0);
    FAIL() << "expected ZeroInverse";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroInverse);
  }
  EXPECT_THROW(div(1, 0), Error);
}

TEST(FieldAxioms, HoldExhaustively) {
  for (unsigned a = 0; a < 256; ++a) {
    const auto x = static_cast<Element>(a);
    if (x != 0) {
      ASSERT_EQ(mul(x, inv(x)), 1);
      ASSERT_EQ(div(x, x), 1);
    }
    for (unsigned b = 0; b < 256; ++b) {
      const auto y = static_cast<Element>(b);
      ASSERT_EQ(mul(x, y), mul(y, x));
      ASSERT_EQ(add(x, y), add(y, x));
    }
  }
  // Associativity and distributivity over a seeded sample of triples.
  Rng rng(42);
  for (int i = 0; i < 200000; ++i) {
    const Element a = uniform_byte(rng);
    const Element b = uniform_byte(rng);
    const Element c = uniform_byte(rng);
    ASSERT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
    ASSERT_EQ(mul(a, add(b, c)), add(mul(a, b), mul(a, c)));
  }
}

TEST(RowKernels, MulAddAndScaleMatchOracle) {
  Rng rng(7);
  // Lengths straddle the 32-byte vector width.
  for (const std::size_t n : {0u, 1u, 31u, 32u, 33u, 64u, 100u, 1027u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Element> src(n);
      std::vector<Element> dst(n);
      for (auto& x : src) x = uniform_byte(rng);
      for (auto& x : dst) x = uniform_byte(rng);
      const Element c = uniform_byte(rng);
      std::vector<Element> want = dst;
      for (std::size_t i = 0; i < n; ++i) want[i] ^= oracle::mul(c, src[i]);
      mul_add(dst, src, c);
      ASSERT_EQ(dst, want);

      std::vector<Element> scaled = src;
      scale(scaled, c);
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_EQ(scaled[i], oracle::mul(c, src[i]));
      }
    }
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::identity(8)), 8u);
  Matrix twin(2, 2, {0x12, 0x34, 0x12, 0x34});
  EXPECT_EQ(rank(twin), 1u);
  EXPECT_EQ(rank(Matrix(3, 3)), 0u);
}

TEST(Rank, MatchesOracleOnRandomAndDegenerateMatrices) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + uniform_below(rng, 10);
    const std::size_t cols = 1 + uniform_below(rng, 10);
    Matrix m = random_matrix(rows, cols, rng);
    // Force dependencies in a third of the cases.
    if (trial % 3 == 0 && rows >= 3) {
      const Element f = uniform_byte(rng);
      for (std::size_t c = 0; c < cols; ++c) {
        m(2, c) = add(m(0, c), mul(f, m(1, c)));
      }
    }
    ASSERT_EQ(rank(m), oracle::rank(to_rows(m)));
  }
}

TEST(Rank, RandomEightByEightIsFullRankAtTheExpectedRate) {
  Rng rng(2024);
  constexpr int kSamples = 10000;
  int full = 0;
  for (int i = 0; i < kSamples; ++i) {
    full += rank(random_matrix(8, 8, rng)) == 8 ? 1 : 0;
  }
  const double expected = oracle::full_rank_probability(8);
  EXPECT_NEAR(expected, 0.9961, 5e-5);
  EXPECT_NEAR(static_cast<double>(full) / kSamples, expected, 0.005);
}

TEST(Multiply, MatchesOracle) {
  Rng rng(5);
  const Matrix a = random_matrix(4, 6, rng);
  const Matrix b = random_matrix(6, 3, rng);
  const Matrix c = multiply(a, b);
  EXPECT_EQ(to_rows(c), oracle::multiply(to_rows(a), to_rows(b)));
  EXPECT_THROW(multiply(a, a), Error);
}

TEST(Solve, IdentityReturnsRhs) {
  Rng rng(1);
  const Matrix rhs = random_matrix(5, 17, rng);
  EXPECT_EQ(solve(Matrix::identity(5), rhs), rhs);
}

TEST(Solve, RoundTripsForwardProducts) {
  Rng rng(11);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 16);
    const Matrix a = random_matrix(n, n, rng);
    if (oracle::rank(to_rows(a)) != n) {
      continue;
    }
    const Matrix x = random_matrix(n, 1 + uniform_below(rng, 64), rng);
    const Matrix rhs(n, x.cols(), [&] {
      const auto prod = oracle::multiply(to_rows(a), to_rows(x));
      std::vector<Element> flat;
      for (const auto& r : prod) flat.insert(flat.end(), r.begin(), r.end());
      return flat;
    }());
    ASSERT_EQ(solve(a, rhs), x);
    ++solved;
  }
  EXPECT_GT(solved, 190);
}

TEST(Solve, RankDeficientThrows) {
  Matrix a(3, 3, {1, 2, 3, 0, 0, 0, 0, 0, 1});
  for (std::size_t c = 0; c < 3; ++c) a(1, c) = mul(0x02, a(0, c));
  try {
    solve(a, Matrix(3, 1));
    FAIL() << "expected SingularMatrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularMatrix);
  }
  EXPECT_THROW(solve(Matrix(2, 3), Matrix(2, 1)), Error);
}

TEST(Invert, ProductWithInverseIsIdentity) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 12);
    const Matrix a = random_matrix(n, n, rng);
    if (oracle::rank(to_rows(a)) != n) {
      continue;
    }
    EXPECT_EQ(multiply(a, invert(a)), Matrix::identity(n));
  }
}

}  // namespace
}  // namespace galois::gf256
