#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace blockpinv;
using namespace blockpinv::testing;

namespace {

const Complex I{0.0, 1.0};

TEST(ComplexMatrix, RejectsEmptyAndRaggedAndNonFinite) {
  EXPECT_THROW(ComplexMatrix(0, 3), dimension_error);
  EXPECT_THROW(ComplexMatrix(2, 0), dimension_error);
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<Complex>(3)), dimension_error);
  EXPECT_THROW((ComplexMatrix{{1, 2}, {3}}), dimension_error);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), std::invalid_argument);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0.0, INFINITY)}), std::invalid_argument);
}

TEST(BlockPartition, RequiresPositiveDims) {
  EXPECT_THROW(BlockPartition(0, 1, 1, 1), dimension_error);
  EXPECT_THROW(BlockPartition(1, 1, 1, 0), dimension_error);
  const BlockPartition part(2, 3, 4, 1);
  EXPECT_EQ(part.rows(), 5u);
  EXPECT_EQ(part.cols(), 5u);
  EXPECT_EQ(part.str(), "2,3,4,1");
}

TEST(Split, ScalarBlocks) {
  const ComplexMatrix e{{1, 2}, {3, 4}};
  const Block2x2 b = split(e, BlockPartition(1, 1, 1, 1));
  EXPECT_EQ(b.a, (ComplexMatrix{{1}}));
  EXPECT_EQ(b.b, (ComplexMatrix{{2}}));
  EXPECT_EQ(b.c, (ComplexMatrix{{3}}));
  EXPECT_EQ(b.d, (ComplexMatrix{{4}}));
  EXPECT_EQ(compose(b), e);
}

TEST(Split, IdentityBlocks) {
  const Block2x2 b = split(ComplexMatrix::identity(4), BlockPartition(2, 2, 2, 2));
  EXPECT_EQ(b.a, ComplexMatrix::identity(2));
  EXPECT_EQ(b.b, ComplexMatrix::zeros(2, 2));
  EXPECT_EQ(b.c, ComplexMatrix::zeros(2, 2));
  EXPECT_EQ(b.d, ComplexMatrix::identity(2));
  EXPECT_EQ(compose(b), ComplexMatrix::identity(4));
}

TEST(Split, DimensionMismatch) {
  EXPECT_THROW(split(ComplexMatrix::zeros(4, 4), BlockPartition(2, 2, 2, 1)), dimension_error);
  EXPECT_THROW(split(ComplexMatrix::zeros(3, 4), BlockPartition(2, 2, 2, 2)), dimension_error);
}

TEST(Compose, InconsistentBlocks) {
  Block2x2 b{ComplexMatrix::zeros(1, 1), ComplexMatrix::zeros(2, 1), ComplexMatrix::zeros(1, 1),
             ComplexMatrix::zeros(1, 1)};
  EXPECT_THROW(compose(b), dimension_error);
}

TEST(Split, RoundTripIsBitExact) {
  std::mt19937_64 rng(7);
  const ComplexMatrix e = random_matrix(5, 7, rng);
  EXPECT_EQ(compose(split(e, BlockPartition(2, 3, 4, 3))), e);
  for (int trial = 0; trial < 50; ++trial) {
    const BlockPartition part(uniform_int(rng, 1, 5), uniform_int(rng, 1, 5), uniform_int(rng, 1, 5),
                              uniform_int(rng, 1, 5));
    const ComplexMatrix m = random_matrix(part.rows(), part.cols(), rng);
    ASSERT_EQ(compose(split(m, part)), m) << "partition " << part.str();
  }
}

TEST(ConjTranspose, Basics) {
  EXPECT_EQ(conj_transpose(ComplexMatrix{{I}}), ComplexMatrix{{-I}});
  const ComplexMatrix sym{{1, 2, 3}, {2, 5, 6}, {3, 6, 9}};
  EXPECT_EQ(conj_transpose(sym), sym);
  std::mt19937_64 rng(3);
  const ComplexMatrix m = random_matrix(3, 5, rng);
  EXPECT_EQ(conj_transpose(conj_transpose(m)), m);
  EXPECT_EQ(conj_transpose(m).rows(), 5u);
}

TEST(Arithmetic, RingIdentities) {
  std::mt19937_64 rng(11);
  const ComplexMatrix m = random_matrix(3, 4, rng);
  EXPECT_EQ(ComplexMatrix::identity(3) * m, m);
  EXPECT_EQ(m + Complex(-1.0) * m, ComplexMatrix::zeros(3, 4));
  EXPECT_EQ(sub(m, m), ComplexMatrix::zeros(3, 4));
  EXPECT_EQ(add(m, ComplexMatrix::zeros(3, 4)), m);
  EXPECT_EQ(scale(2.0, m), m + m);
  EXPECT_THROW(m * m, dimension_error);
  EXPECT_THROW(m + ComplexMatrix::zeros(4, 3), dimension_error);
  EXPECT_THROW(hstack(m, ComplexMatrix::zeros(2, 1)), dimension_error);
  EXPECT_THROW(vstack(m, ComplexMatrix::zeros(1, 3)), dimension_error);
}

TEST(Arithmetic, AdjointReversesProducts) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = uniform_int(rng, 1, 6), k = uniform_int(rng, 1, 6), n = uniform_int(rng, 1, 6);
    const ComplexMatrix a = random_matrix(m, k, rng), b = random_matrix(k, n, rng);
    const double bound = 1e-13 * frobenius_norm(a) * frobenius_norm(b);
    ASSERT_LE(distance(conj_transpose(a * b), conj_transpose(b) * conj_transpose(a)), bound);
  }
}

TEST(Norms, FrobeniusAndRank) {
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix::identity(2)), std::sqrt(2.0));
  EXPECT_EQ(frobenius_norm(ComplexMatrix::zeros(2, 3)), 0.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(ComplexMatrix{{3.0 + 4.0 * I}}), 5.0);
  EXPECT_EQ(rank(ComplexMatrix::zeros(3, 3)), 0u);
  EXPECT_EQ(rank(ComplexMatrix::identity(4)), 4u);
  const ComplexMatrix u{{1.0}, {2.0 * I}, {-1.0}};
  const ComplexMatrix v{{0.5, 1.0 - I, 3.0, I}};
  EXPECT_EQ(rank(u * v), 1u);
  EXPECT_EQ(rank(ComplexMatrix::diagonal({1.0, 1e-3}), 1e-2), 1u);
  EXPECT_THROW(rank(u, -1.0), std::invalid_argument);
}

TEST(SvdPinv, ClosedFormCases) {
  EXPECT_LE(distance(svd_pinv(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-15);
  EXPECT_LE(distance(svd_pinv(ComplexMatrix::diagonal({2.0, 0.0})), ComplexMatrix::diagonal({0.5, 0.0})),
            1e-15);
  EXPECT_EQ(svd_pinv(ComplexMatrix::zeros(2, 3)), ComplexMatrix::zeros(3, 2));
  // Explicit threshold drops the small singular value.
  EXPECT_LE(distance(svd_pinv(ComplexMatrix::diagonal({2.0, 1e-6}), 1e-3),
                     ComplexMatrix::diagonal({0.5, 0.0})),
            1e-15);
  EXPECT_THROW(svd_pinv(ComplexMatrix::identity(2), -1.0), std::invalid_argument);
}

TEST(SvdPinv, RankDeficientPenroseResiduals) {
  std::mt19937_64 rng(5);
  const ComplexMatrix m = random_rank(6, 4, 2, rng);
  const ComplexMatrix x = svd_pinv(m);
  ASSERT_EQ(x.rows(), 4u);
  ASSERT_EQ(x.cols(), 6u);
  const double scale = frobenius_norm(m);
  const ComplexMatrix mx = m * x, xm = x * m;
  EXPECT_LE(distance(mx * m, m), 1e-10 * scale);
  EXPECT_LE(distance(xm * x, x), 1e-10 * scale);
  EXPECT_LE(distance(mx, conj_transpose(mx)), 1e-10 * scale);
  EXPECT_LE(distance(xm, conj_transpose(xm)), 1e-10 * scale);
}

TEST(SvdPinv, InvolutionAndAdjointCommute) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = uniform_int(rng, 1, 6), cols = uniform_int(rng, 1, 6);
    const std::size_t r = uniform_int(rng, 1, std::min(rows, cols));
    const ComplexMatrix m = random_rank(rows, cols, r, rng);
    const ComplexMatrix x = svd_pinv(m);
    ASSERT_LE(distance(svd_pinv(x), m), 1e-9 * frobenius_norm(m));
    ASSERT_LE(distance(svd_pinv(conj_transpose(m)), conj_transpose(x)), 1e-10 * frobenius_norm(x));
  }
}

TEST(NullSpace, OrthonormalAndAnnihilated) {
  std::mt19937_64 rng(23);
  const ComplexMatrix m = random_rank(3, 5, 2, rng);
  const ComplexMatrix n = null_space(m);
  ASSERT_EQ(n.rows(), 5u);
  ASSERT_EQ(n.cols(), 3u);
  EXPECT_LE(frobenius_norm(m * n), 1e-13);
  EXPECT_LE(distance(conj_transpose(n) * n, ComplexMatrix::identity(3)), 1e-13);
  EXPECT_EQ(null_space(ComplexMatrix::identity(3)), ComplexMatrix::zeros(3, 1));
}

TEST(Hermitian, NonnegCheck) {
  std::mt19937_64 rng(29);
  EXPECT_TRUE(is_hermitian_nonneg(random_hermitian_nonneg(4, 2, rng)));
  EXPECT_FALSE(is_hermitian_nonneg(ComplexMatrix::diagonal({1.0, -1.0})));
  EXPECT_FALSE(is_hermitian_nonneg(ComplexMatrix{{1, I}, {I, 1}}));
  EXPECT_FALSE(is_hermitian_nonneg(ComplexMatrix::zeros(2, 3)));
  const auto ev = hermitian_eigenvalues(ComplexMatrix{{2, 1}, {1, 2}});
  EXPECT_NEAR(ev[0], 1.0, 1e-14);
  EXPECT_NEAR(ev[1], 3.0, 1e-14);
}

}  // namespace
