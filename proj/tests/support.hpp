#pragma once

// Random matrix generators and comparison helpers shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blockpinv/blockpinv.hpp"

namespace blockpinv::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Entries with real and imaginary parts uniform in [-1, 1].
inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries()) z = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return m;
}

// rows×cols of rank `r` (generically), rescaled so max(|re|, |im|) = 1.
inline ComplexMatrix random_rank(std::size_t rows, std::size_t cols, std::size_t r,
                                 std::mt19937_64& rng) {
  ComplexMatrix m = random_matrix(rows, r, rng) * random_matrix(r, cols, rng);
  double peak = 0.0;
  for (const auto& z : m.entries()) peak = std::max({peak, std::abs(z.real()), std::abs(z.imag())});
  return Complex(1.0 / peak) * m;
}

inline ComplexMatrix random_hermitian_nonneg(std::size_t n, std::size_t r, std::mt19937_64& rng) {
  const ComplexMatrix f = random_matrix(n, r, rng);
  return f * conj_transpose(f);
}

inline double rel_gap(const ComplexMatrix& actual, const ComplexMatrix& expected) {
  return distance(actual, expected) / std::max(1.0, frobenius_norm(expected));
}

inline bool all_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return distance(a, b) <= tol;
}

inline std::string dump(const ComplexMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

/// One member of the seeded block corpus.
struct CorpusCase {
  std::size_t index;
  BlockPartition partition;
  std::size_t rank;
  ComplexMatrix e;
};

/// Deterministic corpus: block sizes uniform in {1..4}, ranks cycling from
/// full down to 1, complex entries bounded by 1 in real and imaginary part.
inline std::vector<CorpusCase> block_corpus(std::size_t count, std::uint64_t seed = 20240601) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusCase> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const BlockPartition part(uniform_int(rng, 1, 4), uniform_int(rng, 1, 4),
                              uniform_int(rng, 1, 4), uniform_int(rng, 1, 4));
    const std::size_t full = std::min(part.rows(), part.cols());
    const std::size_t r = full - (k % full);
    out.push_back(CorpusCase{k, part, r, random_rank(part.rows(), part.cols(), r, rng)});
  }
  return out;
}

/// σ_max / σ_r over singular values above the default rank threshold.
inline double effective_condition(const ComplexMatrix& m) {
  const auto sigma = singular_values(m);
  return condition_of_nonzero_part(sigma, default_rank_tol(m.rows(), m.cols(), sigma.front()));
}

// Projector onto ran(U) along ran(V) by solving [U V]·c = x for every unit
// vector x: P = [U 0]·[U V]^{-1}. U and V must be bases of complementary
// subspaces.
inline ComplexMatrix oblique_by_linear_solve(const ComplexMatrix& u, const ComplexMatrix& v) {
  const ComplexMatrix basis = hstack(u, v);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.rows());
  Eigen::MatrixXcd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = basis(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  const Eigen::MatrixXcd coeffs = b.fullPivLu().solve(Eigen::MatrixXcd::Identity(n, n));
  ComplexMatrix out(basis.rows(), basis.rows());
  const std::size_t k = u.cols();
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j)
      for (std::size_t l = 0; l < k; ++l)
        out(i, j) += u(i, l) * coeffs(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
  return out;
}

}  // namespace blockpinv::testing
