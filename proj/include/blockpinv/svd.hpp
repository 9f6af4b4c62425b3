#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "blockpinv/matrix.hpp"

namespace blockpinv {

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

}  // namespace detail

inline constexpr double machine_epsilon = std::numeric_limits<double>::epsilon();

/// Thin SVD M = U·diag(sigma)·V*, singular values in non-increasing order.
struct Svd {
  ComplexMatrix u;             // rows(M) × k
  std::vector<double> sigma;   // k = min(rows, cols)
  ComplexMatrix v;             // cols(M) × k
};

inline Svd svd(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(detail::to_eigen(m),
                                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("svd: decomposition of " + shape_of(m) + " failed");
  }
  const auto& sv = solver.singularValues();
  std::vector<double> sigma(sv.data(), sv.data() + sv.size());
  return Svd{detail::from_eigen(solver.matrixU()), std::move(sigma),
             detail::from_eigen(solver.matrixV())};
}

inline std::vector<double> singular_values(const ComplexMatrix& m) { return svd(m).sigma; }

inline double spectral_norm(const ComplexMatrix& m) { return singular_values(m).front(); }

// Relative threshold max(rows, cols)·ε·σ_max. `reference_scale` replaces σ_max
// when the matrix is derived from some larger quantity whose magnitude sets
// the roundoff level.
inline double default_rank_tol(std::size_t rows, std::size_t cols, double reference_scale) {
  return static_cast<double>(std::max(rows, cols)) * machine_epsilon * reference_scale;
}

inline double default_rank_tol(const ComplexMatrix& m) {
  return default_rank_tol(m.rows(), m.cols(), spectral_norm(m));
}

inline std::size_t rank_from_sigma(const std::vector<double>& sigma, double tol) {
  return static_cast<std::size_t>(
      std::ranges::count_if(sigma, [tol](double x) { return x > tol; }));
}

/// Number of singular values strictly greater than `tol`.
inline std::size_t rank(const ComplexMatrix& m, std::optional<double> tol = std::nullopt) {
  const auto sigma = singular_values(m);
  const double cut = tol.value_or(default_rank_tol(m.rows(), m.cols(), sigma.front()));
  if (cut < 0.0) throw std::invalid_argument("rank: tolerance must be nonnegative");
  return rank_from_sigma(sigma, cut);
}

/// σ_max / σ_min over singular values above `tol`; 1 for a numerically zero matrix.
inline double condition_of_nonzero_part(const std::vector<double>& sigma, double tol) {
  double smallest = 0.0;
  for (double x : sigma)
    if (x > tol) smallest = x;
  return smallest > 0.0 ? sigma.front() / smallest : 1.0;
}

/// Moore–Penrose inverse through the SVD, truncating singular values ≤ rank_tol.
/// This is the full-matrix reference route; nothing in the block pipeline
/// feeds into it.
inline ComplexMatrix svd_pinv(const ComplexMatrix& m, std::optional<double> rank_tol = std::nullopt) {
  const Svd d = svd(m);
  const double tol = rank_tol.value_or(default_rank_tol(m.rows(), m.cols(), d.sigma.front()));
  if (tol < 0.0) throw std::invalid_argument("svd_pinv: rank tolerance must be nonnegative");
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t k = 0; k < d.sigma.size(); ++k) {
    if (!(d.sigma[k] > tol)) continue;
    const double inv = 1.0 / d.sigma[k];
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const Complex vik = d.v(i, k) * inv;
      for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vik * std::conj(d.u(j, k));
    }
  }
  return out;
}

/// Orthonormal columns spanning nul(M) (singular values ≤ tol count as zero).
/// A trivial null space comes back as a single zero column.
inline ComplexMatrix null_space(const ComplexMatrix& m, std::optional<double> tol = std::nullopt) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> solver(detail::to_eigen(m), Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("null_space: decomposition of " + shape_of(m) + " failed");
  }
  const auto& sv = solver.singularValues();
  const double cut = tol.value_or(default_rank_tol(m.rows(), m.cols(), sv(0)));
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  const Eigen::Index n = static_cast<Eigen::Index>(m.cols());
  if (r == n) return ComplexMatrix::zeros(m.cols(), 1);
  return detail::from_eigen(solver.matrixV().rightCols(n - r));
}

inline double hermitian_deviation(const ComplexMatrix& m) {
  if (!m.is_square()) throw dimension_error("hermitian_deviation: " + shape_of(m) + " not square");
  return distance(m, conj_transpose(m));
}

/// Eigenvalues of the Hermitian part (M + M*)/2 in ascending order.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw dimension_error("hermitian_eigenvalues: " + shape_of(m) + " not square");
  const Eigen::MatrixXcd e = detail::to_eigen(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (e + e.adjoint()),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw convergence_error("hermitian_eigenvalues: eigen-decomposition failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline constexpr double hermitian_tol = 1e-12;
inline constexpr double nonneg_tol = 1e-10;

// Hermitian within 1e-12·‖M‖_F and min eigenvalue ≥ −1e-10·‖M‖_F.
inline bool is_hermitian_nonneg(const ComplexMatrix& m) {
  if (!m.is_square()) return false;
  const double scale = frobenius_norm(m);
  if (hermitian_deviation(m) > hermitian_tol * scale) return false;
  return hermitian_eigenvalues(m).front() >= -nonneg_tol * scale;
}

}  // namespace blockpinv
