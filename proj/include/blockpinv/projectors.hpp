#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "blockpinv/gen_inverse.hpp"
#include "blockpinv/matrix.hpp"
#include "blockpinv/svd.hpp"

namespace blockpinv {

inline constexpr double projector_tol = 1e-9;

// Principal angle (radians) under which two subspaces count as nearly aligned.
inline constexpr double min_principal_angle = 1e-6;

/// Optional sink for non-fatal numerical warnings.
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// A subspace of C^N given as the column space of a generator matrix. The
/// columns need not be independent; a zero column denotes {0}.
struct SubspaceBasis {
  ComplexMatrix generators;

  std::size_t ambient_dim() const noexcept { return generators.rows(); }
  std::size_t dim() const { return rank(generators); }
};

// ‖P² − P‖_F ≤ tol·max(1, ‖P‖_F²)
inline bool is_idempotent(const ComplexMatrix& p, double tol = projector_tol) {
  if (!p.is_square()) return false;
  const double n = frobenius_norm(p);
  return distance(p * p, p) <= tol * std::max(1.0, n * n);
}

inline bool is_orthogonal_projector(const ComplexMatrix& p, double tol = projector_tol) {
  return is_idempotent(p, tol) &&
         hermitian_deviation(p) <= tol * std::max(1.0, frobenius_norm(p));
}

/// Orthogonal projector onto ran(generators), via G·G†.
inline ComplexMatrix orthogonal_projector(const SubspaceBasis& u) {
  return u.generators * svd_pinv(u.generators);
}

/// M·X = P_ran(M) for X ∈ M{1,3}.
inline ComplexMatrix projector_from_13(const ComplexMatrix& m, const ComplexMatrix& x,
                                       double tol = membership_tol) {
  detail::require_member(m, x, {1, 3}, tol, "projector_from_13: X");
  return m * x;
}

/// X·M = P_ran(M*) for X ∈ M{1,4}.
inline ComplexMatrix projector_from_14(const ComplexMatrix& m, const ComplexMatrix& x,
                                       double tol = membership_tol) {
  detail::require_member(m, x, {1, 4}, tol, "projector_from_14: X");
  return x * m;
}

/// I − P, the projector onto the orthogonal complement of ran(P).
inline ComplexMatrix complement(const ComplexMatrix& p, double tol = projector_tol) {
  if (!p.is_square()) throw dimension_error("complement: " + shape_of(p) + " not square");
  if (!is_orthogonal_projector(p, tol)) {
    throw precondition_error("complement: argument is not a Hermitian idempotent");
  }
  return ComplexMatrix::identity(p.rows()) - p;
}

namespace detail {

inline void require_complementary(const ComplexMatrix& u, const ComplexMatrix& v, const char* who) {
  if (u.rows() != v.rows()) {
    throw dimension_error(std::string(who) + ": ambient dimensions differ (" +
                          std::to_string(u.rows()) + " vs " + std::to_string(v.rows()) + ")");
  }
  const std::size_t n = u.rows();
  const std::size_t ru = rank(u), rv = rank(v);
  if (ru + rv != n || rank(hstack(u, v)) != n) {
    throw precondition_error(std::string(who) + ": subspaces of dimension " + std::to_string(ru) +
                             " and " + std::to_string(rv) + " are not complementary in C^" +
                             std::to_string(n));
  }
}

inline void check_alignment(const ComplexMatrix& pu, const ComplexMatrix& pv, const char* who,
                            Diagnostics* diag) {
  if (diag == nullptr) return;
  // Largest singular value of P_U P_V is the cosine of the smallest principal angle.
  const double cosine = std::min(1.0, spectral_norm(pu * pv));
  const double angle = std::acos(cosine);
  if (cosine > 0.0 && angle < min_principal_angle) {
    diag->warnings.push_back(std::string(who) + ": nearly aligned subspaces (principal angle " +
                             std::to_string(angle) + ")");
  }
}

}  // namespace detail

/// Oblique projector onto ran(U) along ran(V): [(I − P_V)·P_U]†.
inline ComplexMatrix oblique_projector(const SubspaceBasis& u, const SubspaceBasis& v,
                                       Diagnostics* diag = nullptr) {
  detail::require_complementary(u.generators, v.generators, "oblique_projector");
  const ComplexMatrix pu = orthogonal_projector(u);
  const ComplexMatrix pv = orthogonal_projector(v);
  detail::check_alignment(pu, pv, "oblique_projector", diag);
  return svd_pinv((ComplexMatrix::identity(u.ambient_dim()) - pv) * pu);
}

/// The {1,2}-inverse of M with range ran(V) and null space ran(U):
///   P_{V, nul M} · M1 · P_{ran M, U}
/// for any M1 ∈ M{1}; defaults to one_inverse(M).
inline ComplexMatrix constrained_inverse(const ComplexMatrix& m, const SubspaceBasis& v,
                                         const SubspaceBasis& u,
                                         const std::optional<ComplexMatrix>& m_one = std::nullopt,
                                         Diagnostics* diag = nullptr,
                                         double tol = membership_tol) {
  if (v.ambient_dim() != m.cols() || u.ambient_dim() != m.rows()) {
    throw dimension_error("constrained_inverse: V must live in C^" + std::to_string(m.cols()) +
                          " and U in C^" + std::to_string(m.rows()));
  }
  const SubspaceBasis kernel{null_space(m)};
  const SubspaceBasis image{m};
  detail::require_complementary(v.generators, kernel.generators, "constrained_inverse (V, nul M)");
  detail::require_complementary(image.generators, u.generators, "constrained_inverse (ran M, U)");

  ComplexMatrix x1 = m_one ? *m_one : one_inverse(m);
  if (m_one) detail::require_member(m, x1, {1}, tol, "constrained_inverse: m_one");
  return oblique_projector(v, kernel, diag) * x1 * oblique_projector(image, u, diag);
}

}  // namespace blockpinv
