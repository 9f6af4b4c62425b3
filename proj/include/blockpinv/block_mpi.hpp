#pragma once

// Moore–Penrose inverse of a 2×2 block matrix E = [a b; c d] built from
// {1}-inverses of four Hermitian nonnegative matrices of block size only.
//
// Notation (all derived from the blocks):
//   Y = [a, b]      Z = [c, d]      S = [a; c]      T = [b; d]
//   mu = YY*        sigma = S*S     zeta = ZZ*      tau = T*T
//   rho = ZY*       lambda = S*T
//   phi = c - rho mu1 a     psi = d - rho mu1 b          V = [phi, psi] = Z P_nul(Y)
//   eta = b - a sigma1 lambda   theta = d - c sigma1 lambda   W = [eta; theta] = P_ran(S)^perp T
//   nu = VV*        omega = W*W
// where mu1, sigma1, nu1, omega1 are arbitrary {1}-inverses.
//
// Then R = [sigma1 (S* - lambda omega1 W*); omega1 W*] satisfies E R = P_ran(E),
// L = [(Y* - V* nu1 rho) mu1, V* nu1] satisfies L E = P_ran(E*), and E† = L E R.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockpinv/gen_inverse.hpp"
#include "blockpinv/matrix.hpp"
#include "blockpinv/svd.hpp"

namespace blockpinv {

/// Produces a {1}-inverse of a Hermitian nonnegative target. `rank_tol` is
/// the pipeline's absolute threshold below which eigenvalues count as zero.
using OneInverseSupplier = std::function<ComplexMatrix(const ComplexMatrix& target, double rank_tol)>;

/// Suppliers for mu1, sigma1, nu1, omega1. An empty supplier means
/// svd_pinv at the pipeline tolerance.
struct InverseChoices {
  OneInverseSupplier mu;
  OneInverseSupplier sigma;
  OneInverseSupplier nu;
  OneInverseSupplier omega;

  /// Every target gets an independent one_inverse_sample stream derived from `seed`.
  static InverseChoices sampled(std::uint64_t seed) {
    auto make = [seed](std::uint64_t slot) {
      return [sub = seed * 4 + slot](const ComplexMatrix& target, double tol) {
        return one_inverse_sample(target, sub, tol);
      };
    };
    return InverseChoices{make(0), make(1), make(2), make(3)};
  }
};

struct BlockOptions {
  // Absolute eigenvalue threshold for the four {1}-inverse targets. Defaults
  // to max(p+q, s+t)·ε·‖E‖_F², since every target is a Gram-type product of
  // pieces of E.
  std::optional<double> rank_tol;
  double membership_tol = blockpinv::membership_tol;
  // Form nu, omega as zeta - rho mu1 rho*, tau - lambda* sigma1 lambda
  // instead of VV*, W*W. The subtraction leaves first-order roundoff in the
  // null directions, so this is off by default.
  bool schur_shortcut = false;
  // Condition number (of the nonzero part) above which a target is flagged.
  double warn_condition = 1e8;
};

/// Every intermediate quantity of the block construction.
struct BlockAux {
  BlockPartition partition;
  Block2x2 blocks;
  ComplexMatrix Y, Z, S, T;
  ComplexMatrix mu, sigma, zeta, tau, rho, lambda;
  ComplexMatrix mu1, sigma1;
  ComplexMatrix phi, psi, eta, theta;
  ComplexMatrix V, W;
  ComplexMatrix nu, omega;
  ComplexMatrix nu1, omega1;
  double rank_tol;
  std::vector<std::string> warnings;

  ComplexMatrix E() const { return compose(blocks); }
};

struct LRFactors {
  ComplexMatrix L;  // (s+t)×(p+q), L ∈ E{1,2,4}
  ComplexMatrix R;  // (s+t)×(p+q), R ∈ E{1,2,3}
};

struct BlockPinvResult {
  ComplexMatrix pinv;  // L·E·R
  Block2x2 blocks;     // alpha, beta, gamma, delta from the sixteen-term expansion
  LRFactors factors;
  std::vector<std::string> warnings;
};

namespace detail {

inline ComplexMatrix supply(const OneInverseSupplier& supplier, const ComplexMatrix& target,
                            double tol, double check_tol, const char* name) {
  ComplexMatrix x = supplier ? supplier(target, tol) : one_inverse(target, tol);
  if (x.rows() != target.cols() || x.cols() != target.rows()) {
    throw dimension_error(std::string("build_aux: supplied ") + name + " has shape " +
                          shape_of(x) + ", expected " + shape_of(conj_transpose(target)));
  }
  require_member(target, x, {1}, check_tol, std::string("build_aux: supplied ") + name);
  return x;
}

inline void flag_conditioning(const ComplexMatrix& target, double tol, double limit,
                              const char* name, std::vector<std::string>& warnings) {
  const double cond = condition_of_nonzero_part(singular_values(target), tol);
  if (cond > limit) {
    warnings.push_back(std::string("ill-conditioned ") + name + ": nonzero-part condition " +
                       std::to_string(cond));
  }
}

}  // namespace detail

inline ComplexMatrix schur_nu(const ComplexMatrix& zeta, const ComplexMatrix& rho,
                              const ComplexMatrix& mu1) {
  return zeta - rho * mu1 * conj_transpose(rho);
}

inline ComplexMatrix schur_omega(const ComplexMatrix& tau, const ComplexMatrix& lambda,
                                 const ComplexMatrix& sigma1) {
  return tau - conj_transpose(lambda) * sigma1 * lambda;
}

inline BlockAux build_aux(const Block2x2& blocks, const InverseChoices& choices = {},
                          const BlockOptions& options = {}) {
  if (!blocks.consistent()) throw dimension_error("build_aux: inconsistent block dimensions");
  const auto& [a, b, c, d] = blocks;
  const BlockPartition part(a.rows(), c.rows(), a.cols(), b.cols());

  const double e_norm = frobenius_norm(compose(blocks));
  const double tol =
      options.rank_tol.value_or(default_rank_tol(part.rows(), part.cols(), e_norm * e_norm));
  if (tol < 0.0) throw std::invalid_argument("build_aux: rank tolerance must be nonnegative");

  const ComplexMatrix ah = conj_transpose(a), bh = conj_transpose(b);
  const ComplexMatrix ch = conj_transpose(c), dh = conj_transpose(d);

  ComplexMatrix mu = a * ah + b * bh;
  ComplexMatrix sigma = ah * a + ch * c;
  ComplexMatrix zeta = c * ch + d * dh;
  ComplexMatrix tau = bh * b + dh * d;
  ComplexMatrix rho = c * ah + d * bh;
  ComplexMatrix lambda = ah * b + ch * d;

  ComplexMatrix mu1 = detail::supply(choices.mu, mu, tol, options.membership_tol, "mu1");
  ComplexMatrix sigma1 = detail::supply(choices.sigma, sigma, tol, options.membership_tol, "sigma1");

  const ComplexMatrix rho_mu1 = rho * mu1;
  const ComplexMatrix sigma1_lambda = sigma1 * lambda;
  ComplexMatrix phi = c - rho_mu1 * a;
  ComplexMatrix psi = d - rho_mu1 * b;
  ComplexMatrix eta = b - a * sigma1_lambda;
  ComplexMatrix theta = d - c * sigma1_lambda;

  ComplexMatrix nu = options.schur_shortcut
                         ? schur_nu(zeta, rho, mu1)
                         : phi * conj_transpose(phi) + psi * conj_transpose(psi);
  ComplexMatrix omega = options.schur_shortcut
                            ? schur_omega(tau, lambda, sigma1)
                            : conj_transpose(eta) * eta + conj_transpose(theta) * theta;

  ComplexMatrix nu1 = detail::supply(choices.nu, nu, tol, options.membership_tol, "nu1");
  ComplexMatrix omega1 = detail::supply(choices.omega, omega, tol, options.membership_tol, "omega1");

  std::vector<std::string> warnings;
  detail::flag_conditioning(mu, tol, options.warn_condition, "mu", warnings);
  detail::flag_conditioning(sigma, tol, options.warn_condition, "sigma", warnings);
  detail::flag_conditioning(nu, tol, options.warn_condition, "nu", warnings);
  detail::flag_conditioning(omega, tol, options.warn_condition, "omega", warnings);

  ComplexMatrix Y = hstack(a, b);
  ComplexMatrix Z = hstack(c, d);
  ComplexMatrix S = vstack(a, c);
  ComplexMatrix T = vstack(b, d);
  ComplexMatrix V = hstack(phi, psi);
  ComplexMatrix W = vstack(eta, theta);

  return BlockAux{
      .partition = part,
      .blocks = blocks,
      .Y = std::move(Y),
      .Z = std::move(Z),
      .S = std::move(S),
      .T = std::move(T),
      .mu = std::move(mu),
      .sigma = std::move(sigma),
      .zeta = std::move(zeta),
      .tau = std::move(tau),
      .rho = std::move(rho),
      .lambda = std::move(lambda),
      .mu1 = std::move(mu1),
      .sigma1 = std::move(sigma1),
      .phi = std::move(phi),
      .psi = std::move(psi),
      .eta = std::move(eta),
      .theta = std::move(theta),
      .V = std::move(V),
      .W = std::move(W),
      .nu = std::move(nu),
      .omega = std::move(omega),
      .nu1 = std::move(nu1),
      .omega1 = std::move(omega1),
      .rank_tol = tol,
      .warnings = std::move(warnings),
  };
}

inline BlockAux build_aux(const ComplexMatrix& e, const BlockPartition& part,
                          const InverseChoices& choices = {}, const BlockOptions& options = {}) {
  return build_aux(split(e, part), choices, options);
}

// V* and W* computed without forming V, W:
//   V* = Z* − Y* mu1 rho*,   W* = T* − lambda* sigma1 S*.
inline ComplexMatrix v_adjoint(const BlockAux& aux) {
  return conj_transpose(aux.Z) - conj_transpose(aux.Y) * aux.mu1 * conj_transpose(aux.rho);
}

inline ComplexMatrix w_adjoint(const BlockAux& aux) {
  return conj_transpose(aux.T) - conj_transpose(aux.lambda) * aux.sigma1 * conj_transpose(aux.S);
}

/// L in block form {l11, l12, l21, l22} (stored as a, b, c, d).
inline Block2x2 build_L(const BlockAux& aux) {
  const auto& [a, b, c, d] = aux.blocks;
  ComplexMatrix l12 = conj_transpose(aux.phi) * aux.nu1;
  ComplexMatrix l11 = (conj_transpose(a) - l12 * aux.rho) * aux.mu1;
  ComplexMatrix l22 = conj_transpose(aux.psi) * aux.nu1;
  ComplexMatrix l21 = (conj_transpose(b) - l22 * aux.rho) * aux.mu1;
  return Block2x2{std::move(l11), std::move(l12), std::move(l21), std::move(l22)};
}

/// R in block form {r11, r12, r21, r22} (stored as a, b, c, d).
inline Block2x2 build_R(const BlockAux& aux) {
  const auto& [a, b, c, d] = aux.blocks;
  ComplexMatrix r21 = aux.omega1 * conj_transpose(aux.eta);
  ComplexMatrix r11 = aux.sigma1 * (conj_transpose(a) - aux.lambda * r21);
  ComplexMatrix r22 = aux.omega1 * conj_transpose(aux.theta);
  ComplexMatrix r12 = aux.sigma1 * (conj_transpose(c) - aux.lambda * r22);
  return Block2x2{std::move(r11), std::move(r12), std::move(r21), std::move(r22)};
}

inline LRFactors build_LR(const BlockAux& aux) {
  return LRFactors{compose(build_L(aux)), compose(build_R(aux))};
}

/// Orthogonal projector onto ran(E), assembled blockwise from
/// S sigma1 S* + W omega1 W*.
inline ComplexMatrix range_projector(const BlockAux& aux) {
  const auto& [a, b, c, d] = aux.blocks;
  const ComplexMatrix a_s = a * aux.sigma1;
  const ComplexMatrix c_s = c * aux.sigma1;
  const ComplexMatrix eta_o = aux.eta * aux.omega1;
  const ComplexMatrix theta_o = aux.theta * aux.omega1;
  const ComplexMatrix ah = conj_transpose(a), ch = conj_transpose(c);
  const ComplexMatrix etah = conj_transpose(aux.eta), thetah = conj_transpose(aux.theta);
  return compose(Block2x2{a_s * ah + eta_o * etah, a_s * ch + eta_o * thetah,
                          c_s * ah + theta_o * etah, c_s * ch + theta_o * thetah});
}

/// Orthogonal projector onto ran(E*): Y* mu1 Y + V* nu1 V.
inline ComplexMatrix corange_projector(const BlockAux& aux) {
  return conj_transpose(aux.Y) * aux.mu1 * aux.Y + conj_transpose(aux.V) * aux.nu1 * aux.V;
}

// The sixteen-term bilinear expansion of L·E·R, block by block.
inline Block2x2 pinv_blocks(const Block2x2& l, const Block2x2& e, const Block2x2& r) {
  const auto& [a, b, c, d] = e;
  auto entry = [&](const ComplexMatrix& lj1, const ComplexMatrix& lj2, const ComplexMatrix& r1k,
                   const ComplexMatrix& r2k) {
    return lj1 * a * r1k + lj1 * b * r2k + lj2 * c * r1k + lj2 * d * r2k;
  };
  return Block2x2{entry(l.a, l.b, r.a, r.c), entry(l.a, l.b, r.b, r.d),
                  entry(l.c, l.d, r.a, r.c), entry(l.c, l.d, r.b, r.d)};
}

inline BlockPinvResult block_pinv(const BlockAux& aux) {
  Block2x2 l = build_L(aux);
  Block2x2 r = build_R(aux);
  Block2x2 blocks = pinv_blocks(l, aux.blocks, r);
  LRFactors factors{compose(l), compose(r)};
  ComplexMatrix pinv = factors.L * aux.E() * factors.R;
  return BlockPinvResult{std::move(pinv), std::move(blocks), std::move(factors), aux.warnings};
}

inline BlockPinvResult block_pinv(const ComplexMatrix& e, const BlockPartition& part,
                                  const InverseChoices& choices = {},
                                  const BlockOptions& options = {}) {
  return block_pinv(build_aux(e, part, choices, options));
}

/// Rohde's block {1}-inverse of a Hermitian nonnegative M = [m11 m12; m21 m22]
/// with p×p leading block:
///   [m11_1 + m11_1 m12 s1 m21 m11_1,  −m11_1 m12 s1;  −s1 m21 m11_1,  s1]
/// where s1 = one_inverse(m22 − m21 m11_1 m12).
///
/// Unless `rank_tol` is given, singular values of the complement below its
/// estimated roundoff count as zero.
inline ComplexMatrix rohde_one_inverse(const ComplexMatrix& m, std::size_t p,
                                       const ComplexMatrix& m11_inv,
                                       std::optional<double> rank_tol = std::nullopt,
                                       double tol = membership_tol) {
  if (!m.is_square()) throw dimension_error("rohde_one_inverse: " + shape_of(m) + " not square");
  if (p == 0 || p >= m.rows()) {
    throw dimension_error("rohde_one_inverse: leading block size must lie in [1, n-1]");
  }
  if (!is_hermitian_nonneg(m)) {
    throw precondition_error("rohde_one_inverse: matrix is not Hermitian nonnegative");
  }
  const std::size_t q = m.rows() - p;
  const ComplexMatrix m11 = submatrix(m, 0, 0, p, p);
  const ComplexMatrix m12 = submatrix(m, 0, p, p, q);
  const ComplexMatrix m21 = submatrix(m, p, 0, q, p);
  const ComplexMatrix m22 = submatrix(m, p, p, q, q);
  if (m11_inv.rows() != p || m11_inv.cols() != p) {
    throw dimension_error("rohde_one_inverse: m11_inv has shape " + shape_of(m11_inv));
  }
  detail::require_member(m11, m11_inv, {1}, tol, "rohde_one_inverse: m11_inv");

  const ComplexMatrix m11i_m12 = m11_inv * m12;
  const ComplexMatrix m21_m11i = m21 * m11_inv;
  const ComplexMatrix schur = m22 - m21 * m11i_m12;
  // First-order error estimate for the complement: rounding in the triple
  // product plus the defect of m11_inv, which enters as K*(m11 X m11 − m11)K
  // with K = m11_inv m12.
  const double rounding = frobenius_norm(m22) +
                          frobenius_norm(m21) * frobenius_norm(m11_inv) * frobenius_norm(m12);
  const double k_norm = frobenius_norm(m11i_m12);
  const double defect = distance(m11 * m11_inv * m11, m11);
  const double noise = default_rank_tol(m.rows(), m.cols(), rounding) + k_norm * k_norm * defect;
  const ComplexMatrix s1 = one_inverse(schur, rank_tol.value_or(noise));

  const ComplexMatrix upper_right = -(m11i_m12 * s1);
  return compose(Block2x2{m11_inv - upper_right * m21_m11i, upper_right, -(s1 * m21_m11i), s1});
}

/// Block {1}-inverses of G = EE* and H = E*E from mu1, nu1 and sigma1, omega1.
inline std::pair<ComplexMatrix, ComplexMatrix> gh_one_inverses(const BlockAux& aux) {
  const ComplexMatrix rho_mu1 = aux.rho * aux.mu1;                       // q×p
  const ComplexMatrix mu1_rhoh_nu1 = aux.mu1 * conj_transpose(aux.rho) * aux.nu1;  // p×q
  ComplexMatrix g1 = compose(Block2x2{aux.mu1 + mu1_rhoh_nu1 * rho_mu1, -mu1_rhoh_nu1,
                                      -(aux.nu1 * rho_mu1), aux.nu1});

  const ComplexMatrix lambdah_sigma1 = conj_transpose(aux.lambda) * aux.sigma1;     // t×s
  const ComplexMatrix sigma1_lambda_omega1 = aux.sigma1 * aux.lambda * aux.omega1;  // s×t
  ComplexMatrix h1 = compose(Block2x2{aux.sigma1 + sigma1_lambda_omega1 * lambdah_sigma1,
                                      -sigma1_lambda_omega1, -(aux.omega1 * lambdah_sigma1),
                                      aux.omega1});
  return {std::move(g1), std::move(h1)};
}

/// L = E*·G1 and R = H1·E*; equal to build_L / build_R for the same choices.
inline LRFactors alt_LR(const BlockAux& aux) {
  const auto [g1, h1] = gh_one_inverses(aux);
  const ComplexMatrix eh = conj_transpose(aux.E());
  return LRFactors{eh * g1, h1 * eh};
}

}  // namespace blockpinv
