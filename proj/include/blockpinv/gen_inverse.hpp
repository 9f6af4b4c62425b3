#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "blockpinv/matrix.hpp"
#include "blockpinv/svd.hpp"

namespace blockpinv {

/// Default relative tolerance for inverse-class membership.
inline constexpr double membership_tol = 1e-9;

/// Frobenius defects of the four Penrose equations for a candidate X of M:
///   (1) MXM = M   (2) XMX = X   (3) (MX)* = MX   (4) (XM)* = XM
struct PenroseReport {
  std::array<double, 4> residual{};  // r1..r4 at index 0..3
  double scale_m = 0.0;              // ‖M‖_F
  double scale_x = 0.0;              // ‖X‖_F

  double r(int equation) const { return residual.at(static_cast<std::size_t>(equation - 1)); }

  double scale() const { return std::max({1.0, scale_m, scale_x}); }

  double relative(int equation) const { return r(equation) / scale(); }

  double max_relative() const {
    return *std::ranges::max_element(residual) / scale();
  }
};

/// Nonempty subset of the Penrose equations {1,2,3,4}.
class InverseClass {
 public:
  InverseClass(std::initializer_list<int> equations) {
    for (int e : equations) insert(e);
    if (mask_ == 0) throw std::invalid_argument("InverseClass: empty equation set");
  }

  // Parses "1,2,4" (whitespace tolerated).
  static InverseClass parse(std::string_view spec) {
    InverseClass cls;
    for (char ch : spec) {
      if (ch == ',' || ch == ' ') continue;
      if (ch < '1' || ch > '4') {
        throw std::invalid_argument("InverseClass: bad equation list '" + std::string(spec) + "'");
      }
      cls.insert(ch - '0');
    }
    if (cls.mask_ == 0) throw std::invalid_argument("InverseClass: empty equation set");
    return cls;
  }

  bool contains(int equation) const { return (mask_ >> (equation - 1)) & 1u; }

  std::string str() const {
    std::string out = "{";
    for (int e = 1; e <= 4; ++e) {
      if (!contains(e)) continue;
      if (out.size() > 1) out += ',';
      out += static_cast<char>('0' + e);
    }
    return out + "}";
  }

 private:
  InverseClass() = default;

  void insert(int e) {
    if (e < 1 || e > 4) throw std::invalid_argument("InverseClass: equation index out of range");
    mask_ |= 1u << (e - 1);
  }

  unsigned mask_ = 0;
};

inline PenroseReport penrose_check(const ComplexMatrix& m, const ComplexMatrix& x) {
  if (x.rows() != m.cols() || x.cols() != m.rows()) {
    throw dimension_error("penrose_check: candidate " + shape_of(x) + " is not shaped like the "
                          "adjoint of " + shape_of(m));
  }
  const ComplexMatrix mx = m * x;
  const ComplexMatrix xm = x * m;
  PenroseReport rep;
  rep.residual[0] = distance(mx * m, m);
  rep.residual[1] = distance(xm * x, x);
  rep.residual[2] = hermitian_deviation(mx);
  rep.residual[3] = hermitian_deviation(xm);
  rep.scale_m = frobenius_norm(m);
  rep.scale_x = frobenius_norm(x);
  return rep;
}

inline bool is_member(const PenroseReport& rep, const InverseClass& cls, double tol = membership_tol) {
  if (tol < 0.0) throw std::invalid_argument("is_member: tolerance must be nonnegative");
  for (int e = 1; e <= 4; ++e) {
    if (cls.contains(e) && !(rep.r(e) <= tol * rep.scale())) return false;
  }
  return true;
}

inline bool is_member(const ComplexMatrix& m, const ComplexMatrix& x, const InverseClass& cls,
                      double tol = membership_tol) {
  return is_member(penrose_check(m, x), cls, tol);
}

/// A {1}-inverse of M. Realized as the SVD pseudoinverse, which satisfies
/// all four equations.
inline ComplexMatrix one_inverse(const ComplexMatrix& m, std::optional<double> rank_tol = std::nullopt) {
  return svd_pinv(m, rank_tol);
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits; independent of the
// standard library's distribution implementations.
inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Complex unit_disc(std::mt19937_64& rng) {
  const double radius = std::sqrt(unit_interval(rng));
  const double angle = 2.0 * std::numbers::pi * unit_interval(rng);
  return std::polar(radius, angle);
}

inline ComplexMatrix random_disc_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  ComplexMatrix out(rows, cols);
  for (auto& z : out.entries()) z = unit_disc(rng);
  return out;
}

}  // namespace detail

/// A seed-determined member of M{1}:
///   X = X0 + (I − X0·M)·U + V·(I − M·X0),  X0 = one_inverse(M),
/// with U, V drawn entrywise uniform on the complex unit disc from
/// mt19937_64(seed). Every {1}-inverse has this form for some U, V.
inline ComplexMatrix one_inverse_sample(const ComplexMatrix& m, std::uint64_t seed,
                                        std::optional<double> rank_tol = std::nullopt) {
  std::mt19937_64 rng(seed);
  const std::size_t rows = m.rows(), cols = m.cols();
  const ComplexMatrix x0 = one_inverse(m, rank_tol);
  const ComplexMatrix u = detail::random_disc_matrix(cols, rows, rng);
  const ComplexMatrix v = detail::random_disc_matrix(cols, rows, rng);
  const ComplexMatrix right_null = ComplexMatrix::identity(cols) - x0 * m;
  const ComplexMatrix left_null = ComplexMatrix::identity(rows) - m * x0;
  return x0 + right_null * u + v * left_null;
}

namespace detail {

inline void require_member(const ComplexMatrix& target, const ComplexMatrix& x,
                           const InverseClass& cls, double tol, const std::string& what) {
  const PenroseReport rep = penrose_check(target, x);
  if (!is_member(rep, cls, tol)) {
    throw precondition_error(what + " is not a " + cls.str() + "-inverse (max relative residual " +
                             std::to_string(rep.max_relative()) + ")");
  }
}

}  // namespace detail

/// M*·G1 for G1 ∈ (MM*){1}; the result lies in M{1,2,4}.
inline ComplexMatrix urquhart_124(const ComplexMatrix& m, const ComplexMatrix& g_inv,
                                  double tol = membership_tol) {
  const ComplexMatrix mh = conj_transpose(m);
  detail::require_member(m * mh, g_inv, {1}, tol, "urquhart_124: g_inv");
  return mh * g_inv;
}

/// H1·M* for H1 ∈ (M*M){1}; the result lies in M{1,2,3}.
inline ComplexMatrix urquhart_123(const ComplexMatrix& m, const ComplexMatrix& h_inv,
                                  double tol = membership_tol) {
  const ComplexMatrix mh = conj_transpose(m);
  detail::require_member(mh * m, h_inv, {1}, tol, "urquhart_123: h_inv");
  return h_inv * mh;
}

/// L·M·R = M† for any L ∈ M{1,4} and R ∈ M{1,3}.
inline ComplexMatrix urquhart_mpi(const ComplexMatrix& m, const ComplexMatrix& l,
                                  const ComplexMatrix& r, double tol = membership_tol) {
  detail::require_member(m, l, {1, 4}, tol, "urquhart_mpi: L");
  detail::require_member(m, r, {1, 3}, tol, "urquhart_mpi: R");
  return l * m * r;
}

}  // namespace blockpinv
