#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blockpinv {

using Complex = std::complex<double>;

// Shape errors: non-conformable operands, inconsistent partitions.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical kernel (SVD, eigen-decomposition) failed to produce a result.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violates a mathematical precondition, e.g. a supplied matrix
// is not a {1}-inverse of its target or a matrix is not Hermitian.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string shape_str(std::size_t r, std::size_t c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

}  // namespace detail

/// Dense complex matrix stored row-major. Dimensions are always positive and
/// every entry is finite at construction.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(checked_size(rows, cols)) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != checked_size(rows, cols)) {
      throw dimension_error("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                            " does not match shape " + detail::shape_str(rows, cols));
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
      }
    }
  }

  // Row-wise literal, e.g. ComplexMatrix{{1, 2}, {3, 4}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : ComplexMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(),
                      flatten(rows)) {}

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    std::size_t i = 0;
    for (const auto& z : diag) {
      m(i, i) = z;
      ++i;
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
      throw dimension_error("ComplexMatrix: dimensions must be positive, got " +
                            detail::shape_str(rows, cols));
    }
    return rows * cols;
  }

  static std::vector<Complex> flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<Complex> out;
    const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != width) throw dimension_error("ComplexMatrix: ragged row literal");
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

inline std::string shape_of(const ComplexMatrix& m) { return detail::shape_str(m.rows(), m.cols()); }

inline ComplexMatrix conj_transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw dimension_error("matmul: " + shape_of(a) + " * " + shape_of(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw dimension_error("add: " + shape_of(a) + " + " + shape_of(b));
  }
  ComplexMatrix out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw dimension_error("sub: " + shape_of(a) + " - " + shape_of(b));
  }
  ComplexMatrix out = a;
  auto dst = out.entries();
  auto src = b.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= src[k];
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& z : out.entries()) z = -z;
  return out;
}

inline ComplexMatrix operator*(Complex alpha, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.entries()) z *= alpha;
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }
inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }
inline ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) { return a - b; }
inline ComplexMatrix scale(Complex alpha, const ComplexMatrix& m) { return alpha * m; }

inline double frobenius_norm(const ComplexMatrix& m) {
  // Scaled accumulation keeps the sum of squares away from overflow.
  double scale = 0.0;
  for (const auto& z : m.entries()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : m.entries()) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

/// ‖a − b‖_F; shapes must agree.
inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_norm(a - b);
}

/// Copy of the nr×nc sub-block whose top-left corner is (r0, c0).
inline ComplexMatrix submatrix(const ComplexMatrix& m, std::size_t r0, std::size_t c0,
                               std::size_t nr, std::size_t nc) {
  if (r0 + nr > m.rows() || c0 + nc > m.cols()) {
    throw dimension_error("submatrix: window exceeds " + shape_of(m));
  }
  ComplexMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

inline ComplexMatrix hstack(const ComplexMatrix& left, const ComplexMatrix& right) {
  if (left.rows() != right.rows()) {
    throw dimension_error("hstack: " + shape_of(left) + " | " + shape_of(right));
  }
  ComplexMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
  }
  return out;
}

inline ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw dimension_error("vstack: " + shape_of(top) + " / " + shape_of(bottom));
  }
  ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
  auto dst = out.entries();
  std::ranges::copy(top.entries(), dst.begin());
  std::ranges::copy(bottom.entries(), dst.begin() + static_cast<std::ptrdiff_t>(top.size()));
  return out;
}

/// The four positive block dimensions splitting a (p+q)×(s+t) matrix so
/// that the leading block is p×s.
class BlockPartition {
 public:
  BlockPartition(std::size_t p, std::size_t q, std::size_t s, std::size_t t)
      : p_(p), q_(q), s_(s), t_(t) {
    if (p == 0 || q == 0 || s == 0 || t == 0) {
      throw dimension_error("BlockPartition: all block dimensions must be positive");
    }
  }

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  std::size_t s() const noexcept { return s_; }
  std::size_t t() const noexcept { return t_; }
  std::size_t rows() const noexcept { return p_ + q_; }
  std::size_t cols() const noexcept { return s_ + t_; }

  bool fits(const ComplexMatrix& m) const noexcept {
    return m.rows() == rows() && m.cols() == cols();
  }

  std::string str() const {
    std::ostringstream os;
    os << p_ << "," << q_ << "," << s_ << "," << t_;
    return os.str();
  }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::size_t p_, q_, s_, t_;
};

/// 2×2 block view [a b; c d]. Used for the partitioned input and for any
/// other matrix carried in block form (factors, the pseudoinverse blocks).
struct Block2x2 {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;

  bool consistent() const noexcept {
    return a.rows() == b.rows() && c.rows() == d.rows() && a.cols() == c.cols() &&
           b.cols() == d.cols();
  }
};

inline Block2x2 split(const ComplexMatrix& e, const BlockPartition& part) {
  if (!part.fits(e)) {
    throw dimension_error("split: partition " + part.str() + " does not fit " + shape_of(e));
  }
  const auto p = part.p(), q = part.q(), s = part.s(), t = part.t();
  return Block2x2{submatrix(e, 0, 0, p, s), submatrix(e, 0, s, p, t), submatrix(e, p, 0, q, s),
                  submatrix(e, p, s, q, t)};
}

inline ComplexMatrix compose(const Block2x2& blocks) {
  if (!blocks.consistent()) {
    throw dimension_error("compose: inconsistent block dimensions a=" + shape_of(blocks.a) +
                          " b=" + shape_of(blocks.b) + " c=" + shape_of(blocks.c) +
                          " d=" + shape_of(blocks.d));
  }
  return vstack(hstack(blocks.a, blocks.b), hstack(blocks.c, blocks.d));
}

}  // namespace blockpinv
