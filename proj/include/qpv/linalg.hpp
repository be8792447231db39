/// @file linalg.hpp
/// @brief Dense exact linear algebra over a field (Q(v) scalars or rationals):
///        reduced row echelon form, rank, nullspace, solving, inverse,
///        Kronecker products, and a fraction-free integer-polynomial rank for
///        the large exact computations.
///
/// Pivoting is deterministic (first nonzero entry in column order), so every
/// derived object — pivot sets, nullspace bases, solved coordinates — is
/// reproducible bit-for-bit.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "qpv/scalar.hpp"

namespace qpv {

inline bool fld_is_zero(const Scalar& x) { return x.is_zero(); }
inline bool fld_is_zero(const mpq_class& x) { return x == 0; }

template <typename T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(size_t r, size_t c) : r_(r), c_(c), d_(r * c, T(0)) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }

  T& operator()(size_t i, size_t j) { return d_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return d_[i * c_ + j]; }

  bool operator==(const Mat& o) const {
    return r_ == o.r_ && c_ == o.c_ && d_ == o.d_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const {
    Mat m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const T& a = (*this)(i, k);
        if (fld_is_zero(a)) continue;
        for (size_t j = 0; j < o.c_; ++j) {
          if (fld_is_zero(o(k, j))) continue;
          m(i, j) += a * o(k, j);
        }
      }
    return m;
  }

  Mat operator+(const Mat& o) const {
    Mat m(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] + o.d_[i];
    return m;
  }

  Mat operator-(const Mat& o) const {
    Mat m(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] - o.d_[i];
    return m;
  }

  Mat scaled(const T& c) const {
    Mat m(r_, c_);
    for (size_t i = 0; i < d_.size(); ++i) m.d_[i] = d_[i] * c;
    return m;
  }

  Mat transpose() const {
    Mat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!fld_is_zero(x)) return false;
    return true;
  }

  /// Kronecker product: result((i*B.rows+k),(j*B.cols+l)) = A(i,j)*B(k,l).
  static Mat kronecker(const Mat& A, const Mat& B) {
    Mat m(A.rows() * B.rows(), A.cols() * B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
      for (size_t j = 0; j < A.cols(); ++j) {
        if (fld_is_zero(A(i, j))) continue;
        for (size_t k = 0; k < B.rows(); ++k)
          for (size_t l = 0; l < B.cols(); ++l) {
            if (fld_is_zero(B(k, l))) continue;
            m(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
          }
      }
    return m;
  }

 private:
  size_t r_, c_;
  std::vector<T> d_;
};

/// In-place reduced row echelon form; returns the pivot columns in order.
template <typename T>
std::vector<size_t> rref(Mat<T>& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t p = row;
    while (p < m.rows() && fld_is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || fld_is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (size_t j = col; j < m.cols(); ++j)
        m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename T>
size_t rank_of(Mat<T> m) {
  return rref(m).size();
}

/// Basis of the right nullspace, returned as the columns of the result.
template <typename T>
Mat<T> nullspace(Mat<T> m) {
  std::vector<size_t> piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  Mat<T> basis(m.cols(), free_cols.size());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t fc = free_cols[k];
    basis(fc, k) = T(1);
    for (size_t r = 0; r < piv.size(); ++r) basis(piv[r], k) = -m(r, fc);
  }
  return basis;
}

/// Solve A X = B (any consistent system; free variables set to zero).
/// Throws inconsistent-system when no solution exists.
template <typename T>
Mat<T> solve(const Mat<T>& A, const Mat<T>& B) {
  Mat<T> aug(A.rows(), A.cols() + B.cols());
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    for (size_t j = 0; j < B.cols(); ++j) aug(i, A.cols() + j) = B(i, j);
  }
  // Eliminate on the A-part only.
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
    size_t p = row;
    while (p < aug.rows() && fld_is_zero(aug(p, col))) ++p;
    if (p == aug.rows()) continue;
    if (p != row)
      for (size_t j = 0; j < aug.cols(); ++j) std::swap(aug(p, j), aug(row, j));
    T inv = T(1) / aug(row, col);
    for (size_t j = col; j < aug.cols(); ++j) aug(row, j) = aug(row, j) * inv;
    for (size_t i = 0; i < aug.rows(); ++i) {
      if (i == row || fld_is_zero(aug(i, col))) continue;
      T f = aug(i, col);
      for (size_t j = col; j < aug.cols(); ++j)
        aug(i, j) = aug(i, j) - f * aug(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  for (size_t i = row; i < aug.rows(); ++i)
    for (size_t j = 0; j < B.cols(); ++j)
      if (!fld_is_zero(aug(i, A.cols() + j)))
        throw Error("inconsistent-system", "no solution");
  Mat<T> X(A.cols(), B.cols());
  for (size_t r = 0; r < piv.size(); ++r)
    for (size_t j = 0; j < B.cols(); ++j) X(piv[r], j) = aug(r, A.cols() + j);
  return X;
}

template <typename T>
Mat<T> inverse(const Mat<T>& m) {
  if (m.rows() != m.cols()) throw Error("singular-matrix", "not square");
  Mat<T> aug(m.rows(), 2 * m.cols());
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols() + i) = T(1);
  }
  std::vector<size_t> piv = rref(aug);
  if (piv.size() != m.rows() || piv.back() != m.rows() - 1)
    throw Error("singular-matrix", "matrix not invertible");
  for (size_t c : piv)
    if (c >= m.rows()) throw Error("singular-matrix", "matrix not invertible");
  Mat<T> inv(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) inv(i, j) = aug(i, m.cols() + j);
  return inv;
}

/// Evaluate a Q(v) matrix entrywise at v = x (throws pole-at-point).
inline Mat<mpq_class> evaluate(const Mat<Scalar>& m, const mpq_class& x) {
  Mat<mpq_class> r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(x);
  return r;
}

/// Rank of a Q(v) matrix after evaluation at v = x.
inline size_t rank_at(const Mat<Scalar>& m, const mpq_class& x) {
  return rank_of(evaluate(m, x));
}

/// Exact rank over Q(v): each row is cleared of denominators and Laurent
/// shifts (row scaling by nonzero elements preserves rank), then the integer
/// polynomial matrix is reduced by fraction-free Bareiss elimination, whose
/// intermediate entries stay integral (they are minors of the input).
inline size_t rank_exact(const Mat<Scalar>& m) {
  const size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<ZPoly>> M(R, std::vector<ZPoly>(C));
  for (size_t i = 0; i < R; ++i) {
    // lcm of the row's denominators
    ZPoly l = {1};
    for (size_t j = 0; j < C; ++j) {
      const ZPoly& de = m(i, j).den();
      if (de.size() == 1 && de[0] == 1) continue;
      ZPoly g = poly::gcd(l, de);
      l = poly::mul(poly::divexact(l, g), de);
    }
    long minsh = 0;
    for (size_t j = 0; j < C; ++j)
      if (!m(i, j).is_zero()) minsh = std::min(minsh, m(i, j).shift());
    for (size_t j = 0; j < C; ++j) {
      const Scalar& s = m(i, j);
      if (s.is_zero()) continue;
      ZPoly e = poly::mul(s.num(), poly::divexact(l, s.den()));
      M[i][j] = poly::shift_up(e, static_cast<int>(s.shift() - minsh));
    }
  }
  ZPoly prev = {1};
  size_t row = 0;
  for (size_t col = 0; col < C && row < R; ++col) {
    size_t p = row;
    while (p < R && poly::is_zero(M[p][col])) ++p;
    if (p == R) continue;
    if (p != row) std::swap(M[p], M[row]);
    for (size_t i = row + 1; i < R; ++i) {
      for (size_t j = col + 1; j < C; ++j) {
        ZPoly t = poly::sub(poly::mul(M[row][col], M[i][j]),
                            poly::mul(M[i][col], M[row][j]));
        M[i][j] = t.empty() ? ZPoly{} : poly::divexact(t, prev);
      }
      M[i][col] = {};
    }
    prev = M[row][col];
    ++row;
  }
  return row;
}

}  // namespace qpv
