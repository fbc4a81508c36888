#pragma once

// Dense exact matrices and the handful of exact algorithms the rest of the
// library needs: determinants, rational inverses, linear solves, and integral
// row echelon forms with unimodular transforms.

#include "fourcalc/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace fourcalc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw StructuralError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw StructuralError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw StructuralError("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw StructuralError("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix m) {
  if (!m.square()) throw StructuralError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int flips = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      flips = -flips;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return flips * m(n - 1, n - 1);
}

inline std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

/// Gauss-Jordan inverse over the rationals; throws on a singular matrix.
inline RatMatrix inverse(RatMatrix a) {
  if (!a.square()) throw StructuralError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) throw PreconditionError("matrix is singular");
    a.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    const Rational p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline RatMatrix inverse(const IntMatrix& a) { return inverse(to_rational(a)); }

/// Solves a x = b for x over the rationals when a solution exists (not
/// necessarily unique; free variables are set to zero).
inline std::optional<std::vector<Rational>> solve(RatMatrix a, std::vector<Rational> b) {
  if (a.rows() != b.size()) throw StructuralError("solve: shape mismatch");
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    a.swap_rows(r, piv);
    std::swap(b[r], b[piv]);
    const Rational p = a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) /= p;
    b[r] /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      b[i] -= f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_cols[i]] = b[i];
  return x;
}

/// Integral row echelon form. `transform` is unimodular with
/// transform * input == echelon; `rank` is the number of nonzero rows.
struct IntegerEchelon {
  IntMatrix echelon;
  IntMatrix transform;
  std::size_t rank = 0;
};

inline IntegerEchelon integer_echelon(IntMatrix a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows);
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols; ++j) a(dst, j) += f * a(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += f * u(src, j);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      // Smallest nonzero magnitude at or below r becomes the pivot.
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == rows) break;
      a.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        add_row(i, r, -floor_div(a(i, c), a(r, c)));
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
      for (std::size_t j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    }
    for (std::size_t i = 0; i < r; ++i)
      if (a(i, c) != 0) add_row(i, r, -floor_div(a(i, c), a(r, c)));
    ++r;
  }
  return {std::move(a), std::move(u), r};
}

/// Z-basis of {x in Z^n : m x = 0}, as rows.
inline std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m) {
  const auto e = integer_echelon(m.transpose());
  std::vector<std::vector<Integer>> basis;
  for (std::size_t i = e.rank; i < e.transform.rows(); ++i) basis.push_back(e.transform.row(i));
  return basis;
}

/// Z-basis (Hermite form rows) of the span of the given integer vectors.
inline std::vector<std::vector<Integer>> integer_span_basis(
    const std::vector<std::vector<Integer>>& generators) {
  const auto e = integer_echelon(IntMatrix::from_rows(generators));
  std::vector<std::vector<Integer>> basis;
  for (std::size_t i = 0; i < e.rank; ++i) basis.push_back(e.echelon.row(i));
  return basis;
}

/// Unimodular pairwise size reduction of a basis under the Euclidean norm of
/// the coordinate vectors; only cosmetic (keeps printed coordinates small).
inline void size_reduce(std::vector<std::vector<Integer>>& basis) {
  auto norm2 = [](const std::vector<Integer>& v) { return dot(v, v); };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        const Integer nj = norm2(basis[j]);
        if (nj == 0) continue;
        const Integer ip = dot(basis[i], basis[j]);
        // Nearest integer to ip / nj.
        const Integer q = floor_div(2 * ip + nj, 2 * nj);
        if (q == 0) continue;
        std::vector<Integer> cand = basis[i];
        for (std::size_t k = 0; k < cand.size(); ++k) cand[k] -= q * basis[j][k];
        if (norm2(cand) < norm2(basis[i])) {
          basis[i] = std::move(cand);
          improved = true;
        }
      }
  }
}

}  // namespace fourcalc
