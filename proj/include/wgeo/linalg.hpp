#ifndef WGEO_LINALG_HPP
#define WGEO_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wgeo/error.hpp"
#include "wgeo/scalar.hpp"

namespace wgeo {

/// Point of the space, in standard coordinates.
template <class S>
struct Vector {
  std::vector<S> coords;

  Vector() = default;
  explicit Vector(std::vector<S> c) : coords(std::move(c)) {}
  Vector(std::initializer_list<S> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  const S& operator[](std::size_t i) const { return coords[i]; }
  S& operator[](std::size_t i) { return coords[i]; }
  bool operator==(const Vector&) const = default;
};

/// Linear functional; acts on a Vector by the dot product of coefficients.
template <class S>
struct Functional {
  std::vector<S> coeffs;

  Functional() = default;
  explicit Functional(std::vector<S> c) : coeffs(std::move(c)) {}
  Functional(std::initializer_list<S> c) : coeffs(c) {}

  std::size_t size() const { return coeffs.size(); }
  const S& operator[](std::size_t i) const { return coeffs[i]; }
  S& operator[](std::size_t i) { return coeffs[i]; }
  bool operator==(const Functional&) const = default;

  S operator()(const Vector<S>& v) const {
    if (v.size() != coeffs.size()) {
      throw DimensionMismatch("functional of length " + std::to_string(coeffs.size()) +
                              " applied to vector of length " + std::to_string(v.size()));
    }
    S acc = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * v.coords[k];
    return acc;
  }
};

template <class S>
Vector<S> operator-(const Vector<S>& v) {
  Vector<S> out = v;
  for (auto& c : out.coords) c = -c;
  return out;
}

template <class S>
Functional<S> operator-(const Functional<S>& f) {
  Functional<S> out = f;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

/// Dense row-major matrix.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const S> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const S> flat() const { return data_; }

  bool operator==(const Matrix&) const = default;

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const S& a) {
    for (auto& x : data_) x *= a;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }

  Vector<S> operator*(const Vector<S>& v) const {
    if (v.size() != cols_) {
      throw DimensionMismatch("matrix with " + std::to_string(cols_) + " columns applied to vector of length " +
                              std::to_string(v.size()));
    }
    Vector<S> out(std::vector<S>(rows_, S(0)));
    for (std::size_t i = 0; i < rows_; ++i) {
      S acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v.coords[j];
      out.coords[i] = acc;
    }
    return out;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// f(M v): the bilinear evaluation used everywhere for duality pairs.
template <class S>
S bilinear(const Functional<S>& f, const Matrix<S>& m, const Vector<S>& v) {
  S acc = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (f.coeffs[i] == 0) continue;
    S row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v.coords[j];
    acc += f.coeffs[i] * row;
  }
  return acc;
}

namespace detail {

/// Reduced row echelon form in place. Returns pivot columns. In floating point
/// a column is treated as zero below `tol` times the largest entry magnitude.
template <class S>
std::vector<std::size_t> rref(std::vector<std::vector<S>>& rows, std::size_t ncols, double tol) {
  double scale = 0.0;
  if constexpr (!is_exact_v<S>) {
    for (const auto& r : rows)
      for (const auto& x : r) scale = std::max(scale, to_double(abs_value(x)));
  }
  const double thresh = tol * std::max(scale, 1.0);

  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < ncols && prow < rows.size(); ++col) {
    std::size_t best = rows.size();
    if constexpr (is_exact_v<S>) {
      for (std::size_t r = prow; r < rows.size(); ++r) {
        if (rows[r][col] != 0) {
          best = r;
          break;
        }
      }
    } else {
      double best_mag = thresh;
      for (std::size_t r = prow; r < rows.size(); ++r) {
        double mag = to_double(abs_value(rows[r][col]));
        if (mag > best_mag) {
          best_mag = mag;
          best = r;
        }
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[prow], rows[best]);
    const S piv = rows[prow][col];
    for (auto& x : rows[prow]) x /= piv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == prow || rows[r][col] == 0) continue;
      const S factor = rows[r][col];
      for (std::size_t c = 0; c < ncols; ++c) rows[r][c] -= factor * rows[prow][c];
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

}  // namespace detail

/// Rank of a list of equal-length rows.
template <class S>
std::size_t rank(std::vector<std::vector<S>> rows, double tol = 1e-9) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  return detail::rref(rows, ncols, tol).size();
}

/// Basis of { x : rows * x = 0 }, one vector per free column.
template <class S>
std::vector<std::vector<S>> null_space(std::vector<std::vector<S>> rows, std::size_t ncols, double tol = 1e-9) {
  const auto pivots = detail::rref(rows, ncols, tol);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::vector<S>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> x(ncols, S(0));
    x[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -rows[k][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Flattened row-major entries of each matrix, for rank tests on operator lists.
template <class S>
std::vector<std::vector<S>> flatten(std::span<const Matrix<S>> ms) {
  std::vector<std::vector<S>> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.emplace_back(m.flat().begin(), m.flat().end());
  return out;
}

}  // namespace wgeo

#endif  // WGEO_LINALG_HPP
