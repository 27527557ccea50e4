#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsos/ring.hpp"

namespace qsos {

/// Row-major dense matrix over a commutative ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, RingTraits<T>::zero()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

// Fraction-free elimination; every division is exact in an integral domain.
template <class T>
T bareiss_determinant(Matrix<T> m) {
  using Tr = RingTraits<T>;
  const std::size_t n = m.rows();
  if (n == 0) return Tr::one();
  bool negate = false;
  T prev = Tr::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (Tr::is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && Tr::is_zero(m(p, k))) ++p;
      if (p == n) return Tr::zero();
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = Tr::exact_div(v, prev);
      }
      m(i, k) = Tr::zero();
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? T(-det) : det;
}

inline double pivoted_determinant(Matrix<double> m) {
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if constexpr (RingTraits<T>::exact) {
    return detail::bareiss_determinant(m);
  } else if constexpr (std::is_same_v<T, double>) {
    return detail::pivoted_determinant(m);
  } else {
    return detail::bareiss_determinant(m);
  }
}

}  // namespace qsos
