#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "disjoint/integer.hpp"

namespace disjoint {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, T(0)) {}

  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw std::invalid_argument("Matrix: " + std::to_string(entries_.size()) + " entries for shape " +
                                  shape_string(rows_, cols_));
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  static Matrix diagonal(std::span<const T> values) {
    Matrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  std::span<const T> entries() const noexcept { return entries_; }

  std::string shape() const { return shape_string(rows_, cols_); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  static std::string shape_string(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> entries_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: shape mismatch " + a.shape() + " * " + b.shape());
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += aik * src[j];
    }
  }
  return out;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, std::span<const T> v) {
  if (a.cols() != v.size())
    throw std::invalid_argument("mat_vec: shape mismatch " + a.shape() + " * vector of length " +
                                std::to_string(v.size()));
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (r[j] != 0) out[i] += r[j] * v[j];
  }
  return out;
}

/// Block (i, j) of the result is a(i, j) * b. Row index of the result is
/// i * b.rows() + k, so the left factor is the most significant digit.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

/// a ⊗ a ⊗ ... ⊗ a (power factors); power 0 gives the 1x1 identity.
template <class T>
Matrix<T> kronecker_power(const Matrix<T>& a, unsigned power) {
  Matrix<T> out = Matrix<T>::identity(1);
  for (unsigned i = 0; i < power; ++i) out = kronecker(out, a);
  return out;
}

template <class T>
std::vector<T> kronecker(std::span<const T> a, std::span<const T> b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const T& x : a)
    for (const T& y : b) out.push_back(x * y);
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

template <class T>
T trace(const Matrix<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("trace: non-square matrix " + a.shape());
  T out(0);
  for (std::size_t i = 0; i < a.rows(); ++i) out += a(i, i);
  return out;
}

template <class T>
bool is_diagonal(const Matrix<T>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != 0) return false;
  return true;
}

/// Row i of the result is row perm[i] of a.
template <class T>
Matrix<T> permute_rows(const Matrix<T>& a, std::span<const std::size_t> perm) {
  if (perm.size() != a.rows()) throw std::invalid_argument("permute_rows: permutation length mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) std::ranges::copy(a.row(perm[i]), out.row(i).begin());
  return out;
}

/// Column j of the result is column perm[j] of a.
template <class T>
Matrix<T> permute_cols(const Matrix<T>& a, std::span<const std::size_t> perm) {
  if (perm.size() != a.cols()) throw std::invalid_argument("permute_cols: permutation length mismatch");
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < perm.size(); ++j) out(i, j) = a(i, perm[j]);
  return out;
}

/// Exact determinant by Bareiss fraction-free elimination.
inline Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant: non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  IntMatrix m = a;
  Integer prev(1);
  Integer tmp;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return Integer(0);
      m.swap_rows(k, p);
      sign = -sign;
    }
    const mpz_srcptr pivot = m(k, k).get_mpz_t();
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_srcptr lead = m(i, k).get_mpz_t();
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_mul(tmp.get_mpz_t(), m(i, j).get_mpz_t(), pivot);
        mpz_submul(tmp.get_mpz_t(), lead, m(k, j).get_mpz_t());
        mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) { return a.is_square() && abs(determinant(a)) == 1; }

}  // namespace disjoint
