#pragma once

#include "common.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace magnus_torsion {

/// Dense row-major square-or-rectangular matrix over an arbitrary ring type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, data_.empty() ? T() : data_[0]);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;

inline IntegerMatrix identity_matrix(std::size_t n) {
  IntegerMatrix m(n, n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  IntegerMatrix r(a.rows(), b.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0)
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
  return r;
}

/// Intersection form with blocks (0 1 / -1 0).
inline IntegerMatrix symplectic_form(int genus) {
  IntegerMatrix j(static_cast<std::size_t>(2 * genus), static_cast<std::size_t>(2 * genus),
                  Integer(0));
  for (int i = 0; i < genus; ++i) {
    j(static_cast<std::size_t>(2 * i), static_cast<std::size_t>(2 * i + 1)) = 1;
    j(static_cast<std::size_t>(2 * i + 1), static_cast<std::size_t>(2 * i)) = -1;
  }
  return j;
}

inline bool is_symplectic(const IntegerMatrix& m) {
  if (!m.is_square() || m.rows() % 2) return false;
  const IntegerMatrix j = symplectic_form(static_cast<int>(m.rows() / 2));
  return m.transpose() * j * m == j;
}

inline std::string to_string(const IntegerMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << "]";
  }
  out << "]";
  return out.str();
}

inline IntegerMatrix integer_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n ? rows.begin()->size() : 0;
  IntegerMatrix r(n, m, Integer(0));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != m) throw std::invalid_argument("integer_matrix: ragged rows");
    std::size_t j = 0;
    for (long v : row) r(i, j++) = v;
    ++i;
  }
  return r;
}

}  // namespace magnus_torsion
