#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "symplex/ring_element.hpp"

namespace symplex {

using Vector = std::vector<RingElement>;

/// Dense matrix of ring elements, 0-based.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols);

  static Matrix identity(const Ring& ring, std::size_t size);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Ring& ring() const noexcept { return ring_; }

  const RingElement& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, RingElement value);

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const RingElement& s) const;
  Matrix transpose() const;
  /// Same entries in a ring containing this one.
  Matrix rehome(const Ring& super) const;

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;
  Vector apply(const Vector& v) const;

  bool is_identity() const;
  bool is_diagonal() const;
  /// Exactly one nonzero entry in every row and column.
  bool is_monomial() const;

  /// Row operation: row[target] += factor * row[source].
  void add_row_multiple(std::size_t target, std::size_t source, const RingElement& factor);

  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElement> data_;
};

RingElement dot(const Vector& a, const Vector& b);
Vector rehome(const Vector& v, const Ring& super);

}  // namespace symplex
