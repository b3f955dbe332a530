#include "symplex/matrix.hpp"

#include <sstream>

#include "symplex/error.hpp"

namespace symplex {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

Matrix Matrix::identity(const Ring& ring, std::size_t size) {
  Matrix m(ring, size, size);
  const RingElement one = ring.one();
  for (std::size_t k = 0; k < size; ++k) m.data_[k * size + k] = one;
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, RingElement value) {
  if (!(value.ring() == ring_)) throw Error(ErrorCode::MixedRing, "matrix entry from another ring");
  data_.at(r * cols_ + c) = std::move(value);
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
  if (!(ring_ == other.ring_)) throw Error(ErrorCode::MixedRing, "matrix product across rings");
  Matrix out(ring_, rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElement& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const RingElement& b = other(k, c);
        if (b.is_zero()) continue;
        out.data_[r * out.cols_ + c] += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix sum shapes");
  }
  Matrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += other.data_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix difference shapes");
  }
  Matrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= other.data_[k];
  return out;
}

Matrix Matrix::scaled(const RingElement& s) const {
  Matrix out = *this;
  for (auto& x : out.data_) x = x * s;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
  }
  return out;
}

Matrix Matrix::rehome(const Ring& super) const {
  if (ring_ == super) return *this;
  Matrix out(super, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].rehome(super);
  return out;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
  Vector out(rows_, ring_.zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const RingElement& x = (*this)(r, c);
      if (r == c ? !x.is_one() : !x.is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_monomial() const {
  if (rows_ != cols_) return false;
  std::vector<int> col_count(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    int row_count = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).is_zero()) {
        ++row_count;
        ++col_count[c];
      }
    }
    if (row_count != 1) return false;
  }
  for (int k : col_count) {
    if (k != 1) return false;
  }
  return true;
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const RingElement& factor) {
  if (factor.is_zero()) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const RingElement& s = (*this)(source, c);
    if (!s.is_zero()) data_[target * cols_ + c] += factor * s;
  }
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

RingElement dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product lengths");
  if (a.empty()) throw Error(ErrorCode::DimensionMismatch, "dot product of empty vectors");
  RingElement s = a[0].ring().zero();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_zero() && !b[k].is_zero()) s += a[k] * b[k];
  }
  return s;
}

Vector rehome(const Vector& v, const Ring& super) {
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.rehome(super));
  return out;
}

}  // namespace symplex
