#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3aut {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Dense row-major matrix over an exact ring. Dimensions may be zero only for
/// transient values; the lattice-facing types reject empty matrices.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows);
  static Matrix diagonal(const std::vector<T>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_row(std::size_t i, const std::vector<T>& v);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix& operator*=(const T& s);
  std::vector<T> operator*(const std::vector<T>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

RatMat to_rat(const IntMat& m);
RatVec to_rat(const IntVec& v);
// Throws std::domain_error if some entry is not an integer.
IntMat to_int(const RatMat& m);
IntVec to_int(const RatVec& v);
bool is_integral(const RatMat& m);

IntVec vec(std::initializer_list<long> xs);

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b);
// Bilinear pairing a^T G b.
Int pair(const IntVec& a, const IntMat& gram, const IntVec& b);
Rat pair(const RatVec& a, const RatMat& gram, const RatVec& b);
// Row vector times matrix.
IntVec row_times(const IntVec& v, const IntMat& m);
RatVec row_times(const RatVec& v, const RatMat& m);

IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec operator*(const Int& s, const IntVec& a);
bool is_zero(const IntVec& v);

/// Positive remainder in [0, m).
Int mod_pos(const Int& a, const Int& m);
/// Reduce a rational into [0, m) for a positive integer modulus m.
Rat mod_rat(const Rat& a, const Int& m);
Int floor_div(const Rat& a);
Int ceil_div(const Rat& a);

std::string to_string(const IntMat& m);
std::string to_string(const IntVec& v);
std::string to_string(const Rat& r);
std::ostream& operator<<(std::ostream& os, const IntMat& m);

/// Hash for use in unordered containers of matrices.
struct IntMatHash {
  std::size_t operator()(const IntMat& m) const noexcept;
};
struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept;
};

// --------------------------------------------------------------------------

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

template <class T>
Matrix<T> Matrix<T>::diagonal(const std::vector<T>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

template <class T>
void Matrix<T>::set_row(std::size_t i, const std::vector<T>& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

template <class T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

template <class T>
Matrix<T> Matrix<T>::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix b(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(idx[i], j);
  return b;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  Matrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

template <class T>
Matrix<T> Matrix<T>::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("dimension mismatch");
  Matrix r(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

template <class T>
Matrix<T> Matrix<T>::operator-() const {
  Matrix r(*this);
  for (auto& x : r.data_) x = -x;
  return r;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in product");
  Matrix r(rows_, o.cols_);
  T t;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const T& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        t = a * o(k, j);
        r(i, j) += t;
      }
    }
  return r;
}

template <class T>
Matrix<T>& Matrix<T>::operator*=(const T& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

template <class T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  std::vector<T> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace k3aut
