#pragma once

// Dense matrices over the exact rational field. Zero-row and zero-column
// shapes are first-class values; every operation accepts them, so edge cases
// like 0x0 pencils flow through the same code paths as everything else.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "pencils/rational.hpp"

namespace pencils {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  Matrix(std::initializer_list<std::initializer_list<Rat>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return ents_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return ents_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;
  Matrix transpose() const;
  Matrix col(std::size_t j) const;
  Matrix columns(std::size_t first, std::size_t count) const;
  Matrix row_slice(std::size_t first, std::size_t count) const;
  void set_col(std::size_t j, const Matrix& column);

  // Column operations for echelon reduction.
  void swap_cols(std::size_t a, std::size_t b);
  void scale_col(std::size_t j, const Rat& factor);
  void axpy_col(std::size_t dst, std::size_t src, const Rat& factor);  // col dst += factor * col src

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> ents_;
};

Matrix operator*(const Rat& scalar, const Matrix& m);

// Side-by-side concatenation; row counts must agree.
Matrix hcat(const Matrix& a, const Matrix& b);

}  // namespace pencils
