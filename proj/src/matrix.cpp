#include "pencils/matrix.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace pencils {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}
}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), ents_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  ents_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    require(row.size() == cols_, "ragged matrix literal");
    for (const auto& v : row) ents_.push_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& v : ents_)
    if (v != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::col(std::size_t j) const { return columns(j, 1); }

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  require(first + count <= cols_, "column slice out of range");
  Matrix s(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) s.at(i, j) = at(i, first + j);
  return s;
}

Matrix Matrix::row_slice(std::size_t first, std::size_t count) const {
  require(first + count <= rows_, "row slice out of range");
  Matrix s(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(first + i, j);
  return s;
}

void Matrix::set_col(std::size_t j, const Matrix& column) {
  require(j < cols_ && column.rows() == rows_ && column.cols() == 1,
          "set_col shape mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = column.at(i, 0);
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void Matrix::scale_col(std::size_t j, const Rat& factor) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) *= factor;
}

void Matrix::axpy_col(std::size_t dst, std::size_t src, const Rat& factor) {
  for (std::size_t i = 0; i < rows_; ++i) at(i, dst) += factor * at(i, src);
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require(cols_ == rhs.rows_, "product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& lhs_ik = at(i, k);
      if (lhs_ik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) += lhs_ik * rhs.at(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "sum shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < ents_.size(); ++i) out.ents_[i] = ents_[i] + rhs.ents_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_, "difference shape mismatch");
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < ents_.size(); ++i) out.ents_[i] = ents_[i] - rhs.ents_[i];
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < ents_.size(); ++i) out.ents_[i] = -ents_[i];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ents_ == b.ents_;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[" << m.rows() << "x" << m.cols() << "]";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? " [" : "; [");
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j == 0 ? "" : ", ") << rat_to_string(m.at(i, j));
    os << "]";
  }
  return os;
}

Matrix operator*(const Rat& scalar, const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = scalar * m.at(i, j);
  return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "hcat row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
  }
  return out;
}

}  // namespace pencils
