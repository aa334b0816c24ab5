#include "pencils/exactla.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pencils {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Incremental Gauss-Jordan span tracker: each accepted column is normalized
// to a leading 1 on a fresh pivot row and that row is cleared from every
// other stored column, so membership reduction is a single sweep.
class SpanTracker {
 public:
  explicit SpanTracker(std::size_t ambient) : ambient_(ambient) {}

  // Reduces v against the span; if a nonzero residue remains, absorbs it and
  // returns true (v was independent).
  bool add(const Matrix& v) {
    std::vector<Rat> r = reduce(v);
    std::size_t lead = ambient_;
    for (std::size_t i = 0; i < ambient_; ++i)
      if (r[i] != 0) { lead = i; break; }
    if (lead == ambient_) return false;
    Rat inv = Rat(1) / r[lead];
    for (auto& x : r) x *= inv;
    for (auto& [pivot, col] : cols_) {
      Rat f = col[lead];
      if (f == 0) continue;
      for (std::size_t i = 0; i < ambient_; ++i) col[i] -= f * r[i];
    }
    cols_.emplace_back(lead, std::move(r));
    return true;
  }

  bool member(const Matrix& v) const {
    std::vector<Rat> r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  std::size_t dim() const { return cols_.size(); }

 private:
  std::vector<Rat> reduce(const Matrix& v) const {
    std::vector<Rat> r(ambient_);
    for (std::size_t i = 0; i < ambient_; ++i) r[i] = v.at(i, 0);
    for (const auto& [pivot, col] : cols_) {
      Rat f = r[pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < ambient_; ++i) r[i] -= f * col[i];
    }
    return r;
  }

  std::size_t ambient_;
  std::vector<std::pair<std::size_t, std::vector<Rat>>> cols_;
};

}  // namespace

ColumnEchelon column_echelon(const Matrix& m) {
  ColumnEchelon ce{m, Matrix::identity(m.cols()), {}};
  Matrix& r = ce.reduced;
  Matrix& t = ce.transform;
  std::size_t next = 0;  // next pivot column
  for (std::size_t row = 0; row < m.rows() && next < m.cols(); ++row) {
    std::size_t hit = m.cols();
    for (std::size_t j = next; j < m.cols(); ++j)
      if (r.at(row, j) != 0) { hit = j; break; }
    if (hit == m.cols()) continue;
    r.swap_cols(next, hit);
    t.swap_cols(next, hit);
    Rat lead = r.at(row, next);
    if (lead != 1) {
      Rat inv = Rat(1) / lead;
      r.scale_col(next, inv);
      t.scale_col(next, inv);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == next) continue;
      Rat f = r.at(row, j);
      if (f != 0) {
        r.axpy_col(j, next, -f);
        t.axpy_col(j, next, -f);
      }
    }
    ce.pivot_rows.push_back(row);
    ++next;
  }
  return ce;
}

std::pair<Matrix, Matrix> rce(const Matrix& m) {
  ColumnEchelon ce = column_echelon(m);
  return {std::move(ce.reduced), std::move(ce.transform)};
}

Subspace Subspace::span_of(const Matrix& vectors) { return image(vectors); }

Subspace Subspace::full(std::size_t ambient) {
  std::vector<std::size_t> pivots(ambient);
  for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
  return Subspace(ambient, Matrix::identity(ambient), std::move(pivots));
}

Subspace Subspace::zero(std::size_t ambient) {
  return Subspace(ambient, Matrix(ambient, 0), {});
}

Subspace image(const Matrix& m) {
  ColumnEchelon ce = column_echelon(m);
  std::size_t rank = ce.rank();
  return Subspace(m.rows(), ce.reduced.columns(0, rank), std::move(ce.pivot_rows));
}

Subspace kernel(const Matrix& m) {
  ColumnEchelon ce = column_echelon(m);
  // m * transform = [nonzero echelon columns | zeros], so the trailing
  // transform columns are a kernel basis.
  return image(ce.transform.columns(ce.rank(), m.cols() - ce.rank()));
}

Subspace preimage(const Matrix& m, const Subspace& target) {
  require(target.ambient() == m.rows(), "preimage: target lives in the wrong space");
  // m x = basis y  <=>  [m | basis] (x, -y) = 0; keep the x block.
  Subspace pairs = kernel(hcat(m, target.basis()));
  return Subspace::span_of(pairs.basis().row_slice(0, m.cols()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "sum: ambient mismatch");
  return Subspace::span_of(hcat(a.basis(), b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  require(a.ambient() == b.ambient(), "intersection: ambient mismatch");
  Subspace pairs = kernel(hcat(a.basis(), b.basis()));
  return Subspace::span_of(a.basis() * pairs.basis().row_slice(0, a.dim()));
}

bool contains(const Subspace& space, const Matrix& vectors) {
  if (space.ambient() != vectors.rows()) return false;
  // With an echelon basis, candidate coordinates read off at the pivot rows.
  const Matrix& b = space.basis();
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    Matrix coords(space.dim(), 1);
    for (std::size_t i = 0; i < space.dim(); ++i)
      coords.at(i, 0) = vectors.at(space.pivot_rows()[i], j);
    if (b * coords != vectors.col(j)) return false;
  }
  return true;
}

bool contains(const Subspace& outer, const Subspace& inner) {
  return contains(outer, inner.basis());
}

Matrix complement(const Subspace& inner, const Subspace& outer) {
  require(inner.ambient() == outer.ambient(), "complement: ambient mismatch");
  if (!contains(outer, inner))
    throw std::invalid_argument("complement: subspace not contained in the ambient one");
  SpanTracker tracker(inner.ambient());
  for (std::size_t j = 0; j < inner.dim(); ++j) tracker.add(inner.basis().col(j));
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < outer.dim(); ++j)
    if (tracker.add(outer.basis().col(j))) kept.push_back(j);
  Matrix result(inner.ambient(), kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j)
    result.set_col(j, outer.basis().col(kept[j]));
  return result;
}

Matrix inverse(const Matrix& m) {
  require(m.rows() == m.cols(), "inverse: matrix not square");
  ColumnEchelon ce = column_echelon(m);
  if (ce.rank() < m.cols()) throw SingularError();
  // Full-rank square reduced column echelon form is the identity, so
  // m * transform = I.
  return ce.transform;
}

Rat determinant(const Matrix& m) {
  require(m.rows() == m.cols(), "determinant: matrix not square");
  std::size_t n = m.rows();
  Matrix a = m;
  Rat prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { swap_row = i; break; }
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
    prev = a.at(k, k);
  }
  Rat det = n == 0 ? Rat(1) : a.at(n - 1, n - 1);
  return sign < 0 ? Rat(-det) : det;
}

std::vector<Rat> char_poly(const Matrix& m) {
  require(m.rows() == m.cols(), "char_poly: matrix not square");
  std::size_t n = m.rows();
  std::vector<Rat> coeff(n + 1);
  coeff[n] = 1;
  Matrix acc(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += coeff[n - k + 1];
    acc = m * acc;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += acc.at(i, i);
    coeff[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return coeff;
}

Matrix solve_columns(const Matrix& m, const Matrix& rhs) {
  require(rhs.rows() == m.rows(), "solve: right-hand side shape mismatch");
  ColumnEchelon ce = column_echelon(m);
  Matrix echelon_cols = ce.reduced.columns(0, ce.rank());
  Matrix coords(ce.rank(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j)
    for (std::size_t i = 0; i < ce.rank(); ++i)
      coords.at(i, j) = rhs.at(ce.pivot_rows[i], j);
  if (echelon_cols * coords != rhs)
    throw std::domain_error("solve: right-hand side outside the column span");
  return ce.transform.columns(0, ce.rank()) * coords;
}

Matrix coords_in_basis(const Subspace& space, const Matrix& vectors) {
  require(vectors.rows() == space.ambient(), "coords: ambient mismatch");
  Matrix coords(space.dim(), vectors.cols());
  for (std::size_t j = 0; j < vectors.cols(); ++j)
    for (std::size_t i = 0; i < space.dim(); ++i)
      coords.at(i, j) = vectors.at(space.pivot_rows()[i], j);
  if (space.basis() * coords != vectors)
    throw std::domain_error("coords: vector outside the subspace");
  return coords;
}

}  // namespace pencils
