#pragma once

// Exact linear algebra over the rationals. Everything here is deterministic
// and canonical: subspaces carry their unique reduced-column-echelon basis,
// so subspace equality is matrix equality, and every "pick a vector" choice
// (solutions, complements) follows a fixed scan order. All functions are pure.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pencils/matrix.hpp"

namespace pencils {

struct SingularError : std::domain_error {
  SingularError() : std::domain_error("singular") {}
};

// Result of column reduction: reduced = input * transform, with transform
// square and invertible. The nonzero columns of `reduced` are in reduced
// column echelon form (each column's leading 1 sits strictly below the
// previous column's, and each leading-1 row is zero in every other column)
// and precede all zero columns. pivot_rows lists the leading-1 rows in
// increasing order; its length is the rank.
struct ColumnEchelon {
  Matrix reduced;
  Matrix transform;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

ColumnEchelon column_echelon(const Matrix& m);

// The (reduced, transform) pair alone.
std::pair<Matrix, Matrix> rce(const Matrix& m);

// A subspace of F^ambient in canonical form. Two Subspace values compare
// equal exactly when they are the same subspace.
class Subspace {
 public:
  Subspace() = default;  // zero subspace of F^0
  static Subspace span_of(const Matrix& vectors);
  static Subspace full(std::size_t ambient);
  static Subspace zero(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  friend Subspace image(const Matrix& m);

  std::size_t ambient_ = 0;
  Matrix basis_;  // ambient x dim, reduced column echelon
  std::vector<std::size_t> pivots_;
};

// Column span of m.
Subspace image(const Matrix& m);

// Solution space of m x = 0.
Subspace kernel(const Matrix& m);

// { x : m x in target }; always contains kernel(m). target must live in the
// codomain of m.
Subspace preimage(const Matrix& m, const Subspace& target);

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);

// Do all columns of `vectors` lie in `space`?
bool contains(const Subspace& space, const Matrix& vectors);
bool contains(const Subspace& outer, const Subspace& inner);

// Basis of a complement of `inner` inside `outer`: scans the canonical basis
// columns of `outer` in index order, greedily keeping those independent of
// `inner` plus the columns already kept. The result is a slice of outer's
// basis, not re-echelonized. Throws std::invalid_argument if inner is not
// contained in outer.
Matrix complement(const Subspace& inner, const Subspace& outer);

// Exact inverse; throws SingularError when rank < size.
Matrix inverse(const Matrix& m);

// Determinant by fraction-free (Bareiss) elimination. Used as the
// independently-coded counterpart to char_poly.
Rat determinant(const Matrix& m);

// Coefficients of det(xI - m), ascending, monic: result[k] multiplies x^k and
// result.back() == 1. Computed by the Faddeev-LeVerrier recurrence.
std::vector<Rat> char_poly(const Matrix& m);

// Canonical particular solutions: returns x with m x = rhs columnwise, free
// coordinates set to zero (relative to the echelon transform of m). Throws
// std::domain_error if some column is outside the column span.
Matrix solve_columns(const Matrix& m, const Matrix& rhs);

// Coordinates of `vectors` in the canonical basis of `space`; throws
// std::domain_error if some column is outside the space.
Matrix coords_in_basis(const Subspace& space, const Matrix& vectors);

}  // namespace pencils
