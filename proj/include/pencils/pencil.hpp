#pragma once

// Matrix pencils (E, A) read as implicit linear systems E x' + A x = 0, and
// the reduction machinery on them: the chain of nested subspaces obtained by
// repeatedly restricting to E's image and its A-preimage, the defect counts
// measured along the way, the index, regularity, and the strangeness triple.

#include <cstddef>
#include <tuple>
#include <utility>
#include <vector>

#include "pencils/exactla.hpp"
#include "pencils/matrix.hpp"

namespace pencils {

// A pair of linear maps F^cols -> F^rows with a common shape. rows is the
// codomain (equation) dimension, cols the domain (unknown) dimension.
struct Pencil {
  Matrix e, a;

  Pencil() = default;
  Pencil(Matrix e_in, Matrix a_in);

  std::size_t domain_dim() const { return e.cols(); }
  std::size_t codomain_dim() const { return e.rows(); }

  friend bool operator==(const Pencil& x, const Pencil& y) {
    return x.e == y.e && x.a == y.a;
  }
};

// Transposes both maps, swapping the roles of domain and codomain.
Pencil dual(const Pencil& p);

// One reduction: the codomain shrinks to V' = im E, the domain to
// M' = { x : A x in V' }, and the pencil is re-expressed in the canonical
// bases of those subspaces. Returns (V', M', reduced pencil).
std::tuple<Subspace, Subspace, Pencil> reduce_step(const Pencil& p);

// First-step defect counts (alpha_1, beta_1+): alpha_1 is the kernel
// dimension of the map induced by E between the reduction quotients,
// beta_1+ the cokernel dimension of the one induced by A.
std::pair<std::size_t, std::size_t> step_defects(const Pencil& p);

// Record of the k-th reduction. m_k / v_k are the shrunken domain/codomain as
// canonical subspaces of the ORIGINAL spaces; alpha/beta_plus are the defects
// measured at this step. The remaining fields carry the coordinates needed to
// keep reducing: the subspaces relative to the previous level, the reduced
// pencil expressed in their canonical bases, and the accumulated basis
// matrices embedding the current level into the original spaces.
struct ReductionStep {
  Subspace m_k, v_k;
  std::size_t alpha = 0, beta_plus = 0;
  Subspace m_rel, v_rel;
  Pencil reduced;
  Matrix domain_embed, codomain_embed;
};

// steps[k-1] is the k-th reduction; the list runs through the first stalled
// step (the one whose codomain no longer shrinks), so it has index+1 entries.
struct ReductionChain {
  std::vector<ReductionStep> steps;
  std::size_t index = 0;

  const Pencil& totally_reduced() const { return steps.back().reduced; }
};

ReductionChain reduce_fully(const Pencil& p);

// Defect profile of a pencil. alpha and beta_plus have exactly `index`
// entries (alpha[k-1] is the k-th step's count). beta_minus lists the
// beta-defects of the dualized totally reduced pencil and ends at its own
// last nonzero entry. delta is the dimension left after that second sweep:
// the size of the underlying purely dynamical core.
struct DefectProfile {
  std::vector<std::size_t> alpha, beta_plus, beta_minus;
  std::size_t delta = 0;
  std::size_t index = 0;
};

DefectProfile full_profile(const Pencil& p);

// Smallest n with alpha_k = beta_k+ = 0 for all k > n. Always equals
// prof.index for profiles produced by full_profile.
std::size_t index_from_defects(const DefectProfile& prof);

// True when every beta defect (both signs) vanishes. Non-square pencils are
// never regular: the dimension bookkeeping forces a nonzero beta.
bool is_regular(const DefectProfile& prof);
bool is_regular(const Pencil& p);

// Independent check on square pencils: evaluates det(t E + A) at
// t = 0, 1, ..., n and reports whether some value is nonzero. A square pencil
// is regular exactly when that degree-<=-n polynomial is not identically
// zero, so n+1 sample points decide it.
bool is_regular_oracle(const Pencil& p);

// Strangeness invariants: d = dim V'' (the differential part), a = alpha_1
// (the algebraic part), s = dim V' - dim V'' (the strangeness proper).
struct Strangeness {
  std::size_t d = 0, a = 0, s = 0;

  friend bool operator==(const Strangeness& x, const Strangeness& y) {
    return x.d == y.d && x.a == y.a && x.s == y.s;
  }
};

Strangeness strangeness(const Pencil& p);

}  // namespace pencils
