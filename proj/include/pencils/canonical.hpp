#pragma once

// Canonical forms under strong equivalence (P E Q, P A Q) and weak
// equivalence (P E Q, P(E R + A Q)). The strong form is the Kronecker block
// decomposition: a regular core (I, C), nilpotent blocks N_k, singular blocks
// L_k and their transposes. It is assembled from explicit chain bases built
// level by level out of the reduction chain, so the transforms are exact and
// the block pencil is reproduced entry for entry.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pencils/exactla.hpp"
#include "pencils/matrix.hpp"
#include "pencils/pencil.hpp"

namespace pencils {

// Block inventory of a pencil. Maps go from block size k to a count >= 1;
// absent keys mean zero blocks. An N_k block contributes k to both
// dimensions, an L_k block k-1 to the domain and k to the codomain, an
// L_k-transpose block the reverse, and the core contributes core_dim to both.
struct KroneckerStructure {
  std::map<std::size_t, std::size_t> nilpotent;  // N_k counts
  std::map<std::size_t, std::size_t> l_blocks;   // L_k counts
  std::map<std::size_t, std::size_t> lt_blocks;  // L_k-transpose counts
  std::size_t core_dim = 0;
  std::optional<Matrix> core;  // core_dim x core_dim; zero matrix when absent

  std::size_t domain_dim() const;
  std::size_t codomain_dim() const;

  friend bool operator==(const KroneckerStructure& x, const KroneckerStructure& y) {
    return x.nilpotent == y.nilpotent && x.l_blocks == y.l_blocks &&
           x.lt_blocks == y.lt_blocks && x.core_dim == y.core_dim;
  }
};

// An equivalence transform. P acts on the codomain (rows), Q on the domain
// (columns); both are invertible. R is only carried by weak-equivalence
// results, where the transformed pencil is (P E Q, P(E R + A Q)).
struct Transform {
  Matrix p, q;
  std::optional<Matrix> r;
};

// One level of the chain splitting. All bases are column lists in the
// original coordinates. N = [C | K] splits the domain complement: E carries
// the C columns one-for-one onto the next level's W basis and kills the K
// columns. W = [D | Z] splits the codomain complement: D = A N columnwise,
// and Z meets the image of A trivially.
struct DecompositionLevel {
  Matrix c, k, n;  // domain side
  Matrix d, z, w;  // codomain side
};

// levels[k-1] splits level k: domain = M^(k) + C^(k) + K^(k) inside M^(k-1),
// codomain = V^(k) + D^(k) + Z^(k) inside V^(k-1). m_infty / v_infty are the
// canonical bases of the fully reduced spaces.
struct Decomposition {
  std::vector<DecompositionLevel> levels;
  Matrix m_infty, v_infty;
};

// Lemma-level splitting of the full domain of E given M' and a basis of a
// complement W'' of E M' inside E M. Returns (C, K): E maps the C columns
// one-for-one onto the W'' columns, K extends ker E  ∩ M' to all of ker E.
// Throws std::invalid_argument when E M does not split as E M' + span(W'').
std::pair<Matrix, Matrix> coupling_step(const Matrix& e, const Subspace& m_prime,
                                        const Matrix& w_next);

struct CouplingParts {
  Matrix c, k, n;  // n = [c | k]
  Matrix d, z, w;  // d = A n, w = [d | z]
};

// Full splitting at one level: runs coupling_step, forms D = A N, and picks Z
// complementing V' + D in the whole codomain. Requires v_prime == image(E).
// The K part has alpha_1 columns and the Z part beta_1+ columns.
CouplingParts coupling_full(const Pencil& p, const Subspace& m_prime,
                            const Subspace& v_prime, const Matrix& w_next);

// Splits both original spaces along the whole reduction chain, working from
// the deepest level outward with an empty seed complement.
Decomposition primal_decomposition(const Pencil& p);

// A chain of basis vectors realizing one canonical block. A nilpotent chain
// (m_1..m_k, v_1..v_k) has E m_1 = 0, E m_j = v_{j-1}, A m_j = v_j; a
// singular chain (m_1..m_{k-1}, v_1..v_k) has E m_j = v_j, A m_j = v_{j+1},
// with v_1 outside im A and v_k outside im E.
struct BlockSequence {
  bool nilpotent = false;
  Matrix m_vectors, v_vectors;
};

// Threads the level bases into block chains: each level's C columns extend
// the existing chains, K columns start nilpotent chains, Z columns start
// singular chains.
std::vector<BlockSequence> arrange_sequences(const Decomposition& decomp);

// One transposed singular chain inside the totally reduced pencil's
// coordinates: k domain columns and k-1 codomain columns with
// E p_i = q_i (i < k), E p_k = 0, A p_1 = 0, A p_{i+1} = q_i.
struct DualSequence {
  Matrix domain_vectors, codomain_vectors;
};

// Splits a totally reduced pencil (surjective E) by decomposing its dual and
// carrying the bases back as dual bases — concretely, columns of the
// inverse-transpose of the assembled dual basis matrices. What remains is the
// dynamical core: E maps core_domain onto core_codomain as the identity and A
// acts on it as the core matrix. Throws std::invalid_argument when E is not
// surjective.
struct DualDecomposition {
  std::vector<DualSequence> sequences;
  Matrix core_domain, core_codomain;
  Matrix core;
};

DualDecomposition dual_decomposition(const Pencil& totally_reduced);

// Reads block counts off a defect profile: alpha_k nilpotent blocks of size
// k, beta_k+ singular blocks, beta_k- transposed ones, and a core of size
// delta. Throws std::invalid_argument if a core matrix is supplied with the
// wrong shape.
KroneckerStructure structure_from_profile(const DefectProfile& prof,
                                          std::optional<Matrix> core);

// Builds the block-diagonal pencil: core first, then nilpotent blocks by
// ascending size, then singular blocks, then transposed singular blocks.
Pencil synthesize(const KroneckerStructure& structure);

// Deterministic pseudo-random strong equivalence: P and Q are products of
// elementary row/column operations (swaps, sign flips, small-integer shears)
// seeded by `seed`. Returns the transformed pencil and the transform.
std::pair<Pencil, Transform> scramble(const Pencil& p, std::uint64_t seed);

// The full strong canonical form: returns (T, S) with T.p * E * T.q and
// T.p * A * T.q equal, entry for entry, to synthesize(S).
std::pair<Transform, KroneckerStructure> kronecker_decompose(const Pencil& p);

// Regular pencils only: E becomes diag(I, N) with N block-diagonal
// nilpotent, A becomes diag(C, I). Throws std::domain_error("not a regular
// pencil") otherwise.
struct WeierstrassForm {
  Transform transform;
  std::map<std::size_t, std::size_t> nilpotent_sizes;
  Matrix core;
};

WeierstrassForm weierstrass(const Pencil& p);

// Canonical form under weak equivalence. The result depends only on the two
// ambient dimensions and the triple (d, a, s): E becomes the rank-normal
// identity on the d leading domain columns plus an s-by-s identity coupling
// block, and the transformed A becomes a single identity block of size s+a.
struct WeakCanonicalForm {
  Transform transform;  // r holds the weak shift, acting as E*(r) + A*(q)
  Matrix e_can, a_can;
  Strangeness invariants;
};

WeakCanonicalForm weak_canonical(const Pencil& p);

}  // namespace pencils
