#include "pencils/canonical.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pencils {

namespace {

// Splits every level of an already-computed chain, deepest level first. The
// seed complement at the deepest level is empty; each level's W part becomes
// the complement the next level outward must hit with its C columns.
Decomposition decompose_with(const Pencil& p, const ReductionChain& chain) {
  Decomposition out;
  out.m_infty = chain.steps.back().m_k.basis();
  out.v_infty = chain.steps.back().v_k.basis();
  std::size_t n = chain.index;
  out.levels.resize(n);
  if (n == 0) return out;
  Matrix w_next(chain.steps[n - 1].v_rel.dim(), 0);
  for (std::size_t k = n; k >= 1; --k) {
    const Pencil& system = k >= 2 ? chain.steps[k - 2].reduced : p;
    const ReductionStep& step = chain.steps[k - 1];
    Matrix lifted = step.v_rel.basis() * w_next;
    CouplingParts parts = coupling_full(system, step.m_rel, step.v_rel, lifted);
    Matrix bm = k >= 2 ? chain.steps[k - 2].domain_embed
                       : Matrix::identity(p.domain_dim());
    Matrix bv = k >= 2 ? chain.steps[k - 2].codomain_embed
                       : Matrix::identity(p.codomain_dim());
    DecompositionLevel& level = out.levels[k - 1];
    level.c = bm * parts.c;
    level.k = bm * parts.k;
    level.n = bm * parts.n;
    level.d = bv * parts.d;
    level.z = bv * parts.z;
    level.w = bv * parts.w;
    w_next = std::move(parts.w);
  }
  return out;
}

// Accumulates a product of elementary row operations on the identity:
// swaps, sign flips, and shears with factors in {-3..3}.
Matrix random_elementary_product(std::size_t n, std::mt19937_64& rng) {
  Matrix m = Matrix::identity(n);
  if (n == 0) return m;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> shear(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::size_t ops = 2 * n + 2;
  for (std::size_t op = 0; op < ops; ++op) {
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    int what = kind(rng);
    if (what < 2 || n == 1) {
      for (std::size_t c = 0; c < n; ++c) m.at(i, c) = -m.at(i, c);
    } else if (what < 4) {
      if (i != j)
        for (std::size_t c = 0; c < n; ++c) std::swap(m.at(i, c), m.at(j, c));
    } else {
      if (i == j) continue;
      int f = shear(rng) * (coin(rng) ? 1 : -1);
      for (std::size_t c = 0; c < n; ++c) m.at(i, c) += f * m.at(j, c);
    }
  }
  return m;
}

}  // namespace

std::size_t KroneckerStructure::domain_dim() const {
  std::size_t total = core_dim;
  for (const auto& [k, count] : nilpotent) total += k * count;
  for (const auto& [k, count] : l_blocks) total += (k - 1) * count;
  for (const auto& [k, count] : lt_blocks) total += k * count;
  return total;
}

std::size_t KroneckerStructure::codomain_dim() const {
  std::size_t total = core_dim;
  for (const auto& [k, count] : nilpotent) total += k * count;
  for (const auto& [k, count] : l_blocks) total += k * count;
  for (const auto& [k, count] : lt_blocks) total += (k - 1) * count;
  return total;
}

std::pair<Matrix, Matrix> coupling_step(const Matrix& e, const Subspace& m_prime,
                                        const Matrix& w_next) {
  if (m_prime.ambient() != e.cols() || w_next.rows() != e.rows())
    throw std::invalid_argument("coupling: shape mismatch");
  Subspace e_image = image(e);
  Subspace e_m_prime = image(e * m_prime.basis());
  Subspace w_span = Subspace::span_of(w_next);
  bool split = w_span.dim() == w_next.cols() && contains(e_image, w_next) &&
               sum(e_m_prime, w_span).dim() == e_m_prime.dim() + w_span.dim() &&
               e_m_prime.dim() + w_span.dim() == e_image.dim();
  if (!split)
    throw std::invalid_argument(
        "coupling: E M does not split as E M' plus the given complement");
  Matrix c = solve_columns(e, w_next);
  Subspace ker_e = kernel(e);
  Matrix k = complement(intersection(ker_e, m_prime), ker_e);
  return {std::move(c), std::move(k)};
}

CouplingParts coupling_full(const Pencil& p, const Subspace& m_prime,
                            const Subspace& v_prime, const Matrix& w_next) {
  if (!(v_prime == image(p.e)))
    throw std::invalid_argument("coupling: V' must be the image of E");
  auto [c, k] = coupling_step(p.e, m_prime, w_next);
  CouplingParts parts;
  parts.c = std::move(c);
  parts.k = std::move(k);
  parts.n = hcat(parts.c, parts.k);
  parts.d = p.a * parts.n;
  Subspace d_span = Subspace::span_of(parts.d);
  if (d_span.dim() != parts.n.cols() ||
      sum(v_prime, d_span).dim() != v_prime.dim() + d_span.dim())
    throw std::logic_error("internal: A N' is not independent of V'");
  parts.z = complement(sum(v_prime, d_span), Subspace::full(p.codomain_dim()));
  parts.w = hcat(parts.d, parts.z);
  auto [alpha, beta] = step_defects(p);
  if (parts.k.cols() != alpha || parts.z.cols() != beta)
    throw std::logic_error("internal: coupling part sizes disagree with the defects");
  return parts;
}

Decomposition primal_decomposition(const Pencil& p) {
  return decompose_with(p, reduce_fully(p));
}

std::vector<BlockSequence> arrange_sequences(const Decomposition& decomp) {
  std::vector<BlockSequence> seqs;
  for (std::size_t level = decomp.levels.size(); level >= 1; --level) {
    const DecompositionLevel& lv = decomp.levels[level - 1];
    // Every open chain must be extended exactly once per level: the C
    // columns were solved against the previous level's W basis, which is the
    // chains' end vectors in list order.
    if (lv.c.cols() != seqs.size())
      throw std::logic_error("internal: chain extension count mismatch");
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      seqs[i].m_vectors = hcat(seqs[i].m_vectors, lv.c.col(i));
      seqs[i].v_vectors = hcat(seqs[i].v_vectors, lv.d.col(i));
    }
    std::size_t c_count = lv.c.cols();
    for (std::size_t j = 0; j < lv.k.cols(); ++j) {
      BlockSequence seq;
      seq.nilpotent = true;
      seq.m_vectors = lv.k.col(j);
      seq.v_vectors = lv.d.col(c_count + j);
      seqs.push_back(std::move(seq));
    }
    for (std::size_t j = 0; j < lv.z.cols(); ++j) {
      BlockSequence seq;
      seq.nilpotent = false;
      seq.m_vectors = Matrix(lv.n.rows(), 0);
      seq.v_vectors = lv.z.col(j);
      seqs.push_back(std::move(seq));
    }
  }
  return seqs;
}

DualDecomposition dual_decomposition(const Pencil& totally_reduced) {
  const Pencil& s = totally_reduced;
  if (image(s.e).dim() != s.codomain_dim())
    throw std::invalid_argument("dual decomposition requires a surjective E");
  Pencil flipped = dual(s);
  ReductionChain chain = reduce_fully(flipped);
  Decomposition decomp = decompose_with(flipped, chain);
  for (const DecompositionLevel& level : decomp.levels)
    if (level.k.cols() != 0)
      throw std::logic_error("internal: dual sweep produced kernel chains");
  std::vector<BlockSequence> seqs = arrange_sequences(decomp);

  // Assemble bases of the dual spaces, chain vectors first, core last. The
  // dual core's codomain basis is taken as E* of its domain basis, which
  // turns the carried-back core E into an exact identity.
  Matrix gm(s.codomain_dim(), 0);
  Matrix gv(s.domain_dim(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> offsets;  // (in gm, in gv)
  for (const BlockSequence& seq : seqs) {
    if (seq.nilpotent)
      throw std::logic_error("internal: dual sweep produced nilpotent chains");
    offsets.emplace_back(gm.cols(), gv.cols());
    gm = hcat(gm, seq.m_vectors);
    gv = hcat(gv, seq.v_vectors);
  }
  std::size_t core_gm_off = gm.cols();
  std::size_t core_gv_off = gv.cols();
  gm = hcat(gm, decomp.m_infty);
  gv = hcat(gv, flipped.e * decomp.m_infty);

  // Lemma-style carry-back: the vectors dual to a basis of the dual space
  // are the columns of its inverse transpose.
  Matrix gm_it = inverse(gm).transpose();
  Matrix gv_it = inverse(gv).transpose();

  DualDecomposition out;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    std::size_t len = seqs[i].v_vectors.cols();
    DualSequence ds;
    ds.domain_vectors = gv_it.columns(offsets[i].second, len);
    ds.codomain_vectors = gm_it.columns(offsets[i].first, len - 1);
    out.sequences.push_back(std::move(ds));
  }
  std::size_t delta = decomp.m_infty.cols();
  out.core_domain = gv_it.columns(core_gv_off, delta);
  out.core_codomain = gm_it.columns(core_gm_off, delta);
  out.core = solve_columns(out.core_codomain, s.a * out.core_domain);
  return out;
}

KroneckerStructure structure_from_profile(const DefectProfile& prof,
                                          std::optional<Matrix> core) {
  KroneckerStructure st;
  for (std::size_t k = 0; k < prof.alpha.size(); ++k)
    if (prof.alpha[k] != 0) st.nilpotent[k + 1] = prof.alpha[k];
  for (std::size_t k = 0; k < prof.beta_plus.size(); ++k)
    if (prof.beta_plus[k] != 0) st.l_blocks[k + 1] = prof.beta_plus[k];
  for (std::size_t k = 0; k < prof.beta_minus.size(); ++k)
    if (prof.beta_minus[k] != 0) st.lt_blocks[k + 1] = prof.beta_minus[k];
  st.core_dim = prof.delta;
  if (core) {
    if (core->rows() != prof.delta || core->cols() != prof.delta)
      throw std::invalid_argument("core must be delta by delta");
    st.core = std::move(core);
  }
  return st;
}

Pencil synthesize(const KroneckerStructure& structure) {
  for (const auto* blocks :
       {&structure.nilpotent, &structure.l_blocks, &structure.lt_blocks})
    for (const auto& [size, count] : *blocks)
      if (size == 0 || count == 0)
        throw std::invalid_argument("block sizes and counts must be positive");
  std::size_t delta = structure.core_dim;
  Matrix core = structure.core ? *structure.core : Matrix(delta, delta);
  if (core.rows() != delta || core.cols() != delta)
    throw std::invalid_argument("core must be delta by delta");

  Matrix e(structure.codomain_dim(), structure.domain_dim());
  Matrix a(structure.codomain_dim(), structure.domain_dim());
  std::size_t r = 0, c = 0;
  for (std::size_t i = 0; i < delta; ++i) {
    e.at(r + i, c + i) = 1;
    for (std::size_t j = 0; j < delta; ++j) a.at(r + i, c + j) = core.at(i, j);
  }
  r += delta;
  c += delta;
  for (const auto& [k, count] : structure.nilpotent)
    for (std::size_t copy = 0; copy < count; ++copy) {
      for (std::size_t i = 0; i + 1 < k; ++i) e.at(r + i, c + i + 1) = 1;
      for (std::size_t i = 0; i < k; ++i) a.at(r + i, c + i) = 1;
      r += k;
      c += k;
    }
  for (const auto& [k, count] : structure.l_blocks)
    for (std::size_t copy = 0; copy < count; ++copy) {
      for (std::size_t i = 0; i + 1 < k; ++i) {
        e.at(r + i, c + i) = 1;
        a.at(r + i + 1, c + i) = 1;
      }
      r += k;
      c += k - 1;
    }
  for (const auto& [k, count] : structure.lt_blocks)
    for (std::size_t copy = 0; copy < count; ++copy) {
      for (std::size_t i = 0; i + 1 < k; ++i) {
        e.at(r + i, c + i) = 1;
        a.at(r + i, c + i + 1) = 1;
      }
      r += k - 1;
      c += k;
    }
  return Pencil(std::move(e), std::move(a));
}

std::pair<Pencil, Transform> scramble(const Pencil& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix pm = random_elementary_product(p.codomain_dim(), rng);
  Matrix qm = random_elementary_product(p.domain_dim(), rng);
  Pencil out(pm * p.e * qm, pm * p.a * qm);
  return {std::move(out), Transform{std::move(pm), std::move(qm), std::nullopt}};
}

std::pair<Transform, KroneckerStructure> kronecker_decompose(const Pencil& p) {
  ReductionChain chain = reduce_fully(p);
  Decomposition decomp = decompose_with(p, chain);
  std::vector<BlockSequence> seqs = arrange_sequences(decomp);
  Subspace v_inf = Subspace::span_of(decomp.v_infty);
  Pencil s_inf(coords_in_basis(v_inf, p.e * decomp.m_infty),
               coords_in_basis(v_inf, p.a * decomp.m_infty));
  DualDecomposition dd = dual_decomposition(s_inf);

  KroneckerStructure st;
  for (const BlockSequence& seq : seqs) {
    auto& bucket = seq.nilpotent ? st.nilpotent : st.l_blocks;
    bucket[seq.v_vectors.cols()] += 1;
  }
  for (const DualSequence& seq : dd.sequences)
    st.lt_blocks[seq.domain_vectors.cols()] += 1;
  st.core_dim = dd.core.rows();
  st.core = dd.core;
  if (st.domain_dim() != p.domain_dim() || st.codomain_dim() != p.codomain_dim())
    throw std::logic_error("internal: block inventory dimensions mismatch");

  // Basis assembly in block order: core, N ascending, L ascending,
  // L-transpose ascending; equal sizes keep construction order.
  std::vector<const BlockSequence*> nil, sing;
  for (const BlockSequence& seq : seqs) (seq.nilpotent ? nil : sing).push_back(&seq);
  auto by_len = [](const BlockSequence* x, const BlockSequence* y) {
    return x->v_vectors.cols() < y->v_vectors.cols();
  };
  std::stable_sort(nil.begin(), nil.end(), by_len);
  std::stable_sort(sing.begin(), sing.end(), by_len);
  std::vector<const DualSequence*> trans;
  for (const DualSequence& seq : dd.sequences) trans.push_back(&seq);
  std::stable_sort(trans.begin(), trans.end(),
                   [](const DualSequence* x, const DualSequence* y) {
                     return x->domain_vectors.cols() < y->domain_vectors.cols();
                   });

  Matrix q = decomp.m_infty * dd.core_domain;
  Matrix p_inv = decomp.v_infty * dd.core_codomain;
  for (const BlockSequence* seq : nil) {
    q = hcat(q, seq->m_vectors);
    p_inv = hcat(p_inv, seq->v_vectors);
  }
  for (const BlockSequence* seq : sing) {
    q = hcat(q, seq->m_vectors);
    p_inv = hcat(p_inv, seq->v_vectors);
  }
  for (const DualSequence* seq : trans) {
    q = hcat(q, decomp.m_infty * seq->domain_vectors);
    p_inv = hcat(p_inv, decomp.v_infty * seq->codomain_vectors);
  }
  Transform t{inverse(p_inv), std::move(q), std::nullopt};
  return {std::move(t), std::move(st)};
}

WeierstrassForm weierstrass(const Pencil& p) {
  if (!is_regular(p)) throw std::domain_error("not a regular pencil");
  auto [t, st] = kronecker_decompose(p);
  if (!st.l_blocks.empty() || !st.lt_blocks.empty())
    throw std::logic_error("internal: regular pencil produced singular blocks");
  return {std::move(t), std::move(st.nilpotent), std::move(*st.core)};
}

WeakCanonicalForm weak_canonical(const Pencil& p) {
  std::size_t m = p.domain_dim(), v = p.codomain_dim();
  Subspace v_prime = image(p.e);
  Subspace m_prime = preimage(p.a, v_prime);
  Subspace v_second = Subspace::span_of(p.e * m_prime.basis());
  std::size_t d = v_second.dim();
  std::size_t s = v_prime.dim() - d;
  Matrix w_second = complement(v_second, v_prime);
  CouplingParts parts = coupling_full(p, m_prime, v_prime, w_second);
  std::size_t a = parts.k.cols();

  // Domain basis: M' split into a part E carries onto the V'' basis and
  // ker E ∩ M', then the C and K columns. Codomain basis: V'', W'', D', Z'.
  Matrix lead = m_prime.basis() * solve_columns(p.e * m_prime.basis(), v_second.basis());
  Matrix ker_part = intersection(kernel(p.e), m_prime).basis();
  Matrix q = hcat(hcat(lead, ker_part), hcat(parts.c, parts.k));
  Matrix p_inv = hcat(hcat(v_second.basis(), w_second), hcat(parts.d, parts.z));
  Matrix pm = inverse(p_inv);

  // Weak shift, stored composed with Q: on the M' columns it subtracts a
  // right-inverse image of A so that E*(shift) + A*Q vanishes there; the
  // chain columns are left alone.
  std::size_t m_prime_dim = m_prime.dim();
  Matrix shift(m, m);
  if (m_prime_dim > 0) {
    Matrix lifted = solve_columns(p.e, p.a * q.columns(0, m_prime_dim));
    for (std::size_t j = 0; j < m_prime_dim; ++j) shift.set_col(j, -lifted.col(j));
  }
  Matrix e_can = pm * p.e * q;
  Matrix a_can = pm * (p.e * shift + p.a * q);

  // The result must match the closed-form layout determined by
  // (dim M, dim V, d, a, s) alone.
  Matrix e_expected(v, m), a_expected(v, m);
  for (std::size_t i = 0; i < d; ++i) e_expected.at(i, i) = 1;
  for (std::size_t i = 0; i < s; ++i) e_expected.at(d + i, m_prime_dim + i) = 1;
  for (std::size_t i = 0; i < s + a; ++i) a_expected.at(d + s + i, m_prime_dim + i) = 1;
  if (e_can != e_expected || a_can != a_expected)
    throw std::logic_error("internal: weak canonical layout mismatch");
  return {Transform{std::move(pm), std::move(q), std::move(shift)},
          std::move(e_can), std::move(a_can), Strangeness{d, a, s}};
}

}  // namespace pencils
