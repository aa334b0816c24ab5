#include "pencils/pencil.hpp"

#include <stdexcept>
#include <string>

namespace pencils {

namespace {

std::size_t checked_sub(std::size_t a, std::size_t b, const char* what) {
  if (b > a) throw std::logic_error(std::string("internal: negative ") + what);
  return a - b;
}

}  // namespace

Pencil::Pencil(Matrix e_in, Matrix a_in) : e(std::move(e_in)), a(std::move(a_in)) {
  if (e.rows() != a.rows() || e.cols() != a.cols())
    throw std::invalid_argument("pencil: E and A shapes differ");
}

Pencil dual(const Pencil& p) { return Pencil(p.e.transpose(), p.a.transpose()); }

std::tuple<Subspace, Subspace, Pencil> reduce_step(const Pencil& p) {
  Subspace v_prime = image(p.e);
  Subspace m_prime = preimage(p.a, v_prime);
  Matrix e_cols = p.e * m_prime.basis();
  Matrix a_cols = p.a * m_prime.basis();  // lands in V' by the choice of M'
  Pencil reduced(coords_in_basis(v_prime, e_cols), coords_in_basis(v_prime, a_cols));
  return {std::move(v_prime), std::move(m_prime), std::move(reduced)};
}

std::pair<std::size_t, std::size_t> step_defects(const Pencil& p) {
  auto [v_prime, m_prime, reduced] = reduce_step(p);
  std::size_t v_second = image(reduced.e).dim();
  std::size_t domain_drop = checked_sub(p.domain_dim(), m_prime.dim(), "domain drop");
  std::size_t codomain_drop = checked_sub(p.codomain_dim(), v_prime.dim(), "codomain drop");
  std::size_t alpha =
      checked_sub(domain_drop, checked_sub(v_prime.dim(), v_second, "image drop"), "alpha");
  std::size_t beta_plus = checked_sub(codomain_drop, domain_drop, "beta");
  return {alpha, beta_plus};
}

ReductionChain reduce_fully(const Pencil& p) {
  ReductionChain chain;
  Pencil current = p;
  Matrix domain_embed = Matrix::identity(p.domain_dim());
  Matrix codomain_embed = Matrix::identity(p.codomain_dim());
  while (true) {
    auto [v_rel, m_rel, reduced] = reduce_step(current);
    ReductionStep step;
    step.domain_embed = domain_embed * m_rel.basis();
    step.codomain_embed = codomain_embed * v_rel.basis();
    step.m_k = Subspace::span_of(step.domain_embed);
    step.v_k = Subspace::span_of(step.codomain_embed);
    // Defects of the step just taken; the image of the new E is V''.
    std::size_t v_second = image(reduced.e).dim();
    std::size_t domain_drop =
        checked_sub(current.domain_dim(), m_rel.dim(), "domain drop");
    std::size_t codomain_drop =
        checked_sub(current.codomain_dim(), v_rel.dim(), "codomain drop");
    step.alpha = checked_sub(
        domain_drop, checked_sub(v_rel.dim(), v_second, "image drop"), "alpha");
    step.beta_plus = checked_sub(codomain_drop, domain_drop, "beta");
    bool stalled = v_rel.dim() == current.codomain_dim();
    step.m_rel = std::move(m_rel);
    step.v_rel = std::move(v_rel);
    step.reduced = std::move(reduced);
    chain.steps.push_back(std::move(step));
    if (stalled) break;
    current = chain.steps.back().reduced;
    domain_embed = chain.steps.back().domain_embed;
    codomain_embed = chain.steps.back().codomain_embed;
  }
  chain.index = chain.steps.size() - 1;
  return chain;
}

DefectProfile full_profile(const Pencil& p) {
  ReductionChain chain = reduce_fully(p);
  DefectProfile prof;
  prof.index = chain.index;
  for (std::size_t k = 0; k < chain.index; ++k) {
    prof.alpha.push_back(chain.steps[k].alpha);
    prof.beta_plus.push_back(chain.steps[k].beta_plus);
  }
  // Second sweep: reduce the dual of the totally reduced pencil. Its alpha
  // defects must all vanish; its beta defects are the beta-minus list.
  ReductionChain dual_chain = reduce_fully(dual(chain.totally_reduced()));
  for (const ReductionStep& step : dual_chain.steps)
    if (step.alpha != 0)
      throw std::logic_error("internal: dual sweep produced alpha defects");
  for (std::size_t k = 0; k < dual_chain.index; ++k)
    prof.beta_minus.push_back(dual_chain.steps[k].beta_plus);
  const Pencil& core = dual_chain.totally_reduced();
  if (core.domain_dim() != core.codomain_dim() ||
      image(core.e).dim() != core.domain_dim())
    throw std::logic_error("internal: second sweep did not end at an invertible E");
  prof.delta = core.domain_dim();
  return prof;
}

std::size_t index_from_defects(const DefectProfile& prof) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < prof.alpha.size(); ++k)
    if (prof.alpha[k] != 0) n = k + 1;
  for (std::size_t k = 0; k < prof.beta_plus.size(); ++k)
    if (prof.beta_plus[k] != 0 && k + 1 > n) n = k + 1;
  return n;
}

bool is_regular(const DefectProfile& prof) {
  for (std::size_t b : prof.beta_plus)
    if (b != 0) return false;
  for (std::size_t b : prof.beta_minus)
    if (b != 0) return false;
  return true;
}

bool is_regular(const Pencil& p) { return is_regular(full_profile(p)); }

bool is_regular_oracle(const Pencil& p) {
  if (p.domain_dim() != p.codomain_dim()) return false;
  std::size_t n = p.domain_dim();
  for (std::size_t t = 0; t <= n; ++t) {
    if (determinant(Rat(static_cast<long>(t)) * p.e + p.a) != 0) return true;
  }
  return false;
}

Strangeness strangeness(const Pencil& p) {
  auto [v_prime, m_prime, reduced] = reduce_step(p);
  std::size_t v_second = image(reduced.e).dim();
  Strangeness out;
  out.d = v_second;
  out.s = checked_sub(v_prime.dim(), v_second, "strangeness");
  DefectProfile prof = full_profile(p);
  out.a = prof.alpha.empty() ? 0 : prof.alpha[0];
  // Cross-check: the strangeness equals the total defect count beyond the
  // first step.
  std::size_t later = 0;
  for (std::size_t k = 1; k < prof.alpha.size(); ++k) later += prof.alpha[k];
  for (std::size_t k = 1; k < prof.beta_plus.size(); ++k) later += prof.beta_plus[k];
  if (later != out.s)
    throw std::logic_error("internal: strangeness disagrees with the defect sums");
  return out;
}

}  // namespace pencils
