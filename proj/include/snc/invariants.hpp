#pragma once

#include <vector>

#include "snc/pairs/snc_pair.hpp"

namespace snc {

/// Which localizable invariant to apply to each stratum.
struct InvariantKind {
  enum class Selector { chi, chi_prime, chi_double_prime, poincare_at };
  Selector selector = Selector::chi;
  Rat t{};  // evaluation point for poincare_at

  static InvariantKind chi() { return {Selector::chi, {}}; }
  static InvariantKind chi_prime() { return {Selector::chi_prime, {}}; }
  static InvariantKind chi_double_prime() { return {Selector::chi_double_prime, {}}; }
  static InvariantKind poincare_at(const Rat& t) { return {Selector::poincare_at, t}; }
};

struct InvariantVector {
  // chi, chi', chi'' use the conventions of localizable_eval
  Rat chi;
  Rat chi_prime;
  Rat chi_double_prime;
  GradedPoly poincare;  // weighted sum of stratum Poincare polynomials

  friend bool operator==(const InvariantVector&, const InvariantVector&) = default;
};

/// w^J_d = prod_{j in J} -m_j / (m_j + d)
inline Rat weight(const std::vector<long>& mults, long d) {
  Rat w(1);
  for (long m : mults) {
    if (m == -d)
      throw Error(ErrorCode::ConditionStarViolation, "multiplicity equals -d = " + std::to_string(-d));
    w *= Rat(-m, m + d);
  }
  return w;
}

inline Rat subset_weight(const SncPair& pair, Subset mask) {
  std::vector<long> mults;
  for (int j : subset_indices(mask)) mults.push_back(pair.mult(j));
  return weight(mults, pair.d());
}

/// chi = P(-1), chi' = -P'(-1), chi'' = P''(-1) - dim^2 P(-1).
///
/// For a Poincare-dual class P'(-1) = -dim P(-1), so the sign makes
/// chi' = dim * chi (chi'(CP^2) = 6).
inline Rat localizable_eval(const MotClass& cls, long dim, const InvariantKind& kind) {
  using S = InvariantKind::Selector;
  if (kind.selector == S::poincare_at) return evaluate(cls.poincare(), kind.t);
  const auto values = poly_eval_derivatives(cls.poincare(), Rat(-1), 2);
  switch (kind.selector) {
    case S::chi: return values[0];
    case S::chi_prime: return -values[1];
    case S::chi_double_prime: return values[2] - Rat(dim * dim) * values[0];
    default: break;
  }
  return values[0];
}

/// phi_d(X, D) = sum_J w^J_d phi(D_J), each stratum with its own dimension.
inline Rat phi_d(const SncPair& pair, const InvariantKind& kind) {
  Rat total(0);
  for (const auto& [mask, cls] : pair.strata())
    total += subset_weight(pair, mask) * localizable_eval(cls, pair.n() - subset_size(mask), kind);
  return total;
}

/// The weighted strata sum of Poincare polynomials, sum_J w^J_d P_t(D_J).
inline GradedPoly phi_d_poincare(const SncPair& pair) {
  GradedPoly total;
  for (const auto& [mask, cls] : pair.strata()) total += subset_weight(pair, mask) * cls.poincare();
  return total;
}

inline Rat chi_d(const SncPair& pair) { return phi_d(pair, InvariantKind::chi()); }

inline InvariantVector invariant_vector(const SncPair& pair) {
  return {phi_d(pair, InvariantKind::chi()), phi_d(pair, InvariantKind::chi_prime()),
          phi_d(pair, InvariantKind::chi_double_prime()), phi_d_poincare(pair)};
}

/// chi_d(CP^n, D_{m_0..m_n}) = d^n sum (m_j + d) / prod (m_j + d)
inline Rat chi_d_closed_form_projective(int n, long d, const std::vector<long>& mults) {
  if (static_cast<int>(mults.size()) != n + 1)
    throw Error(ErrorCode::InvalidArgument, "closed form needs n + 1 multiplicities");
  Rat prod(1);
  Rat sum(0);
  for (long m : mults) {
    if (m == -d) throw Error(ErrorCode::ConditionStarViolation, "multiplicity equals -d");
    prod *= Rat(m + d);
    sum += Rat(m + d);
  }
  return pow(Rat(d), n) * sum / prod;
}

/// Predicted phi_d(X', D') - phi_d(X, D) for a log-type phi and a
/// d-canonical pair blown up along c:
///   chi_d(Y, D_Y) (chi_d(CP^(r-1), D_{m_S}) phi_d(CP^1, D_{d; m_E})
///                  - phi_d(CP^r, D_{d; m_S}))
/// For phi = chi the prediction is 0.
inline Rat blowup_change_prediction(const SncPair& pair, const CenterDescriptor& c, const InvariantKind& kind) {
  std::vector<long> center_mults;
  std::vector<std::pair<int, long>> fiber_hyperplanes;
  long m_e = static_cast<long>(c.r - 1) * pair.d();
  for (int j : subset_indices(c.contains)) {
    center_mults.push_back(pair.mult(j));
    fiber_hyperplanes.emplace_back(static_cast<int>(fiber_hyperplanes.size()), pair.mult(j));
    m_e += pair.mult(j);
  }
  const Rat chi_y = chi_d(center_pair(pair, c));
  const Rat chi_normal = chi_d(projective_space_pair(c.r - 1, pair.d(), fiber_hyperplanes));
  const Rat phi_line = phi_d(gamma_model_pair(1, pair.d(), {m_e}), kind);
  const Rat phi_fiber = phi_d(gamma_model_pair(c.r, pair.d(), center_mults), kind);
  return chi_y * (chi_normal * phi_line - phi_fiber);
}

}  // namespace snc
