#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snc/exactalg/cyclotomic.hpp"
#include "snc/invariants.hpp"

namespace snc {

/// Log-resolution data of a KLT variety: strata of the exceptional divisors
/// E_J (J = {} is the resolution X' itself) and discrepancies a_j > -1.
class DiscrepancyData {
 public:
  DiscrepancyData(int n, StrataMap strata, std::vector<Rat> discrepancies, std::vector<std::string> labels = {})
      : n_(n), discrepancies_(std::move(discrepancies)), labels_(std::move(labels)) {
    if (n_ < 0) throw Error(ErrorCode::InvalidPair, "negative dimension");
    if (discrepancies_.size() > static_cast<std::size_t>(kMaxDivisors))
      throw Error(ErrorCode::InvalidPair, "too many exceptional divisors");
    if (labels_.empty())
      for (std::size_t j = 0; j < discrepancies_.size(); ++j) labels_.push_back("E" + std::to_string(j));
    if (labels_.size() != discrepancies_.size()) throw Error(ErrorCode::InvalidPair, "label count mismatch");
    for (const auto& a : discrepancies_)
      if (a <= Rat(-1)) throw Error(ErrorCode::InvalidPair, "discrepancy " + a.to_short_string() + " is not > -1 (not KLT)");
    const Subset all = discrepancies_.empty() ? 0 : (Subset{1} << discrepancies_.size()) - 1;
    for (auto& [mask, cls] : strata) {
      if (cls.is_zero()) continue;
      if ((mask & ~all) != 0) throw Error(ErrorCode::InvalidPair, "stratum refers to a missing divisor");
      const int size = subset_size(mask);
      if (size > n_ || cls.degree() > 2L * (n_ - size))
        throw Error(ErrorCode::InvalidPair, "stratum class too large for its dimension");
      strata_.emplace(mask, std::move(cls));
    }
    if (!strata_.contains(0)) throw Error(ErrorCode::InvalidPair, "resolution class must be nonzero");
  }

  int n() const { return n_; }
  const StrataMap& strata() const { return strata_; }
  const std::vector<Rat>& discrepancies() const { return discrepancies_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const DiscrepancyData&, const DiscrepancyData&) = default;

 private:
  int n_;
  StrataMap strata_;
  std::vector<Rat> discrepancies_;
  std::vector<std::string> labels_;
};

/// Motivic strata sum
///   sum_J L^(|J|-n) prod_{j in J} (1 - L^(b_j)) / (L^(1+b_j) - 1) [D_J]
/// realized in t with L = t^2, returned in normal form.
inline RatFunc strata_motivic_sum(int n, const StrataMap& strata, const std::vector<Rat>& exponents) {
  long grain = 1;
  for (const auto& b : exponents) {
    if (b == Rat(-1)) throw Error(ErrorCode::PoleInSpecialization, "1 + b_j = 0 gives a zero denominator");
    grain = lcm_long(grain, (Rat(2) * b).denominator().get_si());
  }
  // In y = t^(1/grain): L = y^(2 grain), L^b = y^u with u = 2 grain b.
  struct Factor {
    GradedPoly numerator;  // in t
    long order;            // denominator y^order - 1
  };
  std::vector<std::optional<Factor>> factors;
  for (const auto& b : exponents) {
    const long u = (Rat(2 * grain) * b).to_long();
    if (u == 0) {
      factors.emplace_back(std::nullopt);  // (1 - 1) / (L - 1) = 0
      continue;
    }
    const long k = 2 * grain + u;
    GradedPoly top = GradedPoly(1) - GradedPoly::q_power(Rat(u, grain));
    if (k > 0) {
      factors.push_back(Factor{std::move(top), k});
    } else {
      // 1 / (y^k - 1) = -y^|k| / (y^|k| - 1)
      factors.push_back(Factor{-(top.shifted(Rat(-k, grain))), -k});
    }
  }
  std::vector<CyclotomicTerm> terms;
  for (const auto& [mask, cls] : strata) {
    CyclotomicTerm term{cls.poincare().shifted(Rat(2L * (subset_size(mask) - n))), {}};
    bool vanishes = false;
    for (int j : subset_indices(mask)) {
      const auto& f = factors[static_cast<std::size_t>(j)];
      if (!f) {
        vanishes = true;
        break;
      }
      term.numerator *= f->numerator;
      term.denominator_orders.push_back(f->order);
    }
    if (!vanishes) terms.push_back(std::move(term));
  }
  return sum_cyclotomic_fractions(terms, grain);
}

/// Z(X, D; T) at T = L^(-a); for a = 1/d this is F_d(X, D).
inline RatFunc zeta_evaluate(const SncPair& pair, const Rat& a) {
  if (a.sign() < 0) throw Error(ErrorCode::InvalidArgument, "specialization exponent must be >= 0");
  std::vector<Rat> exponents;
  for (const auto& div : pair.divisors()) {
    Rat b = a * Rat(div.mult);
    if (b == Rat(-1))
      throw Error(ErrorCode::PoleInSpecialization, "1 + a*m = 0 for divisor " + div.label);
    exponents.push_back(std::move(b));
  }
  return strata_motivic_sum(pair.n(), pair.strata(), exponents);
}

inline RatFunc motivic_F_d(const SncPair& pair) { return zeta_evaluate(pair, Rat(1, pair.d())); }

/// lim_{t -> 1} t^(2n) F_d(X, D). Agrees with chi_d when strata have no odd
/// cohomology (P_1 = P_{-1}).
inline Rat specialization_limit(const SncPair& pair) {
  return ratfunc_limit_at_one(RatFunc(GradedPoly::q_power(Rat(2L * pair.n()))) * motivic_F_d(pair));
}

inline bool has_even_cohomology(const SncPair& pair) {
  for (const auto& [mask, cls] : pair.strata())
    for (const auto& [e, c] : cls.poincare().terms())
      if (e % 2 != 0) return false;
  return true;
}

/// Gorenstein volume mu^Gor in t with L = t^2.
inline RatFunc motivic_volume(const DiscrepancyData& disc) {
  return strata_motivic_sum(disc.n(), disc.strata(), disc.discrepancies());
}

struct StringyReport {
  std::optional<GradedPoly> stringy_poincare;  // absent when NonPolynomial
  RatFunc realization;                          // t^(2n) mu^Gor, always present
  std::optional<Rat> chi;
  std::optional<Rat> chi_prime;
  std::optional<Rat> chi_double_prime;

  bool is_polynomial() const { return stringy_poincare.has_value(); }
};

inline StringyReport stringy_invariants(const DiscrepancyData& disc) {
  StringyReport report;
  report.realization = RatFunc(GradedPoly::q_power(Rat(2L * disc.n()))) * motivic_volume(disc);
  if (!report.realization.is_polynomial() || !report.realization.num().has_integer_exponents()) return report;
  const GradedPoly& p = report.realization.num();
  report.stringy_poincare = p;
  const auto v = poly_eval_derivatives(p, Rat(-1), 2);
  const long n = disc.n();
  report.chi = v[0];
  report.chi_prime = -v[1];
  report.chi_double_prime = v[2] - Rat(n * n) * v[0];
  return report;
}

/// x^shift prod_j (1 - x^(m_j/d)) / (x^(1 + m_j/d) - 1) as a rational function of x.
inline RatFunc motivic_weight_function(const std::vector<long>& mults, long d, const Rat& shift) {
  std::vector<Rat> exponents;
  for (long m : mults) exponents.emplace_back(m, d);
  // Reuse the strata sum on a single stratum; it works in t with L = t^2, so
  // substitute back x = L.
  const int size = static_cast<int>(mults.size());
  StrataMap one{{size == 0 ? 0 : (Subset{1} << size) - 1, MotClass::point()}};
  RatFunc in_t = strata_motivic_sum(size, one, exponents);  // L^(|J|-|J|) = 1
  auto to_x = [](const GradedPoly& p) { return p.substitute_power(Rat(1, 2)); };
  return RatFunc(GradedPoly::q_power(shift)) * RatFunc::from_normalized(to_x(in_t.num()), to_x(in_t.den()));
}

struct DetLineExponent {
  Subset stratum;
  Rat lambda_exp;           // w^J_d from the product formula
  Rat eta_exp;              // (|J| - n) w^J_d
  Rat lambda_from_limit;    // f(1)
  Rat eta_from_derivative;  // 2 f'(1)

  bool consistent() const { return lambda_exp == lambda_from_limit && eta_exp == eta_from_derivative; }
};

/// Exponents of lambda_dR(H(D_J)) and eta(H(D_J)) in the determinant line of
/// the Hodge realization of F_d(X, D) L^(n/2).
inline std::vector<DetLineExponent> det_line_exponents(const SncPair& pair) {
  std::vector<DetLineExponent> out;
  for (const auto& [mask, cls] : pair.strata()) {
    std::vector<long> mults;
    for (int j : subset_indices(mask)) mults.push_back(pair.mult(j));
    const Rat w = weight(mults, pair.d());
    const int size = subset_size(mask);
    const RatFunc f = motivic_weight_function(mults, pair.d(), Rat(2L * size - pair.n(), 2));
    out.push_back({mask, w, Rat(size - pair.n()) * w, ratfunc_limit_at_one(f), Rat(2) * ratfunc_derivative_at_one(f)});
  }
  return out;
}

using BlowupFn = std::function<BlowupRecord(const SncPair&, const CenterDescriptor&)>;

inline BlowupRecord default_blow_up(const SncPair& pair, const CenterDescriptor& c) { return blow_up(pair, c); }

struct CovCertificate {
  RatFunc lhs;
  RatFunc rhs;
  bool equal = false;
};

/// F_d(X, D) = F_d(X', f^*D + d K_{X'/X}) for an effective D.
inline CovCertificate change_of_variables_check(const SncPair& pair, const CenterDescriptor& c,
                                                const BlowupFn& blow = default_blow_up) {
  for (const auto& div : pair.divisors())
    if (div.mult < 0)
      throw Error(ErrorCode::InvalidArgument, "change of variables needs an effective divisor; " + div.label +
                                                  " has multiplicity " + std::to_string(div.mult));
  CovCertificate cert;
  cert.lhs = motivic_F_d(pair);
  const BlowupRecord rec = blow(pair, c);
  cert.rhs = motivic_F_d(rec.new_pair);
  cert.equal = cert.lhs == cert.rhs;
  return cert;
}

}  // namespace snc
