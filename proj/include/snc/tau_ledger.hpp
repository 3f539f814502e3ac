#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "snc/motivic.hpp"

namespace snc {

/// Formal atoms of the BCOV calculus. Analytic quantities are never
/// evaluated; identities are checked as linear relations among atoms.
struct TauAtom {
  enum class Kind { TauP1, TauP2, Opaque, VolLog };
  Kind kind = Kind::TauP1;
  std::string label;

  static TauAtom p1() { return {Kind::TauP1, {}}; }
  static TauAtom p2() { return {Kind::TauP2, {}}; }
  static TauAtom opaque(std::string label) { return {Kind::Opaque, std::move(label)}; }
  static TauAtom vol_log(std::string label) { return {Kind::VolLog, std::move(label)}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::TauP1: return "tau(CP1)";
      case Kind::TauP2: return "tau(CP2)";
      case Kind::Opaque: return "tau[" + label + "]";
      case Kind::VolLog: return "logvol[" + label + "]";
    }
    return "?";
  }

  friend auto operator<=>(const TauAtom&, const TauAtom&) = default;
  friend bool operator==(const TauAtom&, const TauAtom&) = default;
};

/// Finite Q-linear combination of atoms plus a rational constant.
class TauExpr {
 public:
  TauExpr() = default;
  TauExpr(const Rat& constant) : constant_(constant) {}  // NOLINT(google-explicit-constructor)
  TauExpr(const TauAtom& atom, const Rat& coef = Rat(1)) { add(atom, coef); }

  static TauExpr p1(const Rat& coef = Rat(1)) { return {TauAtom::p1(), coef}; }
  static TauExpr p2(const Rat& coef = Rat(1)) { return {TauAtom::p2(), coef}; }

  const std::map<TauAtom, Rat>& coefficients() const { return coeffs_; }
  const Rat& constant() const { return constant_; }
  Rat coefficient(const TauAtom& atom) const {
    auto it = coeffs_.find(atom);
    return it == coeffs_.end() ? Rat(0) : it->second;
  }
  bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }

  TauExpr& add(const TauAtom& atom, const Rat& coef) {
    if (coef.is_zero()) return *this;
    auto [it, inserted] = coeffs_.try_emplace(atom, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
    return *this;
  }

  TauExpr& operator+=(const TauExpr& o) {
    for (const auto& [atom, c] : o.coeffs_) add(atom, c);
    constant_ += o.constant_;
    return *this;
  }
  TauExpr& operator-=(const TauExpr& o) { return *this += -o; }
  TauExpr operator-() const { return Rat(-1) * *this; }

  friend TauExpr operator+(TauExpr a, const TauExpr& b) { return a += b; }
  friend TauExpr operator-(TauExpr a, const TauExpr& b) { return a -= b; }
  friend TauExpr operator*(const Rat& s, const TauExpr& e) {
    TauExpr out;
    if (s.is_zero()) return out;
    for (const auto& [atom, c] : e.coeffs_) out.coeffs_.emplace(atom, s * c);
    out.constant_ = s * e.constant_;
    return out;
  }
  friend bool operator==(const TauExpr&, const TauExpr&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [atom, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")*" << atom.to_string();
    }
    if (!constant_.is_zero()) os << (first ? "" : " + ") << constant_;
    return os.str();
  }

 private:
  std::map<TauAtom, Rat> coeffs_;
  Rat constant_{0};
};

/// tau_d(CP^1, gamma_m) = tau(CP^1) for every m.
inline TauExpr tau_p1_eval(long m, long d) {
  if (m < 0 || d <= 0) throw Error(ErrorCode::InvalidArgument, "tau_p1_eval needs m >= 0, d > 0");
  return TauExpr::p1();
}

/// tau_d(CP^2, gamma_{m1,m2}) = tau(CP^2)
///   + (3/2 - m1/(m1+d) - m2/(m2+d) - (m1+m2+3d)/(m1+m2+2d)) tau(CP^1)
inline TauExpr tau_p2_eval(long m1, long m2, long d) {
  if (m1 < 0 || m2 < 0 || d <= 0) throw Error(ErrorCode::InvalidArgument, "tau_p2_eval needs m >= 0, d > 0");
  const Rat c = Rat(3, 2) - Rat(m1, m1 + d) - Rat(m2, m2 + d) - Rat(m1 + m2 + 3 * d, m1 + m2 + 2 * d);
  return TauExpr::p2() + TauExpr::p1(c);
}

/// -1/2 chi'_d tau(CP^1) + chi''_d (-1/2 tau(CP^2) + 3/4 tau(CP^1))
inline TauExpr normalization_term(const SncPair& pair) {
  const Rat chi1 = phi_d(pair, InvariantKind::chi_prime());
  const Rat chi2 = phi_d(pair, InvariantKind::chi_double_prime());
  return TauExpr::p1(Rat(-1, 2) * chi1) + chi2 * (TauExpr::p2(Rat(-1, 2)) + TauExpr::p1(Rat(3, 4)));
}

/// tau_d of (CP^n, gamma_{m_1..m_s}), where tau^bir vanishes.
inline TauExpr tau_projective_normal_form(int n, long d, const std::vector<long>& mults) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "projective normal form needs n >= 1");
  for (long m : mults)
    if (m < 0) throw Error(ErrorCode::InvalidArgument, "gamma-model multiplicities must be >= 0");
  return -normalization_term(gamma_model_pair(n, d, mults));
}

inline TauExpr tau_bir(const SncPair& pair, const TauExpr& tau_value) { return tau_value + normalization_term(pair); }

struct TauCertificate {
  TauExpr residual;
  bool ok = false;
};

/// Blow-up functional equation for tau_d, with tau_d of each side given by
/// its normal form:
///   tau(X') - tau(X) = chi_d(E, D_E) tau_d(CP^1, gamma_{m_E})
///                      - chi_d(Y, D_Y) tau_d(CP^r, gamma_{r, m_S})
inline TauCertificate verify_blowup_functional_equation(const SncPair& pair, const CenterDescriptor& c,
                                                        const BlowupFn& blow = default_blow_up) {
  if (!pair.d_canonical()) throw Error(ErrorCode::NotDCanonical, "pair carries no d-canonical certificate");
  validate_center(pair, c);
  std::vector<long> center_mults;
  for (int j : subset_indices(c.contains)) {
    if (pair.mult(j) <= 0) throw Error(ErrorCode::NegativeMultAtCenter, "center lies in a divisor with m <= 0");
    center_mults.push_back(pair.mult(j));
  }
  const BlowupRecord rec = blow(pair, c);
  const TauExpr tau_x = -normalization_term(pair);
  const TauExpr tau_x_prime = -normalization_term(rec.new_pair);
  const Rat chi_e = chi_d(restrict_to_divisor(rec.new_pair, rec.exceptional_index));
  const Rat chi_y = chi_d(center_pair(pair, c));
  const TauExpr rhs = chi_e * tau_p1_eval(rec.m_e, pair.d()) -
                      chi_y * tau_projective_normal_form(c.r, pair.d(), center_mults);
  TauCertificate cert;
  cert.residual = tau_x_prime - tau_x - rhs;
  cert.ok = cert.residual.is_zero();
  return cert;
}

/// Projective-bundle functional equation tau(X) = chi_d(Y) tau(Z).
inline TauCertificate verify_bundle_functional_equation(const SncPair& base, const SncPair& fiber) {
  if (base.d() != fiber.d()) throw Error(ErrorCode::MismatchedD, "base and fiber use different d");
  if (!fiber.d_canonical()) throw Error(ErrorCode::NotDCanonical, "fiber is not d-canonical");
  if (!fiber.model()) throw Error(ErrorCode::NoModelTag, "fiber must be a coordinate model");
  const SncPair total = fibration_pair(base, fiber);
  TauCertificate cert;
  cert.residual = -normalization_term(total) - chi_d(base) * (-normalization_term(fiber));
  cert.ok = cert.residual.is_zero();
  return cert;
}

/// Stringy BCOV invariant of a KLT Calabi-Yau variety as a formal expression:
///   tau[X] + chi/12 logvol[X] + 1/2 chi' tau(CP^1) + chi'' (1/2 tau(CP^2) - 3/4 tau(CP^1))
inline TauExpr bcov_klt_symbolic(const DiscrepancyData& disc, const std::string& opaque_label) {
  const StringyReport s = stringy_invariants(disc);
  if (!s.is_polynomial())
    throw Error(ErrorCode::NonPolynomialStringy, "stringy realization is not a polynomial: " + s.realization.to_string("t"));
  TauExpr out(TauAtom::opaque(opaque_label));
  out.add(TauAtom::vol_log(opaque_label), *s.chi / Rat(12));
  out += TauExpr::p1(Rat(1, 2) * *s.chi_prime);
  out += *s.chi_double_prime * (TauExpr::p2(Rat(1, 2)) + TauExpr::p1(Rat(-3, 4)));
  return out;
}

}  // namespace snc
