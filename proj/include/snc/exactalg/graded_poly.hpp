#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "snc/exactalg/rat.hpp"

namespace snc {

/// Laurent polynomial in one formal variable q with rational exponents of
/// bounded denominator. An exponent key e stands for q^(e/grain).
///
/// The representation is canonical: zero coefficients are never stored and
/// the grain is the smallest one able to express every exponent, so two
/// polynomials are equal exactly when their grains and term maps are.
class GradedPoly {
 public:
  using TermMap = std::map<long, Rat>;

  GradedPoly() = default;
  GradedPoly(long constant) : GradedPoly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)
  GradedPoly(const Rat& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.emplace(0, constant);
  }

  GradedPoly(long grain, TermMap terms) : grain_(grain), terms_(std::move(terms)) {
    if (grain_ <= 0) throw Error(ErrorCode::InvalidArgument, "grain must be positive");
    canonicalize();
  }

  /// coef * q^exponent
  static GradedPoly monomial(const Rat& coef, const Rat& exponent) {
    long grain = exponent.denominator().get_si();
    return GradedPoly(grain, TermMap{{exponent.numerator().get_si(), coef}});
  }

  static GradedPoly q_power(const Rat& exponent) { return monomial(Rat(1), exponent); }

  /// sum_i coeffs[i] q^i
  static GradedPoly from_coefficients(const std::vector<Rat>& coeffs) {
    TermMap terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) terms.emplace(static_cast<long>(i), coeffs[i]);
    return GradedPoly(1, std::move(terms));
  }

  long grain() const { return grain_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  bool has_integer_exponents() const { return grain_ == 1; }
  bool has_nonnegative_exponents() const { return terms_.empty() || terms_.begin()->first >= 0; }

  bool has_integer_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_integer(); });
  }

  /// Lowest and highest exponent as rationals; the zero polynomial has none.
  Rat low_exponent() const { return Rat(terms_.begin()->first, grain_); }
  Rat high_exponent() const { return Rat(terms_.rbegin()->first, grain_); }
  const Rat& leading_coefficient() const { return terms_.rbegin()->second; }
  const Rat& trailing_coefficient() const { return terms_.begin()->second; }

  Rat coefficient(const Rat& exponent) const {
    Rat scaled = exponent * Rat(grain_);
    if (!scaled.is_integer()) return Rat(0);
    auto it = terms_.find(scaled.to_long());
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// Term map re-expressed at a grain that is a multiple of grain().
  TermMap terms_at_grain(long grain) const {
    if (grain % grain_ != 0) throw Error(ErrorCode::InvalidArgument, "grain is not a multiple");
    long factor = grain / grain_;
    TermMap out;
    for (const auto& [e, c] : terms_) out.emplace_hint(out.end(), e * factor, c);
    return out;
  }

  GradedPoly operator-() const {
    GradedPoly out = *this;
    for (auto& kv : out.terms_) kv.second = -kv.second;
    return out;
  }

  friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
    long g = lcm_long(a.grain_, b.grain_);
    TermMap out = a.terms_at_grain(g);
    for (const auto& [e, c] : b.terms_at_grain(g)) out[e] += c;
    return GradedPoly(g, std::move(out));
  }
  friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return a + (-b); }

  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    long g = lcm_long(a.grain_, b.grain_);
    TermMap ta = a.terms_at_grain(g);
    TermMap tb = b.terms_at_grain(g);
    TermMap out;
    for (const auto& [ea, ca] : ta)
      for (const auto& [eb, cb] : tb) out[ea + eb] += ca * cb;
    return GradedPoly(g, std::move(out));
  }

  friend GradedPoly operator*(const Rat& s, const GradedPoly& p) {
    if (s.is_zero()) return {};
    GradedPoly out = p;
    for (auto& kv : out.terms_) kv.second *= s;
    return out;
  }
  friend GradedPoly operator*(const GradedPoly& p, const Rat& s) { return s * p; }

  GradedPoly& operator+=(const GradedPoly& o) { return *this = *this + o; }
  GradedPoly& operator-=(const GradedPoly& o) { return *this = *this - o; }
  GradedPoly& operator*=(const GradedPoly& o) { return *this = *this * o; }

  /// Multiply by q^exponent.
  GradedPoly shifted(const Rat& exponent) const { return *this * q_power(exponent); }

  /// p(q^factor) for a positive rational factor; the result must stay
  /// representable (it always is, the grain grows as needed).
  GradedPoly substitute_power(const Rat& factor) const {
    if (factor.sign() <= 0) throw Error(ErrorCode::InvalidArgument, "substitution factor must be positive");
    GradedPoly out;
    for (const auto& [e, c] : terms_) out += monomial(c, Rat(e, grain_) * factor);
    return out;
  }

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.grain_ == b.grain_ && a.terms_ == b.terms_;
  }

  std::string to_string(const std::string& var = "q") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rat coef = c;
      if (!first) {
        os << (coef.sign() < 0 ? " - " : " + ");
        coef = abs(coef);
      } else if (coef.sign() < 0) {
        os << "-";
        coef = abs(coef);
      }
      first = false;
      Rat ex(e, grain_);
      bool unit = coef == Rat(1);
      if (ex.is_zero()) {
        os << coef;
        continue;
      }
      if (!unit) os << coef << "*";
      os << var;
      if (ex != Rat(1)) os << "^" << (ex.is_integer() ? ex.to_short_string() : "(" + ex.to_short_string() + ")");
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const GradedPoly& p) { return os << p.to_string(); }

 private:
  void canonicalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero())
        it = terms_.erase(it);
      else
        ++it;
    }
    long g = grain_;
    for (const auto& kv : terms_) {
      g = gcd_long(g, kv.first);
      if (g == 1) break;
    }
    if (terms_.empty()) g = grain_;
    if (g > 1) {
      TermMap reduced;
      for (const auto& [e, c] : terms_) reduced.emplace_hint(reduced.end(), e / g, c);
      terms_ = std::move(reduced);
      grain_ /= g;
    }
    if (terms_.empty()) grain_ = 1;
  }

  long grain_ = 1;
  TermMap terms_;
};

namespace detail {

/// point^(num/den) for a rational point, if it is rational.
inline Rat rational_power(const Rat& point, long num, long den, ErrorCode fractional_negative) {
  long g = gcd_long(num, den);
  num /= g;
  den /= g;
  if (den == 1) return pow(point, num);
  if (point.sign() < 0) throw Error(fractional_negative, "fractional power of a negative point");
  if (point.is_zero()) {
    if (num > 0) return Rat(0);
    throw Error(ErrorCode::PoleAtZero, "negative power at zero");
  }
  auto root = rational_root(point, static_cast<unsigned long>(den));
  if (!root) throw Error(ErrorCode::NonRationalPower, "irrational power " + point.to_short_string() + "^(1/" + std::to_string(den) + ")");
  return pow(*root, num);
}

}  // namespace detail

/// [p(x), p'(x), ..., p^(order)(x)] at x = point, exactly.
///
/// Fractional exponents are allowed at positive points whenever the power is
/// rational; at negative points every exponent must be integral.
inline std::vector<Rat> poly_eval_derivatives(const GradedPoly& p, const Rat& point, unsigned order) {
  std::vector<Rat> out(order + 1, Rat(0));
  if (point.sign() < 0 && !p.has_integer_exponents())
    throw Error(ErrorCode::NonIntegerExponentAtNegativePoint,
                "evaluating " + p.to_string() + " at " + point.to_short_string());
  if (point.is_zero() && !p.has_nonnegative_exponents())
    throw Error(ErrorCode::PoleAtZero, "negative exponent evaluated at 0");
  const long k = p.grain();
  for (const auto& [e, c] : p.terms()) {
    // d^j/dx^j x^(e/k) = falling(e/k, j) x^(e/k - j)
    Rat falling(1);
    const Rat alpha(e, k);
    for (unsigned j = 0; j <= order; ++j) {
      if (falling.is_zero()) break;
      long num = e - static_cast<long>(j) * k;
      if (point.is_zero()) {
        if (num == 0) out[j] += c * falling;
        else if (num < 0) throw Error(ErrorCode::PoleAtZero, "derivative blows up at 0");
      } else {
        out[j] += c * falling * detail::rational_power(point, num, k, ErrorCode::NonIntegerExponentAtNegativePoint);
      }
      falling *= alpha - Rat(static_cast<long>(j));
    }
  }
  return out;
}

inline Rat evaluate(const GradedPoly& p, const Rat& point) { return poly_eval_derivatives(p, point, 0)[0]; }

}  // namespace snc
