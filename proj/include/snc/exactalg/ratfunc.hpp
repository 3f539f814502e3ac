#pragma once

#include <string>
#include <utility>

#include "snc/exactalg/dense_poly.hpp"
#include "snc/exactalg/graded_poly.hpp"

namespace snc {

/// Rational function num/den in one variable with fractional exponents.
///
/// Values are always normalized: q is treated as a unit, so the denominator
/// is an ordinary polynomial with nonzero constant term and leading
/// coefficient 1, coprime to the numerator. Equality is therefore equality of
/// the two components.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(GradedPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long constant) : RatFunc(GradedPoly(constant)) {}   // NOLINT(google-explicit-constructor)
  RatFunc(const Rat& constant) : RatFunc(GradedPoly(constant)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const GradedPoly& num, const GradedPoly& den);

  /// Wraps a pair that is already in normal form; the caller vouches for it.
  static RatFunc from_normalized(GradedPoly num, GradedPoly den) {
    RatFunc f;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    return f;
  }

  const GradedPoly& num() const { return num_; }
  const GradedPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == GradedPoly(1); }

  RatFunc operator-() const { return from_normalized(-num_, den_); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    // a monomial is a unit times a constant, so the product stays reduced
    if (a.is_polynomial() && a.num_.size() == 1) return from_normalized(a.num_ * b.num_, b.den_);
    if (b.is_polynomial() && b.num_.size() == 1) return from_normalized(a.num_ * b.num_, a.den_);
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by the zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string(const std::string& var = "q") const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

 private:
  GradedPoly num_;
  GradedPoly den_;
};

/// Normal form of num/den: coprime, monic denominator with nonzero constant
/// term, all monomial factors moved to the numerator.
inline RatFunc ratfunc_reduce(const GradedPoly& num, const GradedPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) return RatFunc::from_normalized(GradedPoly(), GradedPoly(1));
  const long grain = lcm_long(num.grain(), den.grain());
  long num_shift = 0;
  long den_shift = 0;
  detail::Dense n = detail::to_dense(num, grain, num_shift);
  detail::Dense d = detail::to_dense(den, grain, den_shift);
  if (d.size() > 1 && n.size() > 1) {
    detail::Dense g = detail::gcd(n, d);
    if (g.size() > 1) {
      n = detail::divmod(std::move(n), g).first;
      d = detail::divmod(std::move(d), g).first;
    }
  }
  const Rat lead = d.back();
  if (lead != Rat(1)) {
    const Rat inv = Rat(1) / lead;
    for (auto& c : n) c *= inv;
    for (auto& c : d) c *= inv;
  }
  return RatFunc::from_normalized(detail::from_dense(n, grain, num_shift - den_shift),
                                  detail::from_dense(d, grain, 0));
}

inline RatFunc ratfunc_reduce(const RatFunc& f) { return ratfunc_reduce(f.num(), f.den()); }

inline RatFunc::RatFunc(const GradedPoly& num, const GradedPoly& den) : RatFunc(ratfunc_reduce(num, den)) {}

/// lim_{q -> 1} f(q), exact.
inline Rat ratfunc_limit_at_one(const RatFunc& f) {
  const RatFunc g = ratfunc_reduce(f);
  const Rat den_at_one = evaluate(g.den(), Rat(1));
  if (den_at_one.is_zero()) throw Error(ErrorCode::PoleAtOne, "pole at q = 1: " + g.to_string());
  return evaluate(g.num(), Rat(1)) / den_at_one;
}

/// f'(1) for f without a pole at 1.
inline Rat ratfunc_derivative_at_one(const RatFunc& f) {
  const RatFunc g = ratfunc_reduce(f);
  const auto n = poly_eval_derivatives(g.num(), Rat(1), 1);
  const auto d = poly_eval_derivatives(g.den(), Rat(1), 1);
  if (d[0].is_zero()) throw Error(ErrorCode::PoleAtOne, "pole at q = 1: " + g.to_string());
  return (n[1] * d[0] - n[0] * d[1]) / (d[0] * d[0]);
}

}  // namespace snc
