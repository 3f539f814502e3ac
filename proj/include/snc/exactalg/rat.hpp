#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "snc/error.hpp"

namespace snc {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(int value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(const mpz_class& value) : q_(value) {}
  explicit Rat(const mpq_class& value) : q_(value) { q_.canonicalize(); }

  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorCode::ZeroDenominator, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}

  /// Accepts "p", "-p", "p/q".
  static Rat parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rat(mpz_class(s, 10));
      return Rat(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "not a rational number: '" + s + "'");
    }
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Value as a machine integer; throws if not integral or out of range.
  long to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
      throw Error(ErrorCode::InvalidArgument, "rational " + to_string() + " is not a machine integer");
    return q_.get_num().get_si();
  }

  /// Serialized as "p/q" with q > 0, also for integers.
  std::string to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  /// Shorter form for diagnostics: "p" when integral.
  std::string to_short_string() const { return q_.get_str(); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_short_string(); }

 private:
  mpq_class q_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

/// r^e for any integer e (r must be nonzero when e < 0).
inline Rat pow(const Rat& r, long e) {
  if (e < 0) {
    if (r.is_zero()) throw Error(ErrorCode::ZeroDenominator, "negative power of zero");
    return pow(Rat(1) / r, -e);
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(e));
  return Rat(num, den);
}

/// The rational k-th root of a non-negative rational, if it exists.
inline std::optional<Rat> rational_root(const Rat& r, unsigned long k) {
  if (k == 0 || r.sign() < 0) return std::nullopt;
  if (k == 1) return r;
  mpz_class num, den;
  int exact_num = mpz_root(num.get_mpz_t(), r.numerator().get_mpz_t(), k);
  int exact_den = mpz_root(den.get_mpz_t(), r.denominator().get_mpz_t(), k);
  if (!exact_num || !exact_den) return std::nullopt;
  return Rat(num, den);
}

inline long gcd_long(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

/// floor(a / b) for b > 0.
inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace snc
