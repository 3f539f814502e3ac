#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "snc/exactalg/graded_poly.hpp"

namespace snc {

/// Subsets of divisor indices as bitmasks; bit j set means D_j is in J.
using Subset = std::uint64_t;

constexpr int kMaxDivisors = 62;

inline int subset_size(Subset s) { return std::popcount(s); }
constexpr Subset singleton(int j) { return Subset{1} << j; }
constexpr bool contains(Subset s, int j) { return (s >> j) & 1U; }

inline std::vector<int> subset_indices(Subset s) {
  std::vector<int> out;
  for (int j = 0; s != 0; ++j, s >>= 1)
    if (s & 1U) out.push_back(j);
  return out;
}

inline Subset subset_from_indices(const std::vector<int>& indices) {
  Subset s = 0;
  for (int j : indices) s |= singleton(j);
  return s;
}

/// Class of a variety in K_0(Var) seen through its Poincare polynomial in t.
/// The zero polynomial is the empty variety.
class MotClass {
 public:
  MotClass() = default;
  explicit MotClass(GradedPoly poincare) : poincare_(std::move(poincare)) {
    if (!poincare_.has_integer_exponents() || !poincare_.has_nonnegative_exponents() ||
        !poincare_.has_integer_coefficients())
      throw Error(ErrorCode::InvalidArgument, "class must be an integer polynomial in t: " + poincare_.to_string("t"));
  }

  /// sum_k betti[k] t^k
  static MotClass from_betti(const std::vector<long>& betti) {
    std::vector<Rat> coeffs(betti.begin(), betti.end());
    return MotClass(GradedPoly::from_coefficients(coeffs));
  }

  static MotClass point() { return MotClass(GradedPoly(1)); }

  /// [CP^k] = 1 + t^2 + ... + t^(2k); zero for k < 0.
  static MotClass projective_space(long k) {
    GradedPoly::TermMap terms;
    for (long i = 0; i <= k; ++i) terms.emplace(2 * i, Rat(1));
    return MotClass(GradedPoly(1, std::move(terms)));
  }

  const GradedPoly& poincare() const { return poincare_; }
  bool is_zero() const { return poincare_.is_zero(); }
  long degree() const { return is_zero() ? -1 : poincare_.high_exponent().to_long(); }

  /// t^(2 dim) P(1/t) = P(t), i.e. Poincare duality for a compact manifold
  /// of complex dimension dim.
  bool is_palindromic(long dim) const {
    for (const auto& [e, c] : poincare_.terms()) {
      if (e > 2 * dim) return false;
      if (poincare_.coefficient(Rat(2 * dim - e)) != c) return false;
    }
    return true;
  }

  std::vector<long> betti() const {
    std::vector<long> out(static_cast<std::size_t>(degree() + 1), 0);
    for (const auto& [e, c] : poincare_.terms()) out[static_cast<std::size_t>(e)] = c.to_long();
    return out;
  }

  friend MotClass operator+(const MotClass& a, const MotClass& b) { return MotClass(a.poincare_ + b.poincare_); }
  friend MotClass operator-(const MotClass& a, const MotClass& b) { return MotClass(a.poincare_ - b.poincare_); }
  friend MotClass operator*(const MotClass& a, const MotClass& b) { return MotClass(a.poincare_ * b.poincare_); }
  friend bool operator==(const MotClass& a, const MotClass& b) { return a.poincare_ == b.poincare_; }

  std::string to_string() const { return poincare_.to_string("t"); }

 private:
  GradedPoly poincare_;
};

}  // namespace snc
