#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "snc/exactalg/dense_poly.hpp"
#include "snc/exactalg/ratfunc.hpp"

namespace snc {

/// The n-th cyclotomic polynomial Phi_n(y), n >= 1.
inline const detail::Dense& cyclotomic(long n) {
  if (n <= 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<long, detail::Dense> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // y^n - 1 = prod_{k | n} Phi_k(y)
  detail::Dense poly(static_cast<std::size_t>(n + 1), Rat(0));
  poly[0] = Rat(-1);
  poly[static_cast<std::size_t>(n)] = Rat(1);
  for (long k = 1; k < n; ++k)
    if (n % k == 0) poly = detail::divmod(std::move(poly), cyclotomic(k)).first;
  std::lock_guard<std::mutex> lock(mutex);
  // map nodes are stable, so returned references stay valid
  return cache.emplace(n, std::move(poly)).first->second;
}

/// One summand numerator / prod_k (y^k - 1), with y = q^(1/grain) and every
/// order k positive.
struct CyclotomicTerm {
  GradedPoly numerator;
  std::vector<long> denominator_orders;
};

/// Sums fractions whose denominators are products of (y^k - 1) and returns
/// the normal form. The common denominator is assembled as a product of
/// cyclotomic polynomials, so cancellation reduces to exact division by
/// each Phi_n in turn and no general gcd is needed.
inline RatFunc sum_cyclotomic_fractions(const std::vector<CyclotomicTerm>& terms, long grain) {
  using Counts = std::map<long, int>;
  auto factor_counts = [](const std::vector<long>& orders) {
    Counts counts;
    for (long k : orders) {
      if (k <= 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be positive");
      for (long n = 1; n <= k; ++n)
        if (k % n == 0) ++counts[n];
    }
    return counts;
  };

  std::vector<Counts> per_term;
  per_term.reserve(terms.size());
  Counts common;
  for (const auto& term : terms) {
    per_term.push_back(term.numerator.is_zero() ? Counts{} : factor_counts(term.denominator_orders));
    for (const auto& [n, c] : per_term.back()) common[n] = std::max(common[n], c);
  }

  auto phi_in_q = [grain](long n) { return detail::from_dense(cyclotomic(n), grain, 0); };

  GradedPoly numerator;
  std::map<Counts, GradedPoly> multiplier_cache;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].numerator.is_zero()) continue;
    Counts missing;
    for (const auto& [n, c] : common) {
      auto it = per_term[i].find(n);
      int have = it == per_term[i].end() ? 0 : it->second;
      if (c > have) missing[n] = c - have;
    }
    auto [it, inserted] = multiplier_cache.try_emplace(missing);
    if (inserted) {
      GradedPoly m(1);
      for (const auto& [n, c] : missing)
        for (int j = 0; j < c; ++j) m *= phi_in_q(n);
      it->second = std::move(m);
    }
    numerator += terms[i].numerator * it->second;
  }

  if (numerator.is_zero()) return RatFunc();

  if (grain % numerator.grain() != 0) {
    // Phi_n(y) can split once y is a proper power of the working variable
    GradedPoly denominator(1);
    for (const auto& [n, c] : common)
      for (int j = 0; j < c; ++j) denominator *= phi_in_q(n);
    return ratfunc_reduce(numerator, denominator);
  }

  long shift = 0;
  detail::Dense num = detail::to_dense(numerator, grain, shift);
  GradedPoly denominator(1);
  for (auto [n, c] : common) {
    detail::Dense quotient;
    while (c > 0 && detail::try_exact_div(num, cyclotomic(n), quotient)) {
      num = std::move(quotient);
      --c;
    }
    for (int j = 0; j < c; ++j) denominator *= phi_in_q(n);
  }
  return RatFunc::from_normalized(detail::from_dense(num, grain, shift), std::move(denominator));
}

}  // namespace snc
