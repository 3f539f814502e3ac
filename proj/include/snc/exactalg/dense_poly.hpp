#pragma once

// Dense univariate polynomials over Q, used as the working representation for
// division and gcd. Index i holds the coefficient of y^i; no trailing zeros.

#include <utility>
#include <vector>

#include "snc/exactalg/graded_poly.hpp"

namespace snc::detail {

using Dense = std::vector<Rat>;

inline void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline long degree(const Dense& p) { return static_cast<long>(p.size()) - 1; }

/// Splits p (at the given grain) into y^shift * dense(y) with dense(0) != 0.
inline Dense to_dense(const GradedPoly& p, long grain, long& shift) {
  const auto terms = p.terms_at_grain(grain);
  if (terms.empty()) {
    shift = 0;
    return {};
  }
  shift = terms.begin()->first;
  Dense out(static_cast<std::size_t>(terms.rbegin()->first - shift + 1), Rat(0));
  for (const auto& [e, c] : terms) out[static_cast<std::size_t>(e - shift)] = c;
  return out;
}

inline GradedPoly from_dense(const Dense& p, long grain, long shift) {
  GradedPoly::TermMap terms;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_zero()) terms.emplace_hint(terms.end(), static_cast<long>(i) + shift, p[i]);
  return GradedPoly(grain, std::move(terms));
}

inline Dense mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Dense, Dense> divmod(Dense a, const Dense& b) {
  if (b.empty()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {Dense{}, a};
  Dense quot(a.size() - b.size() + 1, Rat(0));
  const Rat lead_inv = Rat(1) / b.back();
  const bool unit_lead = b.back() == Rat(1);
  for (long i = degree(a); i >= degree(b); --i) {
    const Rat& top = a[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    Rat f = unit_lead ? top : top * lead_inv;
    const long off = i - degree(b);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      a[static_cast<std::size_t>(off) + j] -= f * b[j];
    }
    quot[static_cast<std::size_t>(off)] = std::move(f);
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(quot);
  return {std::move(quot), std::move(a)};
}

inline Dense make_monic(Dense p) {
  trim(p);
  if (p.empty() || p.back() == Rat(1)) return p;
  const Rat inv = Rat(1) / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

/// Monic gcd over Q (zero only if both inputs are zero).
inline Dense gcd(Dense a, Dense b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (b.size() == 1) return Dense{Rat(1)};
    auto r = divmod(std::move(a), b).second;
    a = std::move(b);
    b = make_monic(std::move(r));
  }
  return make_monic(std::move(a));
}

/// a / b when b divides a, otherwise nullopt-like empty flag via bool.
inline bool try_exact_div(const Dense& a, const Dense& b, Dense& quotient) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) return false;
  quotient = std::move(q);
  return true;
}

inline Rat sum_coefficients(const Dense& p) {
  Rat s(0);
  for (const auto& c : p) s += c;
  return s;
}

}  // namespace snc::detail
