#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "snc/pairs/snc_pair.hpp"

namespace snc::corpus {

struct Limits {
  int n_max = 4;
  long d_max = 3;
  long m_max = 5;
  int chain_len = 3;
};

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// A d-canonical model (CP^n, gamma_{m_1..m_s}) with 0 <= m_i <= m_max.
inline SncPair random_gamma_model(std::mt19937_64& rng, const Limits& lim) {
  const int n = static_cast<int>(uniform(rng, 1, lim.n_max));
  const long d = uniform(rng, 1, lim.d_max);
  const long s = uniform(rng, 0, n);
  std::vector<long> mults;
  for (long i = 0; i < s; ++i) mults.push_back(uniform(rng, 0, lim.m_max));
  return gamma_model_pair(n, d, mults);
}

/// CP^n with an effective divisor on a random set of coordinate hyperplanes.
inline SncPair random_effective_pair(std::mt19937_64& rng, const Limits& lim) {
  const int n = static_cast<int>(uniform(rng, 1, lim.n_max));
  const long d = uniform(rng, 1, lim.d_max);
  std::vector<std::pair<int, long>> assigned;
  for (int c = 0; c <= n; ++c)
    if (uniform(rng, 0, 1) == 1) assigned.emplace_back(c, uniform(rng, 1, lim.m_max));
  return projective_space_pair(n, d, assigned);
}

/// A center admissible for blow_up: every divisor containing it has positive
/// multiplicity and the exceptional multiplicity is nonzero.
inline std::optional<CenterDescriptor> random_center(std::mt19937_64& rng, const SncPair& pair, int attempts = 32) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::optional<CenterDescriptor> c;
    if (pair.model() && uniform(rng, 0, 1) == 1) {
      const int n = pair.n();
      const int r = static_cast<int>(uniform(rng, 1, n));
      std::vector<int> coords(static_cast<std::size_t>(n + 1));
      for (int i = 0; i <= n; ++i) coords[static_cast<std::size_t>(i)] = i;
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(static_cast<std::size_t>(r));
      std::sort(coords.begin(), coords.end());
      c = coordinate_center(pair, coords);
    } else {
      std::vector<Subset> candidates;
      for (const auto& [mask, cls] : pair.strata())
        if (mask != 0 && subset_size(mask) < pair.n() + 1) candidates.push_back(mask);
      if (candidates.empty()) continue;
      const Subset j0 = candidates[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(candidates.size()) - 1))];
      c = stratum_center(pair, j0);
    }
    bool ok = !(c->r == 1 && c->contains == 0);
    for (int j : subset_indices(c->contains)) ok = ok && pair.mult(j) > 0;
    if (ok) return c;
  }
  return std::nullopt;
}

}  // namespace snc::corpus
