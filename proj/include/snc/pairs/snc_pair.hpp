#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snc/pairs/mot_class.hpp"

namespace snc {

struct Divisor {
  std::string label;
  long mult = 0;

  friend bool operator==(const Divisor&, const Divisor&) = default;
};

/// Records that a pair is CP^n with coordinate hyperplanes as divisors;
/// coordinate[j] is the index c with D_j = {xi_c = 0}.
struct ProjectiveModel {
  int n = 0;
  std::vector<int> coordinate;

  friend bool operator==(const ProjectiveModel&, const ProjectiveModel&) = default;
};

using StrataMap = std::map<Subset, MotClass>;

/// Combinatorial model of an SNC pair (X, D = sum m_j D_j) satisfying
/// condition (*_d): Poincare classes of every stratum D_J, the divisor
/// multiplicities, and a propagated d-canonicity certificate.
class SncPair {
 public:
  SncPair(int n, long d, std::vector<Divisor> divisors, StrataMap strata, bool d_canonical,
          std::optional<ProjectiveModel> model = std::nullopt)
      : n_(n), d_(d), divisors_(std::move(divisors)), d_canonical_(d_canonical), model_(std::move(model)) {
    if (n_ < 0) throw Error(ErrorCode::InvalidPair, "negative dimension");
    if (d_ <= 0) throw Error(ErrorCode::InvalidPair, "d must be positive");
    if (divisors_.size() > static_cast<std::size_t>(kMaxDivisors))
      throw Error(ErrorCode::InvalidPair, "too many divisors");
    for (const auto& div : divisors_) {
      if (div.mult == 0) throw Error(ErrorCode::ZeroMultiplicity, "divisor " + div.label + " has multiplicity 0");
      if (div.mult == -d_)
        throw Error(ErrorCode::ConditionStarViolation,
                    "condition (*_d) fails: divisor " + div.label + " has multiplicity -d = " + std::to_string(-d_));
    }
    const Subset all = divisors_.empty() ? 0 : (Subset{1} << divisors_.size()) - 1;
    for (auto& [mask, cls] : strata) {
      if (cls.is_zero()) continue;
      if ((mask & ~all) != 0) throw Error(ErrorCode::InvalidPair, "stratum refers to a missing divisor");
      const int size = subset_size(mask);
      if (size > n_) throw Error(ErrorCode::InvalidPair, "nonempty stratum of codimension above n");
      if (cls.degree() > 2L * (n_ - size))
        throw Error(ErrorCode::InvalidPair, "stratum class degree exceeds 2*dim: " + cls.to_string());
      strata_.emplace(mask, std::move(cls));
    }
    if (!strata_.contains(0)) throw Error(ErrorCode::InvalidPair, "the ambient class [X] must be nonzero");
    if (model_) {
      if (model_->n != n_ || model_->coordinate.size() != divisors_.size())
        throw Error(ErrorCode::InvalidPair, "projective model does not match the pair");
    }
  }

  int n() const { return n_; }
  long d() const { return d_; }
  const std::vector<Divisor>& divisors() const { return divisors_; }
  int divisor_count() const { return static_cast<int>(divisors_.size()); }
  long mult(int j) const { return divisors_.at(static_cast<std::size_t>(j)).mult; }
  Subset all_divisors() const { return divisors_.empty() ? 0 : (Subset{1} << divisors_.size()) - 1; }

  /// Only nonzero strata are stored.
  const StrataMap& strata() const { return strata_; }
  MotClass stratum(Subset mask) const {
    auto it = strata_.find(mask);
    return it == strata_.end() ? MotClass() : it->second;
  }

  bool d_canonical() const { return d_canonical_; }
  const std::optional<ProjectiveModel>& model() const { return model_; }

  /// Poincare duality of every stratum of its own dimension.
  bool is_poincare_dual() const {
    for (const auto& [mask, cls] : strata_)
      if (!cls.is_palindromic(n_ - subset_size(mask))) return false;
    return true;
  }

  friend bool operator==(const SncPair&, const SncPair&) = default;

 private:
  int n_;
  long d_;
  std::vector<Divisor> divisors_;
  StrataMap strata_;
  bool d_canonical_;
  std::optional<ProjectiveModel> model_;
};

/// Smooth center Y of codimension r meeting the divisors transversally.
/// `contains` is S = {j : Y in D_j}. Incidence classes [Y cap D_J] are keyed by
/// J \ S, since intersecting with a divisor that contains Y changes nothing.
struct CenterDescriptor {
  int r = 0;
  Subset contains = 0;
  StrataMap incidence;

  MotClass center_class() const { return incidence_at(0); }
  MotClass incidence_at(Subset mask) const {
    auto it = incidence.find(mask & ~contains);
    return it == incidence.end() ? MotClass() : it->second;
  }
};

struct BlowupRecord {
  SncPair new_pair;
  int exceptional_index;
  long m_e;
};

namespace detail {

/// Drops the bits listed in `removed` and packs the remaining ones.
inline Subset compress(Subset mask, Subset removed, int width) {
  Subset out = 0;
  int k = 0;
  for (int j = 0; j < width; ++j) {
    if (contains(removed, j)) continue;
    if (contains(mask, j)) out |= singleton(k);
    ++k;
  }
  return out;
}

/// `base`, primed until no divisor in `divisors` carries it.
inline std::string unique_label(const std::vector<Divisor>& divisors, std::string base) {
  auto taken = [&](const std::string& l) {
    for (const auto& div : divisors)
      if (div.label == l) return true;
    return false;
  };
  while (taken(base)) base += "'";
  return base;
}

inline void require_poincare_dual(const SncPair& pair, const char* who) {
  if (!pair.is_poincare_dual())
    throw Error(ErrorCode::InvalidPair, std::string(who) + " produced a stratum violating Poincare duality");
}

}  // namespace detail

inline void validate_center(const SncPair& pair, const CenterDescriptor& c) {
  if (c.r < 1 || c.r > pair.n())
    throw Error(ErrorCode::InvalidCenter, "center codimension must lie in [1, n], got " + std::to_string(c.r));
  if ((c.contains & ~pair.all_divisors()) != 0) throw Error(ErrorCode::InvalidCenter, "unknown divisor in S");
  if (subset_size(c.contains) > c.r) throw Error(ErrorCode::InvalidCenter, "more than r divisors contain the center");
  if (c.center_class().is_zero()) throw Error(ErrorCode::EmptyStratum, "empty center");
  for (const auto& [mask, cls] : c.incidence) {
    if ((mask & c.contains) != 0) throw Error(ErrorCode::InvalidCenter, "incidence key meets S");
    if ((mask & ~pair.all_divisors()) != 0) throw Error(ErrorCode::InvalidCenter, "unknown divisor in incidence");
    if (cls.degree() > 2L * (pair.n() - c.r - subset_size(mask)))
      throw Error(ErrorCode::InvalidCenter, "incidence class degree too large");
  }
}

/// (CP^n, sum m H_c) for the listed coordinate hyperplanes (coordinate, mult).
inline SncPair projective_space_pair(int n, long d, const std::vector<std::pair<int, long>>& assigned) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative dimension");
  std::vector<Divisor> divisors;
  ProjectiveModel model{n, {}};
  Subset used = 0;
  long total = 0;
  for (const auto& [coord, mult] : assigned) {
    if (coord < 0 || coord > n) throw Error(ErrorCode::InvalidArgument, "coordinate index out of range");
    if (contains(used, coord)) throw Error(ErrorCode::InvalidArgument, "coordinate assigned twice");
    used |= singleton(coord);
    divisors.push_back({"H" + std::to_string(coord), mult});
    model.coordinate.push_back(coord);
    total += mult;
  }
  StrataMap strata;
  const Subset count = Subset{1} << divisors.size();
  for (Subset mask = 0; mask < count; ++mask) {
    const int size = subset_size(mask);
    if (size <= n) strata.emplace(mask, MotClass::projective_space(n - size));
  }
  SncPair pair(n, d, std::move(divisors), std::move(strata), total == -(static_cast<long>(n) + 1) * d,
               std::move(model));
  detail::require_poincare_dual(pair, "projective_space_pair");
  return pair;
}

/// The d-canonical model (CP^n, gamma_{m_1..m_s}): H_i with multiplicity m_i
/// (zero entries omitted) and H_0 with -(sum m + (n+1) d).
inline SncPair gamma_model_pair(int n, long d, const std::vector<long>& mults) {
  if (static_cast<int>(mults.size()) > n) throw Error(ErrorCode::InvalidArgument, "more multiplicities than n");
  std::vector<std::pair<int, long>> assigned;
  long sum = 0;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    sum += mults[i];
    if (mults[i] != 0) assigned.emplace_back(static_cast<int>(i) + 1, mults[i]);
  }
  const long forced = -(sum + (static_cast<long>(n) + 1) * d);
  if (forced != 0) assigned.insert(assigned.begin(), {0, forced});
  return projective_space_pair(n, d, assigned);
}

/// Trivial fibration X = Y x Z with D = pr_Y^* D_Y + pr_Z^* D_Z.
inline SncPair fibration_pair(const SncPair& base, const SncPair& fiber) {
  if (base.d() != fiber.d()) throw Error(ErrorCode::MismatchedD, "base and fiber use different d");
  std::vector<Divisor> divisors = base.divisors();
  for (const auto& div : fiber.divisors()) divisors.push_back({detail::unique_label(divisors, div.label), div.mult});
  if (divisors.size() > static_cast<std::size_t>(kMaxDivisors)) throw Error(ErrorCode::InvalidPair, "too many divisors");
  StrataMap strata;
  const int shift = base.divisor_count();
  for (const auto& [mb, cb] : base.strata())
    for (const auto& [mf, cf] : fiber.strata()) strata.emplace(mb | (mf << shift), cb * cf);
  SncPair pair(base.n() + fiber.n(), base.d(), std::move(divisors), std::move(strata),
               base.d_canonical() && fiber.d_canonical());
  detail::require_poincare_dual(pair, "fibration_pair");
  return pair;
}

/// Y = D_{J0} as a blow-up center.
inline CenterDescriptor stratum_center(const SncPair& pair, Subset j0) {
  if (j0 == 0) throw Error(ErrorCode::InvalidCenter, "stratum center needs |J0| >= 1");
  if ((j0 & ~pair.all_divisors()) != 0) throw Error(ErrorCode::InvalidCenter, "unknown divisor in J0");
  if (pair.stratum(j0).is_zero()) throw Error(ErrorCode::EmptyStratum, "stratum D_J0 is empty");
  CenterDescriptor c{subset_size(j0), j0, {}};
  for (const auto& [mask, cls] : pair.strata())
    if ((mask & j0) == j0) c.incidence.emplace(mask & ~j0, cls);
  validate_center(pair, c);
  return c;
}

/// Y = {xi_c = 0 : c in coords} inside a coordinate projective-space pair.
inline CenterDescriptor coordinate_center(const SncPair& pair, const std::vector<int>& coords) {
  if (!pair.model()) throw Error(ErrorCode::NoModelTag, "pair has no projective-space model");
  const auto& model = *pair.model();
  Subset coord_set = 0;
  for (int c : coords) {
    if (c < 0 || c > model.n) throw Error(ErrorCode::InvalidCenter, "coordinate out of range");
    if (contains(coord_set, c)) throw Error(ErrorCode::InvalidCenter, "repeated coordinate");
    coord_set |= singleton(c);
  }
  const int r = static_cast<int>(coords.size());
  if (r < 1) throw Error(ErrorCode::InvalidCenter, "center must have positive codimension");
  if (r > model.n) throw Error(ErrorCode::InvalidCenter, "coordinate center is empty");
  CenterDescriptor c{r, 0, {}};
  for (int j = 0; j < pair.divisor_count(); ++j)
    if (contains(coord_set, model.coordinate[static_cast<std::size_t>(j)])) c.contains |= singleton(j);
  const Subset others = pair.all_divisors() & ~c.contains;
  // iterate over all submasks of `others`
  for (Subset mask = others;; mask = (mask - 1) & others) {
    MotClass cls = MotClass::projective_space(model.n - r - subset_size(mask));
    if (!cls.is_zero()) c.incidence.emplace(mask, std::move(cls));
    if (mask == 0) break;
  }
  validate_center(pair, c);
  return c;
}

/// Blow-up along a smooth center with the d-canonical bookkeeping
/// m_E = sum_{j in S} m_j + (r - 1) d.
///
/// Strata of X' (c = r - |J cap S|):
///   [D'_J]      = [D_J] + [Y cap D_J] ([CP^(c-1)] - 1)
///   [D'_J cap E] = [Y cap D_J] [CP^(r-1-|J cap S|)]
inline BlowupRecord blow_up(const SncPair& pair, const CenterDescriptor& c) {
  validate_center(pair, c);
  long m_e = static_cast<long>(c.r - 1) * pair.d();
  for (int j : subset_indices(c.contains)) {
    if (pair.mult(j) <= 0)
      throw Error(ErrorCode::NegativeMultAtCenter, "divisor " + pair.divisors()[static_cast<std::size_t>(j)].label +
                                                       " contains the center but has multiplicity " +
                                                       std::to_string(pair.mult(j)));
    m_e += pair.mult(j);
  }
  if (m_e == -pair.d()) throw Error(ErrorCode::ConditionStarViolation, "exceptional multiplicity equals -d");
  if (m_e == 0) throw Error(ErrorCode::ZeroMultiplicity, "exceptional divisor would have multiplicity 0");
  if (pair.divisor_count() + 1 > kMaxDivisors) throw Error(ErrorCode::InvalidPair, "too many divisors");

  const int l = pair.divisor_count();
  const Subset e_bit = singleton(l);
  StrataMap strata;
  const Subset count = Subset{1} << l;
  for (Subset mask = 0; mask < count; ++mask) {
    const int size = subset_size(mask);
    if (size > pair.n()) continue;
    const int in_s = subset_size(mask & c.contains);
    const MotClass meet = c.incidence_at(mask);
    MotClass strict = pair.stratum(mask);
    if (!meet.is_zero()) {
      const long codim = c.r - in_s;
      strict = strict + meet * (MotClass::projective_space(codim - 1) - MotClass::point());
      MotClass on_e = meet * MotClass::projective_space(c.r - 1 - in_s);
      if (!on_e.is_zero()) strata.emplace(mask | e_bit, std::move(on_e));
    }
    if (!strict.is_zero()) strata.emplace(mask, std::move(strict));
  }
  std::vector<Divisor> divisors = pair.divisors();
  divisors.push_back({detail::unique_label(divisors, "E" + std::to_string(l)), m_e});
  SncPair out(pair.n(), pair.d(), std::move(divisors), std::move(strata), pair.d_canonical());
  detail::require_poincare_dual(out, "blow_up");
  return {std::move(out), l, m_e};
}

/// (D_j, sum_{i != j} m_i (D_i cap D_j)).
inline SncPair restrict_to_divisor(const SncPair& pair, int j) {
  if (j < 0 || j >= pair.divisor_count()) throw Error(ErrorCode::InvalidArgument, "divisor index out of range");
  const Subset bit = singleton(j);
  if (pair.stratum(bit).is_zero()) throw Error(ErrorCode::EmptyStratum, "divisor stratum is empty");
  std::vector<Divisor> divisors;
  for (int i = 0; i < pair.divisor_count(); ++i)
    if (i != j) divisors.push_back(pair.divisors()[static_cast<std::size_t>(i)]);
  StrataMap strata;
  for (const auto& [mask, cls] : pair.strata())
    if (contains(mask, j)) strata.emplace(detail::compress(mask, bit, pair.divisor_count()), cls);
  SncPair out(pair.n() - 1, pair.d(), std::move(divisors), std::move(strata), false);
  detail::require_poincare_dual(out, "restrict_to_divisor");
  return out;
}

/// (Y, D_Y) with D_Y = sum_{j not in S} m_j (D_j cap Y).
inline SncPair center_pair(const SncPair& pair, const CenterDescriptor& c) {
  validate_center(pair, c);
  std::vector<Divisor> divisors;
  for (int i = 0; i < pair.divisor_count(); ++i)
    if (!contains(c.contains, i)) divisors.push_back(pair.divisors()[static_cast<std::size_t>(i)]);
  StrataMap strata;
  for (const auto& [mask, cls] : c.incidence)
    strata.emplace(detail::compress(mask, c.contains, pair.divisor_count()), cls);
  SncPair out(pair.n() - c.r, pair.d(), std::move(divisors), std::move(strata), false);
  detail::require_poincare_dual(out, "center_pair");
  return out;
}

}  // namespace snc
