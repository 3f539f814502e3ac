#include <gtest/gtest.h>

#include "snc/cli/corpus.hpp"
#include "snc/snc.hpp"
#include "test_support.hpp"

namespace snc {
namespace {

GradedPoly tpoly(const std::vector<long>& coeffs) {
  std::vector<Rat> r(coeffs.begin(), coeffs.end());
  return GradedPoly::from_coefficients(r);
}

Rat eval_ratfunc(const RatFunc& f, const Rat& t) { return evaluate(f.num(), t) / evaluate(f.den(), t); }

// Oracle: the strata sum evaluated term by term at t = u^den, with L = t^2,
// so every L^b with b in (1/den)Z is an exact integer power of u.
Rat zeta_oracle_at(const SncPair& pair, const Rat& a, long den, long u) {
  const Rat t = pow(Rat(u), den);
  const Rat L = t * t;
  auto l_pow = [&](const Rat& b) {
    const Rat e = b * Rat(2 * den);
    EXPECT_TRUE(e.is_integer());
    return pow(Rat(u), e.to_long());
  };
  Rat total(0);
  for (const auto& [mask, cls] : pair.strata()) {
    Rat term = pow(L, subset_size(mask) - pair.n()) * evaluate(cls.poincare(), t);
    for (int j : subset_indices(mask)) {
      const Rat b = a * Rat(pair.mult(j));
      term *= (Rat(1) - l_pow(b)) / (l_pow(b + Rat(1)) - Rat(1));
    }
    total += term;
  }
  return total;
}

TEST(Zeta, SmoothCurve) {
  const RatFunc z = zeta_evaluate(projective_space_pair(1, 1, {}), Rat(1));
  EXPECT_EQ(z, RatFunc(tpoly({1, 0, 1}).shifted(Rat(-2))));
}

TEST(Zeta, P2HyperplanesMatchesSubsetOracle) {
  const SncPair p2 = projective_space_pair(2, 1, {{0, 1}, {1, 1}, {2, 1}});
  EXPECT_EQ(p2.strata().size(), 7U);
  const RatFunc z = zeta_evaluate(p2, Rat(1));
  for (long u : {2, 3, 5}) EXPECT_EQ(eval_ratfunc(z, Rat(u)), zeta_oracle_at(p2, Rat(1), 1, u));
}

TEST(Zeta, PoleIsReported) {
  try {
    zeta_evaluate(projective_space_pair(1, 1, {{0, -2}, {1, 3}}), Rat(1, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleInSpecialization);
  }
}

TEST(Zeta, RandomPairsMatchSubsetOracle) {
  std::mt19937_64 rng(31);
  corpus::Limits lim{3, 3, 4, 2};
  for (int i = 0; i < 40; ++i) {
    SncPair pair = corpus::random_gamma_model(rng, lim);
    if (auto c = corpus::random_center(rng, pair)) pair = blow_up(pair, *c).new_pair;
    const Rat a(1, pair.d());
    const RatFunc z = zeta_evaluate(pair, a);
    EXPECT_EQ(eval_ratfunc(z, pow(Rat(2), pair.d())), zeta_oracle_at(pair, a, pair.d(), 2));
  }
}

TEST(Bridge, LimitEqualsChiD) {
  std::mt19937_64 rng(32);
  corpus::Limits lim;
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    SncPair pair = (i % 2 == 0) ? corpus::random_gamma_model(rng, lim) : corpus::random_effective_pair(rng, lim);
    for (int step = 0; step < 2; ++step)
      if (auto c = corpus::random_center(rng, pair)) pair = blow_up(pair, *c).new_pair;
    ASSERT_TRUE(has_even_cohomology(pair));
    EXPECT_EQ(specialization_limit(pair), chi_d(pair));
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Bridge, OddCohomologyIsDetected) {
  StrataMap strata{{0, MotClass::from_betti({1, 4, 6, 4, 1})}};
  const SncPair torus(2, 1, {}, strata, false, std::nullopt);
  EXPECT_FALSE(has_even_cohomology(torus));
}

TEST(ChangeOfVariables, Examples) {
  const SncPair p2 = projective_space_pair(2, 1, {{0, 1}, {1, 1}, {2, 1}});
  EXPECT_TRUE(change_of_variables_check(p2, stratum_center(p2, 0b011)).equal);

  const SncPair bare = projective_space_pair(2, 1, {});
  const auto cert = change_of_variables_check(bare, coordinate_center(bare, {1, 2}));
  EXPECT_TRUE(cert.equal);
  // 1 + L^-1 + L^-2 with L = t^2
  const RatFunc expected(tpoly({1, 0, 1, 0, 1}).shifted(Rat(-4)));
  EXPECT_EQ(cert.lhs, expected);
  EXPECT_EQ(cert.rhs, expected);
}

TEST(ChangeOfVariables, RejectsNegativeDivisor) {
  const SncPair pair = projective_space_pair(1, 1, {{0, 3}, {1, -5}});
  EXPECT_THROW(change_of_variables_check(pair, stratum_center(pair, 0b01)), Error);
}

TEST(ChangeOfVariables, HoldsAlongChains) {
  std::mt19937_64 rng(33);
  corpus::Limits lim;
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    SncPair pair = corpus::random_effective_pair(rng, lim);
    const RatFunc start = motivic_F_d(pair);
    for (int step = 0; step < lim.chain_len; ++step) {
      auto c = corpus::random_center(rng, pair);
      if (!c) break;
      const auto cert = change_of_variables_check(pair, *c);
      EXPECT_TRUE(cert.equal) << cert.lhs.to_string("t") << " vs " << cert.rhs.to_string("t");
      pair = blow_up(pair, *c).new_pair;
      EXPECT_EQ(motivic_F_d(pair), start);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ChangeOfVariables, DetectsWrongExceptionalMultiplicity) {
  const SncPair p2 = projective_space_pair(2, 1, {{0, 1}, {1, 1}, {2, 1}});
  BlowupFn off_by_one = [](const SncPair& p, const CenterDescriptor& c) {
    BlowupRecord rec = blow_up(p, c);
    auto divisors = rec.new_pair.divisors();
    divisors[static_cast<std::size_t>(rec.exceptional_index)].mult += 1;
    rec.new_pair = SncPair(p.n(), p.d(), divisors, rec.new_pair.strata(), false, std::nullopt);
    return rec;
  };
  EXPECT_FALSE(change_of_variables_check(p2, stratum_center(p2, 0b011), off_by_one).equal);
}

TEST(Volume, SmoothAndCrepant) {
  const MotClass x = MotClass::projective_space(2);
  const DiscrepancyData smooth(2, {{0, x}}, {});
  EXPECT_EQ(motivic_volume(smooth), RatFunc(x.poincare().shifted(Rat(-4))));

  const MotClass blown = MotClass::from_betti({1, 0, 2, 0, 1});
  const DiscrepancyData crepant(2, {{0, blown}, {1, MotClass::projective_space(1)}}, {Rat(0)});
  EXPECT_EQ(motivic_volume(crepant), RatFunc(blown.poincare().shifted(Rat(-4))));
}

TEST(Volume, PointBlowupRecoversP2) {
  const DiscrepancyData disc(2, {{0, MotClass::from_betti({1, 0, 2, 0, 1})}, {1, MotClass::projective_space(1)}}, {Rat(1)});
  EXPECT_EQ(motivic_volume(disc), RatFunc(tpoly({1, 0, 1, 0, 1}).shifted(Rat(-4))));
  const StringyReport s = stringy_invariants(disc);
  ASSERT_TRUE(s.is_polynomial());
  EXPECT_EQ(*s.stringy_poincare, tpoly({1, 0, 1, 0, 1}));
  EXPECT_EQ(*s.chi, Rat(3));
  EXPECT_EQ(*s.chi_prime, Rat(6));
  EXPECT_EQ(*s.chi_double_prime, Rat(2));
}

TEST(Volume, RejectsNonKlt) {
  EXPECT_THROW(DiscrepancyData(1, {{0, MotClass::projective_space(1)}, {1, MotClass::point()}}, {Rat(-1)}), Error);
}

TEST(Stringy, FractionalDiscrepancyIsNonPolynomial) {
  const DiscrepancyData disc(2, {{0, MotClass::from_betti({1, 0, 2, 0, 1})}, {1, MotClass::projective_space(1)}},
                             {Rat(1, 2)});
  const StringyReport s = stringy_invariants(disc);
  EXPECT_FALSE(s.is_polynomial());
  EXPECT_FALSE(s.chi.has_value());
  EXPECT_FALSE(s.realization.num().has_integer_exponents() && s.realization.is_polynomial());
  // The realization agrees with the defining sum at t = 4 (L^(1/2) = 4).
  const Rat t(4), L = t * t;
  const Rat expected = evaluate(tpoly({1, 0, 2, 0, 1}), t) + L * (Rat(1) - Rat(4)) / (Rat(64) - Rat(1)) * Rat(17);
  EXPECT_EQ(eval_ratfunc(s.realization, t), expected);
}

TEST(Stringy, CrepantDataGivesResolutionInvariants) {
  testing::Gen gen(34);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(gen.integer(1, 3));
    const MotClass x = MotClass::projective_space(n) + MotClass::from_betti({0, 0, gen.integer(0, 3)});
    StrataMap strata{{0, x}};
    const int k = static_cast<int>(gen.integer(0, 2));
    std::vector<Rat> disc;
    for (int j = 0; j < k; ++j) {
      strata[singleton(j)] = MotClass::projective_space(n - 1);
      disc.emplace_back(0);
    }
    const StringyReport s = stringy_invariants(DiscrepancyData(n, strata, disc));
    ASSERT_TRUE(s.is_polynomial());
    EXPECT_EQ(*s.stringy_poincare, x.poincare());
    EXPECT_EQ(*s.chi, localizable_eval(x, n, InvariantKind::chi()));
    EXPECT_EQ(*s.chi_prime, localizable_eval(x, n, InvariantKind::chi_prime()));
    EXPECT_EQ(*s.chi_double_prime, localizable_eval(x, n, InvariantKind::chi_double_prime()));
  }
}

TEST(Volume, CrepantDivisorDoesNotChangeVolume) {
  testing::Gen gen(35);
  for (int i = 0; i < 40; ++i) {
    const int n = static_cast<int>(gen.integer(1, 3));
    StrataMap strata{{0, MotClass::projective_space(n) + MotClass::from_betti({0, 0, 1})},
                     {1, MotClass::projective_space(n - 1)}};
    std::vector<Rat> disc{Rat(gen.integer(1, 6), gen.integer(1, 3))};
    const RatFunc before = motivic_volume(DiscrepancyData(n, strata, disc));
    // new crepant divisor with an arbitrary class, meeting E0 arbitrarily
    std::vector<long> betti;
    for (int k = 0; k <= 2 * (n - 1); ++k) betti.push_back(gen.integer(0, 3));
    strata[0b10] = MotClass::from_betti(betti);
    if (n >= 2) strata[0b11] = MotClass::from_betti({gen.integer(0, 2)});
    disc.emplace_back(0);
    EXPECT_EQ(motivic_volume(DiscrepancyData(n, strata, disc)), before);
  }
}

TEST(DetLine, Examples) {
  const SncPair curve = projective_space_pair(1, 1, {{0, 3}, {1, -5}});
  for (const auto& e : det_line_exponents(curve)) {
    EXPECT_TRUE(e.consistent());
    if (e.stratum == 0b01) {
      EXPECT_EQ(e.lambda_exp, Rat(-3, 4));
      EXPECT_EQ(e.eta_exp, Rat(0));
    }
    if (e.stratum == 0) {
      EXPECT_EQ(e.lambda_exp, Rat(1));
      EXPECT_EQ(e.eta_exp, Rat(-1));
    }
  }
  const SncPair p2 = projective_space_pair(2, 1, {{0, 1}, {1, 1}, {2, 1}});
  bool seen = false;
  for (const auto& e : det_line_exponents(p2)) {
    EXPECT_TRUE(e.consistent());
    if (e.stratum == 0b011) {
      EXPECT_EQ(e.lambda_exp, Rat(1, 4));
      EXPECT_EQ(e.eta_exp, Rat(0));  // |J| = n
      EXPECT_EQ(e.eta_from_derivative, Rat(0));
      seen = true;
    }
    if (e.stratum == 0b001) {
      EXPECT_EQ(e.lambda_exp, Rat(-1, 2));
      EXPECT_EQ(e.eta_exp, Rat(1, 2));
    }
  }
  EXPECT_TRUE(seen);
}

TEST(DetLine, ProductAndLimitFormulasAgree) {
  std::mt19937_64 rng(36);
  corpus::Limits lim;
  for (int i = 0; i < 40; ++i) {
    SncPair pair = corpus::random_gamma_model(rng, lim);
    if (auto c = corpus::random_center(rng, pair)) pair = blow_up(pair, *c).new_pair;
    for (const auto& e : det_line_exponents(pair)) EXPECT_TRUE(e.consistent());
  }
}

}  // namespace
}  // namespace snc
