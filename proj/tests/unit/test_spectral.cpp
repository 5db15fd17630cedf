#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mixgap/error.hpp"
#include "mixgap/fixtures.hpp"
#include "mixgap/spectral.hpp"

namespace mixgap {
namespace {

// Values computed independently with numpy (SVD of powers of L, k <= 50).
constexpr double kCycleGammaPs = 0.29495147459972404;
constexpr double kCycleGammaDps = 0.19282161153045774;

StochasticMatrix two_state(double a, double b) {
  Matrix p(2, 2);
  p << 1 - a, a, b, 1 - b;
  return StochasticMatrix(std::move(p));
}

TEST(AbsoluteGap, ClosedForms) {
  EXPECT_NEAR(absolute_spectral_gap(fixtures::uniform(2)), 1.0, 1e-14);
  for (const auto& [a, b] : {std::pair{0.1, 0.3}, {0.9, 0.8}, {0.5, 0.25}}) {
    EXPECT_NEAR(absolute_spectral_gap(two_state(a, b)), 1.0 - std::abs(1.0 - a - b), 1e-12);
  }
}

TEST(AbsoluteGap, TwoRoutesAgreeOnReversibleChains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = fixtures::random_reversible(5, seed);
    EXPECT_NEAR(absolute_spectral_gap(p), absolute_spectral_gap_projected(p), 1e-10);
  }
}

TEST(GammaDagger, Examples) {
  EXPECT_NEAR(gamma_dagger(fixtures::uniform(2), 1), 1.0, 1e-14);
  const Matrix l = build_L(fixtures::cycle3());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(l.transpose() * l);
  EXPECT_NEAR(gamma_dagger(fixtures::cycle3(), 1), 1.0 - eig.eigenvalues()(1), 1e-12);
  EXPECT_THROW(gamma_dagger(fixtures::cycle3(), 0), Error);
}

TEST(GammaDagger, NormRouteAgrees) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = fixtures::random_ergodic(2 + seed % 6, seed);
    for (std::size_t k = 1; k <= 4; ++k) EXPECT_NEAR(gamma_dagger(p, k), gamma_dagger_via_norm(p, k), 1e-10);
  }
}

TEST(GammaDdagger, ExamplesAndDilationRoute) {
  EXPECT_NEAR(gamma_ddagger(fixtures::uniform(2), 1), 1.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = fixtures::random_ergodic(4, seed);
    for (std::size_t k = 1; k <= 3; ++k) {
      EXPECT_NEAR(gamma_ddagger(p, k), gamma_ddagger_via_dilation(p, k), 1e-10);
      const double dd = gamma_ddagger(p, k);
      EXPECT_NEAR(gamma_dagger(p, k), dd * (2.0 - dd), 1e-10);
    }
  }
}

TEST(PseudoSpectralGap, RankOneChain) {
  const auto r = pseudo_spectral_gap(fixtures::uniform(3));
  EXPECT_NEAR(*r.gamma_ps, 1.0, 1e-14);
  EXPECT_EQ(r.k_ps, 1u);
  EXPECT_EQ(r.k_explored, 1u);
}

TEST(PseudoSpectralGap, LazyCycleMatchesBruteForce) {
  const auto cyc = fixtures::cycle3();
  const auto r = pseudo_spectral_gap(cyc);
  EXPECT_NEAR(*r.gamma_ps, kCycleGammaPs, 1e-12);
  EXPECT_EQ(r.k_ps, 2u);
  double brute = 0.0;
  for (std::size_t k = 1; k <= 50; ++k) brute = std::max(brute, gamma_dagger(cyc, k) / double(k));
  EXPECT_NEAR(*r.gamma_ps, brute, 1e-12);
  EXPECT_NEAR(gamma_ps_prefix(cyc, 50), brute, 1e-12);
}

TEST(PseudoSpectralGap, ReversibleClosedForm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = fixtures::random_reversible(2 + seed % 6, seed);
    const double gs = absolute_spectral_gap(p);
    EXPECT_NEAR(*pseudo_spectral_gap(p).gamma_ps, gs * (2.0 - gs), 1e-10);
  }
}

TEST(DilatedPseudoSpectralGap, LazyCycle) {
  const auto r = dilated_pseudo_spectral_gap(fixtures::cycle3());
  EXPECT_NEAR(*r.gamma_dps, kCycleGammaDps, 1e-12);
  EXPECT_EQ(r.k_dps, 3u);
  EXPECT_LE(*r.gamma_dps, *r.gamma_ps + 1e-10);
  EXPECT_LE(*r.gamma_ps, 2.0 * *r.gamma_dps + 1e-10);
  EXPECT_NEAR(gamma_dps_prefix(fixtures::cycle3(), 50), kCycleGammaDps, 1e-12);
}

TEST(DilatedPseudoSpectralGap, EqualsAbsoluteGapWhenReversible) {
  EXPECT_NEAR(*dilated_pseudo_spectral_gap(fixtures::uniform(2)).gamma_dps, 1.0, 1e-14);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = fixtures::random_reversible(2 + seed % 7, seed);
    EXPECT_NEAR(*dilated_pseudo_spectral_gap(p).gamma_dps, absolute_spectral_gap(p), 1e-10);
  }
}

TEST(SpectralReport, InvariantsOnRandomChains) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = fixtures::random_ergodic(2 + seed % 7, seed);
    const auto r = spectral_report(p);
    for (const auto& [k, dagger] : r.gamma_dagger_at_k) {
      const double dd = r.gamma_ddagger_at_k.at(k);
      EXPECT_NEAR(dagger, dd * (2.0 - dd), 1e-10);
      EXPECT_LE(dd, dagger + 1e-12);
    }
    EXPECT_LE(*r.gamma_dps, *r.gamma_ps + 1e-10);
    EXPECT_LE(*r.gamma_ps, 2.0 * *r.gamma_dps + 1e-10);
    EXPECT_EQ(r.gamma_star.has_value(), is_reversible(p));
  }
}

TEST(SpectralReport, LargerCapDoesNotChangeResult) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = fixtures::random_ergodic(4, seed);
    const auto a = dilated_pseudo_spectral_gap(p, 100);
    const auto b = dilated_pseudo_spectral_gap(p, 100000);
    EXPECT_EQ(*a.gamma_ps, *b.gamma_ps);
    EXPECT_EQ(*a.gamma_dps, *b.gamma_dps);
    EXPECT_EQ(a.k_explored, b.k_explored);
  }
}

TEST(SpectralReport, PeriodicChainDoesNotConverge) {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  try {
    pseudo_spectral_gap(StochasticMatrix(flip), 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Nonconvergent);
  }
  EXPECT_THROW(pseudo_spectral_gap(fixtures::cycle3(), 2), Error);
}

TEST(LemmaLedger, PassesOnFixtures) {
  const auto uniform = verify_lemma_properties(fixtures::uniform(2), 10);
  EXPECT_EQ(uniform.violations(), 0u);
  const auto cyc = verify_lemma_properties(fixtures::cycle3(), 10);
  EXPECT_EQ(cyc.violations(), 0u);
  EXPECT_FALSE(cyc.checks.empty());
  const auto has = [&](const std::string& label) {
    return std::any_of(cyc.checks.begin(), cyc.checks.end(), [&](const auto& c) { return c.lemma == label; });
  };
  EXPECT_TRUE(has("submultiplicative"));
  EXPECT_TRUE(has("skip-lower"));
  EXPECT_TRUE(has("skip-upper"));
  EXPECT_TRUE(has("skip-above-half"));
  EXPECT_TRUE(has("skip-short-range"));
  EXPECT_THROW(verify_lemma_properties(fixtures::cycle3(), 21), Error);
}

TEST(LemmaLedger, RandomChainsHaveNoViolations) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto ledger = verify_lemma_properties(fixtures::random_ergodic(2 + seed % 5, seed), 8);
    EXPECT_EQ(ledger.violations(), 0u) << "seed " << seed;
  }
}

TEST(MixingSandwich, RankOneChain) {
  const auto s = mixing_time_sandwich(fixtures::uniform(2));
  EXPECT_EQ(s.t_mix, 1u);
  EXPECT_NEAR(s.ps_lower, 0.5, 1e-14);
  EXPECT_NEAR(s.ps_upper, std::log(8.0 * std::numbers::e), 1e-12);
  EXPECT_TRUE(s.holds());
}

TEST(MixingSandwich, LazyCycleAndReversibleChains) {
  const auto cyc = mixing_time_sandwich(fixtures::cycle3());
  EXPECT_EQ(cyc.t_mix, 5u);
  EXPECT_TRUE(cyc.holds());
  EXPECT_FALSE(cyc.rev_lower.has_value());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = mixing_time_sandwich(fixtures::random_reversible(4, seed));
    ASSERT_TRUE(s.rev_lower.has_value());
    EXPECT_TRUE(s.holds());
  }
}

TEST(AuxiliaryInequalities, PowerLowerBoundGrid) {
  for (int p = 1; p <= 20; ++p) {
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      EXPECT_GE(1.0 - std::pow(1.0 - x, p) + 1e-12, p * x * (1.0 - p * x / 2.0)) << "p=" << p << " x=" << x;
    }
  }
}

TEST(AuxiliaryInequalities, GeometricDecayBelowHalf) {
  for (int i = 1; i <= 1000; ++i) {
    const double t = i * 1e-3;
    EXPECT_LT(std::pow(1.0 - t, std::floor(1.0 / t)), 0.5) << "t=" << t;
  }
}

}  // namespace
}  // namespace mixgap
