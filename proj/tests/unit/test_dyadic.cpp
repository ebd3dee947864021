#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relaxlab/dyadic.hpp"
#include "relaxlab/error.hpp"
#include "relaxlab/random_fields.hpp"

using namespace relaxlab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Unit-L2 cosine at wavenumber k on a 1-D grid.
ScalarField unit_mode(const PeriodicGrid& g, int k) {
  return pure_mode(g, {k, 0, 0}, std::sqrt(2.0 / g.period()));
}

ScalarField reference_field(const PeriodicGrid& g) {
  const double L = g.period();
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = g.coordinate(i)[0];
    v[i] = 0.2 + std::cos(kTwoPi * 3 * x / L) + 0.5 * std::sin(kTwoPi * 7 * x / L) +
           0.1 * std::cos(kTwoPi * 20 * x / L + 0.3);
  }
  return ScalarField(g, std::move(v));
}

}  // namespace

TEST(Partition, UnityOnResolvedFrequencies) {
  for (const auto& g : {PeriodicGrid(1, 64), PeriodicGrid(1, 256), PeriodicGrid(2, 128), PeriodicGrid(1, 128, 1.0)}) {
    const DyadicPartition P(g);
    const auto r = partition_residual(P);
    EXPECT_LT(r.homogeneous, 1e-12);
    EXPECT_LT(r.inhomogeneous, 1e-12);
    EXPECT_LT(r.scaling, 1e-15);
  }
}

TEST(Partition, BlockRangeOnTheStandardGrid) {
  const DyadicPartition P(PeriodicGrid(1, 256));
  EXPECT_EQ(P.q_min(), -4);
  EXPECT_EQ(P.q_max(), 4);
}

TEST(Partition, BumpSupport) {
  const DyadicPartition P(PeriodicGrid(1, 64));
  EXPECT_EQ(P.phi0(0.5), 0.0);
  EXPECT_EQ(P.phi0(0.75), 0.0);
  EXPECT_EQ(P.phi0(8.0 / 3.0), 0.0);
  EXPECT_GT(P.phi0(1.0), 0.0);
  EXPECT_GT(P.phi0(0.76), 0.0);
  EXPECT_GT(P.phi0(2.6), 0.0);
}

TEST(Partition, TooCoarseGridIsAConfigurationError) {
  EXPECT_THROW(DyadicPartition(PeriodicGrid(1, 8)), ConfigError);
}

TEST(Block, PureModeInsideOneBlock) {
  // k = 35 on L = 2 pi sits at 2^-2 xi ~ 1.393, where Phi_0 = 1.
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  const ScalarField f = unit_mode(g, 35);
  EXPECT_LT(l2_norm(block(P, f, 2) - f), 1e-14);
  for (int q = P.q_min(); q <= P.q_max(); ++q) {
    if (std::abs(q - 2) >= 2) {
      EXPECT_LT(l2_norm(block(P, f, q)), 1e-13) << q;
    }
  }
}

TEST(Block, ConstantsAndRanges) {
  const PeriodicGrid g(1, 64);
  const DyadicPartition P(g);
  const ScalarField c = ScalarField::constant(g, 2.5);
  for (int q = P.q_min(); q <= P.q_max(); ++q) EXPECT_EQ(l2_norm(block(P, c, q)), 0.0);
  EXPECT_LT(linf_norm(block(P, c, -1, false) - c), 1e-15);
  EXPECT_EQ(l2_norm(block(P, c, -2, false)), 0.0);
  EXPECT_THROW(block(P, c, P.q_max() + 1), RangeError);
  EXPECT_THROW(block(P, c, P.q_min() - 1), RangeError);
  EXPECT_THROW(block(P, c, P.q_max() + 1, false), RangeError);
}

TEST(Block, AlmostOrthogonality) {
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  Rng rng(5);
  const ScalarField f = random_smooth_field(g, rng, 1.0, 80);
  for (int q = P.q_min(); q <= P.q_max(); ++q) {
    for (int p = P.q_min(); p <= P.q_max(); ++p) {
      if (std::abs(p - q) >= 2) {
        EXPECT_EQ(l2_norm(block(P, block(P, f, q), p)), 0.0);
      }
    }
  }
}

TEST(Block, ReconstructionOfBandLimitedFields) {
  for (const auto& g : {PeriodicGrid(1, 256), PeriodicGrid(2, 64)}) {
    const DyadicPartition P(g);
    Rng rng(9);
    const ScalarField f = project(add_constant(random_smooth_field(g, rng, 2.0, 40), 1.0));
    ScalarField inh = ScalarField::zero(g);
    for (int q : block_range(P, false)) inh = inh + block(P, f, q, false);
    ScalarField hom = ScalarField::constant(g, mean(f));
    for (int q : block_range(P, true)) hom = hom + block(P, f, q, true);
    EXPECT_LT(l2_norm(inh - f) / l2_norm(f), 1e-13);
    EXPECT_LT(l2_norm(hom - f) / l2_norm(f), 1e-13);
  }
}

TEST(Besov, HandValues) {
  const PeriodicGrid g(1, 512);
  const DyadicPartition P(g);
  EXPECT_EQ(besov_norm(P, ScalarField::constant(g, 3.0), 1.5, 2.0, 1.0, true).value, 0.0);
  // Single active block q0 = 2 and unit L2 norm.
  EXPECT_NEAR(besov_norm(P, unit_mode(g, 35), 1.5, 2.0, 2.0, true).value, std::exp2(1.5 * 2), 1e-12);
  // Equal block norms at q = 2 and q = 4 (k = 140 sits at 2^-4 xi ~ 1.393).
  const ScalarField two = unit_mode(g, 35) + unit_mode(g, 140);
  const double b = 1.0;
  EXPECT_NEAR(besov_norm(P, two, 0.0, 2.0, 1.0, true).value, 2.0 * b, 1e-12);
  EXPECT_NEAR(besov_norm(P, two, 0.0, 2.0, kInf, true).value, b, 1e-12);
  const auto n = besov_norm(P, two, 0.0, 2.0, 1.0, true);
  double sum = 0.0;
  for (const auto& bv : n.per_block) sum += bv.value;
  EXPECT_NEAR(sum, n.value, 1e-14);
}

TEST(Besov, MatchesIndependentOracle) {
  // Values from an independent numpy implementation of the same multipliers.
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  const ScalarField f = reference_field(g);
  EXPECT_NEAR(besov_norm(P, f, 1.5, 2.0, 1.0, false).value, 1.5724176512296648, 1e-12);
  EXPECT_NEAR(besov_norm(P, f, 0.5, 2.0, 2.0, true).value, 0.9618428417550714, 1e-12);
  EXPECT_NEAR(sobolev_norm(f, 1.0), 9.139745546729001, 1e-11);
  const std::vector<ScalarField> series{f, 1.5 * f, 2.0 * f};
  EXPECT_NEAR(chemin_lerner_norm(P, {0.0, 0.5, 1.0}, series, 2.0, 1.5, 2.0, 1.0, false).value,
              2.4232583469389333, 1e-12);
}

TEST(Besov, ScalingShiftsBlocks) {
  // f(2x) moves each homogeneous block up by one with the same L2 norm.
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  Rng rng(4);
  const ScalarField f = random_smooth_field(g, rng, 1.0, 40);
  Spectrum s(g.size(), Complex(0.0, 0.0));
  for (int k = -40; k <= 40; ++k) s[g.flat_index({2 * k, 0, 0})] = f.spectrum()[g.flat_index({k, 0, 0})];
  const ScalarField f2 = ScalarField::from_spectrum(g, s);
  for (int q = P.q_min(); q < P.q_max(); ++q) {
    EXPECT_NEAR(block_lp_norm(P, f2, q + 1, 2.0, true), block_lp_norm(P, f, q, 2.0, true), 1e-13) << q;
  }
}

TEST(CheminLerner, TimeConstantAndSeparable) {
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  const ScalarField f = unit_mode(g, 35);
  const std::vector<double> t{0.0, 0.1, 0.3, 0.4};
  const std::vector<ScalarField> same(4, f);
  EXPECT_NEAR(chemin_lerner_norm(P, t, same, kInf, 1.5, 2.0, 1.0, true).value,
              besov_norm(P, f, 1.5, 2.0, 1.0, true).value, 1e-13);
  std::vector<ScalarField> sep;
  double trap = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) sep.push_back(std::cos(t[i]) * f);
  for (std::size_t i = 1; i < t.size(); ++i) {
    trap += 0.5 * (t[i] - t[i - 1]) * (std::pow(std::cos(t[i]), 2) + std::pow(std::cos(t[i - 1]), 2));
  }
  EXPECT_NEAR(chemin_lerner_norm(P, t, sep, 2.0, 1.5, 2.0, 1.0, true).value, std::exp2(3.0) * std::sqrt(trap), 1e-12);
  EXPECT_THROW(chemin_lerner_norm(P, {0.0}, {f}, 2.0, 1.5, 2.0, 1.0, true), ConfigError);
  EXPECT_NEAR(chemin_lerner_norm(P, {0.0}, {f}, kInf, 1.5, 2.0, 1.0, true).value,
              besov_norm(P, f, 1.5, 2.0, 1.0, true).value, 1e-13);
}

TEST(CheminLerner, MinkowskiOrdering) {
  const PeriodicGrid g(1, 128);
  const DyadicPartition P(g);
  Rng rng(8);
  std::vector<double> t;
  std::vector<ScalarField> series;
  const ScalarField a = random_smooth_field(g, rng), b = random_smooth_field(g, rng);
  for (int i = 0; i <= 20; ++i) {
    const double s = 0.05 * i;
    t.push_back(s);
    series.push_back(std::cos(3 * s) * a + std::sin(5 * s) * b);
  }
  const double tilde = chemin_lerner_norm(P, t, series, 2.0, 1.0, 2.0, 1.0, false).value;
  const double plain = bochner_norm(P, t, series, 2.0, 1.0, 2.0, 1.0, false);
  EXPECT_GE(tilde, plain);
}

TEST(Bernstein, SingleModeAndZerothOrder) {
  const PeriodicGrid g(1, 256);
  Rng rng(1);
  const ScalarField f = pure_mode(g, {12, 0, 0}, 0.7, 0.4);
  const double xi = 12.0 / g.period();
  const auto r = bernstein_ratio(f, 1, 2.0, 2.0, xi, SpectralRegion::annulus, 0.9, 1.1);
  EXPECT_NEAR(r.upper, kTwoPi, 1e-12);
  EXPECT_NEAR(r.lower, kTwoPi, 1e-12);
  const auto r0 = bernstein_ratio(f, 0, 2.0, 2.0, xi, SpectralRegion::ball, 0.0, 1.1);
  EXPECT_NEAR(r0.upper, 1.0, 1e-14);
  EXPECT_THROW(bernstein_ratio(f, 1, 2.0, 2.0, xi, SpectralRegion::annulus, 1.5, 2.0), ValidationError);
}

TEST(Embedding, Cases) {
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  Rng rng(2);
  const ScalarField f = random_smooth_field(g, rng, 1.0, 60);
  const auto mono = embedding_check(P, f, 1.0, 1.0, 1.0, 2.0);
  EXPECT_TRUE(mono.asserted);
  EXPECT_TRUE(mono.holds);
  EXPECT_LE(mono.ratio, 1.0);
  // k = 70 sits at 2^-3 xi ~ 1.393, inside Phi_3 = 1.
  EXPECT_NEAR(embedding_check(P, unit_mode(g, 70), 2.0, 1.0, 1.0, 1.0).ratio, 0.125, 1e-12);
  // k = 9 sits at xi ~ 1.432, inside Phi_0 = 1.
  EXPECT_NEAR(embedding_check(P, unit_mode(g, 9), 2.5, 0.5, 1.0, 1.0).ratio, 1.0, 1e-12);
}

TEST(SpaceEquivalence, Cases) {
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  const ScalarField f = unit_mode(g, 35);
  const std::vector<double> t{0.0, 0.5, 1.0};
  const auto rep = space_equivalence_check(P, t, {f, f, f}, 2.0, 1.5, 2.0, 1.0);
  EXPECT_NEAR(rep.inhomogeneous, rep.homogeneous, 1e-13);
  const ScalarField z = ScalarField::zero(g);
  const auto zero = space_equivalence_check(P, t, {z, z, z}, 2.0, 1.5, 2.0, 1.0);
  EXPECT_EQ(zero.lebesgue, 0.0);
  EXPECT_EQ(zero.homogeneous, 0.0);
  EXPECT_EQ(zero.inhomogeneous, 0.0);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_THROW(space_equivalence_check(P, t, {f, f, f}, 1.0, 1.5, 2.0, 2.0), PreconditionError);
}

TEST(SpaceEquivalence, FittedConstantStableUnderRefinement) {
  auto worst = [](int M) {
    const PeriodicGrid g(1, M);
    const DyadicPartition P(g);
    double upper = 0.0, lower = 0.0;
    for (int i = 0; i < 10; ++i) {
      Rng rng(100 + i);
      const ScalarField a = random_smooth_field(g, rng, 2.0, 20), b = random_smooth_field(g, rng, 2.0, 20);
      std::vector<double> t;
      std::vector<ScalarField> series;
      for (int k = 0; k <= 10; ++k) {
        t.push_back(0.1 * k);
        series.push_back(add_constant(std::exp(-t.back()) * a + t.back() * b, 0.3));
      }
      const auto r = space_equivalence_check(P, t, series, 2.0, 1.5, 2.0, 1.0);
      upper = std::max(upper, r.upper);
      lower = std::max(lower, r.lower);
    }
    return std::pair{upper, lower};
  };
  const auto [u1, l1] = worst(128);
  const auto [u2, l2] = worst(256);
  EXPECT_NEAR(u2 / u1, 1.0, 0.2);
  EXPECT_NEAR(l2 / l1, 1.0, 0.2);
}

TEST(Inequalities, ProductAndCompositionHaveUniformConstants) {
  const PeriodicGrid g(1, 256);
  const DyadicPartition P(g);
  double prod = 0.0, comp = 0.0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(40 + i);
    const ScalarField f = random_smooth_field(g, rng, 2.0, 24), h = random_smooth_field(g, rng, 2.0, 24);
    prod = std::max(prod, product_check(P, f, h, 1.5, 1.0).ratio);
    comp = std::max(comp, composition_check(P, 0.3 * f, [](double x) { return std::expm1(x); }, 1.5, 1.0).ratio);
  }
  EXPECT_GT(prod, 0.0);
  EXPECT_LT(prod, 10.0);
  EXPECT_GT(comp, 0.0);
  EXPECT_LT(comp, 10.0);
}
