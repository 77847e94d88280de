#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "gapforge/error.hpp"
#include "gapforge/gapverify/gapverify.hpp"
#include "domain_oracles.hpp"
#include "oracles.hpp"

using namespace gapforge;
using namespace oracle;


TEST(Builtins, Shapes) {
  GapInstance x = builtin_three_xor();
  EXPECT_EQ(x.constraints.size(), 8U);
  GapInstance g = builtin_glst();
  EXPECT_EQ(g.constraints.size(), 2U);
  EXPECT_EQ(g.bias.pair(2, 3), -1);
  EXPECT_EQ(builtin_instance("glst"), g);
  EXPECT_THROW(builtin_instance("nope"), InvalidArgument);
}

TEST(VerifyGap, ThreeXorPasses) {
  GapReport r = verify_perfect_gap(builtin_three_xor());
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.constant, 0);
  EXPECT_EQ(brute_force_constant_sum(builtin_three_xor()), Rational(0));
}

TEST(VerifyGap, GlstPasses) {
  GapReport r = verify_perfect_gap(builtin_glst());
  EXPECT_TRUE(r.moments_ok);
  EXPECT_TRUE(r.support_ok);
  EXPECT_TRUE(r.psd_ok);
  EXPECT_TRUE(r.constant_ok);
  EXPECT_EQ(r.constant, 0);
}

TEST(VerifyGap, DeletedConstraintBreaksConstancy) {
  GapInstance inst = builtin_three_xor();
  inst.constraints.pop_back();
  inst.dists.pop_back();
  GapReport r = verify_perfect_gap(inst);
  EXPECT_TRUE(r.moments_ok && r.support_ok && r.psd_ok);
  ASSERT_FALSE(r.constant_ok);
  ASSERT_TRUE(r.nonconstant_subset);
  EXPECT_EQ(*r.nonconstant_subset, (GlobalSubset{0, 1, 2}));
  EXPECT_EQ(r.nonconstant_coefficient, sum_coefficient(inst, *r.nonconstant_subset));
  EXPECT_NE(r.nonconstant_coefficient, 0);
  EXPECT_FALSE(brute_force_constant_sum(inst));
}

TEST(VerifyGap, MomentMismatchNamesThePair) {
  GapInstance inst = builtin_glst();
  inst.bias.set_pair(0, 1, Rational(1, 2));
  GapReport r = verify_perfect_gap(inst);
  ASSERT_FALSE(r.moments_ok);
  EXPECT_EQ(r.moment_failure->i, 0);
  EXPECT_EQ(r.moment_failure->j, 1);
  EXPECT_EQ(r.moment_failure->expected, Rational(1, 2));
  EXPECT_EQ(r.moment_failure->actual, 0);
}

TEST(VerifyGap, UnsatisfiedSupportPoint) {
  GapInstance inst = builtin_glst();
  // (1,1,1,1): x1 = 1 gives -x2 x4 = -1.
  inst.dists[0][0].first = 0b1111;
  GapReport r = verify_perfect_gap(inst);
  ASSERT_FALSE(r.support_ok);
  EXPECT_EQ(r.support_failure->assignment, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(r.support_failure->constraint, inst.constraints[0]);
}

TEST(VerifyGap, NonPsdBiasHasWitness) {
  GapInstance inst = builtin_three_xor();
  inst.bias.set_pair(0, 1, 1);
  inst.bias.set_pair(0, 2, 1);
  inst.bias.set_pair(1, 2, -1);
  GapReport r = verify_perfect_gap(inst);
  ASSERT_FALSE(r.psd_ok);
  EXPECT_FALSE(r.moments_ok);
  EXPECT_LT(r.psd_value, 0);
  EXPECT_EQ(inst.bias.bordered_matrix().quadratic_form(r.psd_witness), r.psd_value);
}

TEST(VerifyGap, RejectsMalformedInstances) {
  GapInstance bad = builtin_glst();
  bad.dists[1][0].second = Rational(1, 2);
  EXPECT_THROW(verify_perfect_gap(bad), InvalidArgument);
  bad = builtin_glst();
  bad.constraints[0].phi = {0, 1, 2, 4};
  EXPECT_THROW(verify_perfect_gap(bad), InvalidArgument);
  bad = builtin_glst();
  bad.dists.pop_back();
  EXPECT_THROW(verify_perfect_gap(bad), DimensionMismatch);
}

TEST(VerifyGap, AlgebraicConstancyMatchesEnumeration) {
  std::mt19937_64 rng(7);
  int constant_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GapInstance inst = random_instance(rng, 4 + trial % 3, 1 + trial % 4);
    GapReport r = verify_perfect_gap(inst);
    std::optional<Rational> brute = brute_force_constant_sum(inst);
    ASSERT_EQ(r.constant_ok, brute.has_value());
    if (brute) {
      ++constant_cases;
      EXPECT_EQ(r.constant * static_cast<long>(inst.constraints.size()), *brute);
    } else {
      EXPECT_EQ(r.nonconstant_coefficient, sum_coefficient(inst, *r.nonconstant_subset));
    }
  }
  EXPECT_GT(constant_cases, 0);
}

TEST(VerifyGap, ConstraintOrderDoesNotMatter) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    GapInstance inst = random_instance(rng, 5, 4);
    GapReport base = verify_perfect_gap(inst);
    std::vector<std::size_t> order(inst.constraints.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    GapInstance perm = inst;
    for (std::size_t a = 0; a < order.size(); ++a) {
      perm.constraints[a] = inst.constraints[order[a]];
      perm.dists[a] = inst.dists[order[a]];
    }
    EXPECT_EQ(verify_perfect_gap(perm), base);
  }
}

TEST(VerifyGap, RecomputedBiasIsIdempotent) {
  for (GapInstance inst : {builtin_three_xor(), builtin_glst()}) {
    GapReport before = verify_perfect_gap(inst);
    ASSERT_TRUE(before.pass());
    inst.bias = bias_from_distributions(inst);
    EXPECT_EQ(verify_perfect_gap(inst), before);
  }
}

TEST(Vanish, ThreeXorAllLevels) {
  GapInstance inst = builtin_three_xor();
  for (int t = 1; t <= 3; ++t) {
    EXPECT_TRUE(ktw_vanish_check(inst, t).vanished) << t;
    EXPECT_TRUE(oracle_vanishes(inst, t));
  }
}

TEST(Vanish, GlstAllLevelsBothOrders) {
  VanishReport r = ktw_vanish_report(builtin_glst(), 4);
  ASSERT_EQ(r.levels.size(), 4U);
  EXPECT_TRUE(r.vanished());
  for (int t = 1; t <= 4; ++t) EXPECT_TRUE(oracle_vanishes(builtin_glst(), t));
  EXPECT_EQ(r.levels, r.alternate_levels);
}

TEST(Vanish, PerturbedPointFails) {
  GapInstance inst = builtin_glst();
  std::vector<FourierTable> tables = {fourier_transform(inst.predicates[0])};
  std::vector<PolytopePoint> points = {signed_bias_point(inst, 0), signed_bias_point(inst, 1)};
  // x2 x3 carries a nonzero coefficient; moving both of its first moments leaves an atom at t = 2.
  points[0].coords[1] = Rational(1, 3);
  points[0].coords[2] = Rational(-1, 5);
  bool failed = false;
  for (int t = 1; t <= 4; ++t) {
    VanishLevel a = vanish_level(points, {&tables[0], &tables[0]}, t, VanishOrder::PermuteThenNegate);
    VanishLevel b = vanish_level(points, {&tables[0], &tables[0]}, t, VanishOrder::NegateThenPermute);
    EXPECT_EQ(a, b);
    if (!a.vanished) {
      failed = true;
      EXPECT_EQ(t, 2);
      EXPECT_EQ(a.atom.size(), polytope_dimension(t));
      EXPECT_NE(a.residual, 0);
    }
  }
  EXPECT_TRUE(failed);
}

TEST(Vanish, PerturbedBiasAgreesWithOracle) {
  // Changing a global bias entry moves every constraint's point together.
  GapInstance inst = builtin_three_xor();
  inst.bias.set_single(0, Rational(1, 2));
  for (int t = 1; t <= 3; ++t) EXPECT_EQ(ktw_vanish_check(inst, t).vanished, oracle_vanishes(inst, t)) << t;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    GapInstance r = random_instance(rng, 4, 3);
    for (int i = 0; i < 4; ++i) r.bias.set_single(i, oracle::random_small_rational(rng, 1, 2));
    for (int t = 1; t <= 3; ++t) {
      EXPECT_EQ(ktw_vanish_check(r, t).vanished, oracle_vanishes(r, t));
      EXPECT_EQ(ktw_vanish_check(r, t).vanished, ktw_vanish_check(r, t, VanishOrder::NegateThenPermute).vanished);
    }
  }
}

TEST(Vanish, ArityCap) {
  GapInstance inst;
  inst.n = 7;
  inst.predicates = {Predicate::parity(7)};
  inst.bias = BiasProfile(7);
  inst.constraints = {Constraint{0, {0, 1, 2, 3, 4, 5, 6}, std::vector<int>(7, 1)}};
  inst.dists = {{{0b1111111, 1}}};
  EXPECT_THROW(ktw_vanish_check(inst, 1), CapExceeded);
}
