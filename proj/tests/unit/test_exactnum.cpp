#include <gtest/gtest.h>

#include <random>

#include "gapforge/error.hpp"
#include "gapforge/exactnum/hull.hpp"
#include "gapforge/exactnum/psd.hpp"
#include "oracles.hpp"

using namespace gapforge;

TEST(Rational, StaysInLowestTerms) {
  Rational r = make_rational(6, 8);
  EXPECT_EQ(r.get_num(), 3);
  EXPECT_EQ(r.get_den(), 4);
  Rational s = r + make_rational(1, 4);
  EXPECT_EQ(to_string(s), "1");
  EXPECT_EQ(to_string(make_rational(-10, 4)), "-5/2");
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("-5/2"), make_rational(-5, 2));
  EXPECT_EQ(parse_rational("4/2"), Rational(2));
  EXPECT_EQ(parse_rational("1.5"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-0.25"), make_rational(-1, 4));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
}

TEST(Rational, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational r = oracle::random_small_rational(rng, 1000, 97);
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(Rational, DominatingMultiplier) {
  EXPECT_EQ(dominating_multiplier(2, 2), 2);
  EXPECT_EQ(dominating_multiplier(make_rational(5, 2), 1), 3);
  EXPECT_THROW(dominating_multiplier(1, 0), InvalidArgument);
}

TEST(SymMatrix, StoresUpperTriangleSymmetrically) {
  SymMatrix m(3);
  m.at(2, 0) = 5;
  EXPECT_EQ(m(0, 2), 5);
  EXPECT_EQ(m(2, 0), 5);
  EXPECT_THROW(m(3, 0), DimensionMismatch);
  EXPECT_EQ(SymMatrix::identity(3).quadratic_form({1, 2, 3}), 14);
}

TEST(Psd, IdentityIsPsd) { EXPECT_TRUE(psd_check(SymMatrix::identity(3)).psd); }

TEST(Psd, SingularRankOneIsPsd) {
  EXPECT_TRUE(psd_check(SymMatrix::from_rows({{1, -1}, {-1, 1}})).psd);
}

TEST(Psd, IndefiniteGivesWitness) {
  PsdResult r = psd_check(SymMatrix::from_rows({{1, 2}, {2, 1}}));
  ASSERT_FALSE(r.psd);
  EXPECT_EQ(r.witness, (std::vector<Rational>{1, -1}));
  EXPECT_EQ(r.witness_value, -2);
}

TEST(Psd, ZeroPivotWithNonzeroRowIsNotPsd) {
  PsdResult r = psd_check(SymMatrix::from_rows({{0, 1, 0}, {1, 5, 0}, {0, 0, 1}}));
  ASSERT_FALSE(r.psd);
  EXPECT_LT(SymMatrix::from_rows({{0, 1, 0}, {1, 5, 0}, {0, 0, 1}}).quadratic_form(r.witness), 0);
}

TEST(Psd, NeedsSchurComplementWitness) {
  // Every 2x2 principal minor is fine but the matrix is indefinite.
  auto rows = std::vector<std::vector<Rational>>{{1, make_rational(9, 10), make_rational(-9, 10)},
                                                 {make_rational(9, 10), 1, make_rational(9, 10)},
                                                 {make_rational(-9, 10), make_rational(9, 10), 1}};
  SymMatrix m = SymMatrix::from_rows(rows);
  PsdResult r = psd_check(m);
  ASSERT_FALSE(r.psd);
  EXPECT_EQ(m.quadratic_form(r.witness), r.witness_value);
  EXPECT_LT(r.witness_value, 0);
}

TEST(Psd, AgreesWithPrincipalMinorsOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::vector<Rational>> rows(4, std::vector<Rational>(4));
    const int k = kind(rng);
    if (k == 0) {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) rows[i][j] = rows[j][i] = oracle::random_small_rational(rng, 3, 2);
    } else {
      // Gram matrix of random vectors, rank at most k + 1: PSD and often singular.
      std::vector<std::vector<Rational>> vecs(4, std::vector<Rational>(static_cast<std::size_t>(k + 1)));
      for (auto& v : vecs)
        for (auto& x : v) x = oracle::random_small_rational(rng, 2, 2);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = dot(vecs[i], vecs[j]);
      if (trial % 3 == 0) rows[1][1] -= make_rational(1, 7);
    }
    SymMatrix m = SymMatrix::from_rows(rows);
    PsdResult r = psd_check(m);
    ASSERT_EQ(r.psd, oracle::psd_by_minors(rows)) << "trial " << trial;
    if (!r.psd) {
      EXPECT_LT(m.quadratic_form(r.witness), 0);
      EXPECT_EQ(m.quadratic_form(r.witness), r.witness_value);
    }
  }
}

TEST(Hull, QueryEqualToAPointGetsUnitWeight) {
  std::vector<std::vector<Rational>> pts{{1, 2}, {3, 4}, {0, 0}};
  HullResult r = hull_member({1, 2}, pts);
  ASSERT_TRUE(r.member);
  EXPECT_EQ(r.weights, (std::vector<Rational>{1, 0, 0}));
}

TEST(Hull, MidpointOfSegment) {
  HullResult r = hull_member({0}, {{-1}, {1}});
  ASSERT_TRUE(r.member);
  EXPECT_EQ(r.weights, (std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)}));
  EXPECT_TRUE(r.normal.empty());
}

TEST(Hull, OutsidePointGetsSeparatingHyperplane) {
  std::vector<std::vector<Rational>> pts{{0, 0}, {1, 0}, {0, 1}};
  HullResult r = hull_member({1, 1}, pts);
  ASSERT_FALSE(r.member);
  EXPECT_TRUE(r.weights.empty());
  EXPECT_TRUE(certificate_valid(r, {1, 1}, pts));
  EXPECT_GT(dot(r.normal, {1, 1}), r.offset);
}

TEST(Hull, DimensionMismatchThrows) {
  EXPECT_THROW(hull_member({0, 0}, {{1}, {2}}), DimensionMismatch);
}

TEST(Hull, EmptyPointSetIsNeverMember) {
  HullResult r = hull_member({3}, {});
  EXPECT_FALSE(r.member);
  EXPECT_TRUE(certificate_valid(r, {3}, {}));
}

namespace {

// Planar membership oracle: p lies in some triangle, segment or point (Caratheodory).
bool planar_member(const std::vector<Rational>& p, const std::vector<std::vector<Rational>>& pts) {
  auto cross = [](const std::vector<Rational>& o, const std::vector<Rational>& a, const std::vector<Rational>& b) {
    return Rational((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
  };
  auto on_segment = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
  };
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (pts[i] == p) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (on_segment(pts[i], pts[j])) return true;
      for (std::size_t l = j + 1; l < n; ++l) {
        Rational d1 = cross(pts[i], pts[j], p), d2 = cross(pts[j], pts[l], p), d3 = cross(pts[l], pts[i], p);
        bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
        bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
        if (!(has_neg && has_pos) && cross(pts[i], pts[j], pts[l]) != 0) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST(Hull, AgreesWithPlanarOracleAndCertificatesCheck) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<Rational>> pts(static_cast<std::size_t>(count(rng)));
    for (auto& q : pts) q = {coord(rng), coord(rng)};
    std::vector<Rational> p{make_rational(coord(rng), 2), make_rational(coord(rng), 2)};
    HullResult r = hull_member(p, pts);
    ASSERT_EQ(r.member, planar_member(p, pts)) << "trial " << trial;
    EXPECT_TRUE(certificate_valid(r, p, pts));
    EXPECT_NE(r.weights.empty(), r.normal.empty());
  }
}

TEST(Hull, DegenerateHigherDimensionalInstances) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coord(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<Rational>> pts(8, std::vector<Rational>(5));
    for (auto& q : pts)
      for (auto& x : q) x = coord(rng);
    std::vector<Rational> p(5);
    if (trial % 2 == 0) {
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 5; ++i) p[i] += pts[j][i] / 3;
    } else {
      for (auto& x : p) x = make_rational(coord(rng), 3);
    }
    HullResult r = hull_member(p, pts);
    EXPECT_TRUE(certificate_valid(r, p, pts));
    if (trial % 2 == 0) EXPECT_TRUE(r.member);
  }
}
