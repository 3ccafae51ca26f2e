#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "wander/heights.hpp"

using namespace wander;
using namespace wander::testing;

namespace {

ResidueMap rmap(const std::string& num, const std::string& den = "1", Field f = kQ) {
  return ResidueMap(kpoly(num, f), kpoly(den, f));
}

ResiduePoint q(long a, long b = 1) { return ResiduePoint(ResidueScalar(kQ, mpq_class(a, b))); }

// Independent oracle: exhaustive forward-orbit comparison.
bool brute_force_collision(const ResidueMap& phi, ResiduePoint x, ResiduePoint y, int depth) {
  std::vector<ResiduePoint> xs{x}, ys{y};
  for (int i = 0; i < depth; ++i) {
    xs.push_back(phi(xs.back()));
    ys.push_back(phi(ys.back()));
  }
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      if (a == b) return true;
    }
  }
  return false;
}

double to_double(const mpq_class& x) { return x.get_d(); }

}  // namespace

TEST(StandardHeight, Examples) {
  EXPECT_EQ(standard_height(q(3, 2)).multiplicative, 3);
  EXPECT_EQ(standard_height(q(0)).multiplicative, 1);
  EXPECT_EQ(standard_height(q(26, 5)).multiplicative, 26);
  EXPECT_EQ(standard_height(ResiduePoint::infinity(kQ)).multiplicative, 1);
  EXPECT_NEAR(standard_height(q(3, 2)).log(), std::log(3.0), 1e-12);
}

TEST(FunctionFieldHeight, Examples) {
  EXPECT_EQ(function_field_height(ValuedPoint(K("(T^2+1)/T"))), 2);
  EXPECT_EQ(function_field_height(ValuedPoint(K("5"))), 0);
  EXPECT_EQ(function_field_height(ValuedPoint(K("T^3"))), 3);
  EXPECT_EQ(function_field_height_value(ValuedPoint(K("T^3"))).multiplicative, 8);
}

TEST(HeightGap, Examples) {
  const auto sq = height_gap_constants(rmap("z^2"));
  EXPECT_EQ(sq.B_up, 1);
  EXPECT_EQ(sq.B_low, 1);
  EXPECT_EQ(sq.samples_verified, 100);
  const auto plus1 = height_gap_constants(rmap("z^2+1"));
  EXPECT_LE(plus1.B_up, 4);
  EXPECT_LE(plus1.B_low, 4);
  const auto minus1 = height_gap_constants(rmap("z^2-1"));
  EXPECT_GE(minus1.B(), 1);
  EXPECT_THROW(height_gap_constants(rmap("z+1")), Error);
}

TEST(HeightGap, IndependentSampleOracle) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 5000);
  for (const auto& [n, d] : std::vector<std::pair<std::string, std::string>>{
           {"z^2", "1"}, {"z^2+1", "1"}, {"z^2-1", "1"}, {"z^3-2*z", "1"},
           {"(z^2+1)", "z"}, {"z^2+z", "2*z-3"}, {"1/3*z^3 + 1/2", "z^2 - 7"}}) {
    const ResidueMap phi = rmap(n, d);
    const auto c = height_gap_constants(phi);
    for (int i = 0; i < 100; ++i) {
      const ResiduePoint x = q(num(rng), den(rng));
      mpz_class h = standard_height(x).multiplicative, hd;
      mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(phi.degree()));
      const mpz_class hy = standard_height(phi(x)).multiplicative;
      EXPECT_LE(hy, c.B_up * hd) << n << "/" << d << " at " << x;
      EXPECT_LE(hd, c.B_low * hy) << n << "/" << d << " at " << x;
    }
  }
}

TEST(CanonicalHeight, PurePowerIsExact) {
  const ResidueMap sq = rmap("z^2");
  for (int depth : {0, 3, 6}) {
    const auto iv = canonical_height_interval(sq, q(2), depth);
    EXPECT_TRUE(iv.exact);
    EXPECT_LE(to_double(iv.lo), std::log(2.0));
    EXPECT_GE(to_double(iv.hi), std::log(2.0));
    EXPECT_LT(to_double(iv.hi - iv.lo), 1e-10);
  }
  // hhat(phi(2)) = 2 hhat(2), multiplicatively H(4) = H(2)^2.
  const auto a = canonical_height_interval(sq, q(2), 0);
  const auto b = canonical_height_interval(sq, q(4), 0);
  EXPECT_EQ(b.orbit_height, a.orbit_height * a.orbit_height);
}

TEST(CanonicalHeight, ZSquaredPlusOneDepthFour) {
  const ResidueMap phi = rmap("z^2+1");
  const auto c = height_gap_constants(phi);
  const auto iv = canonical_height_interval(phi, q(1), 4, c);
  EXPECT_EQ(iv.orbit_height, 677);
  const double center = std::log(677.0) / 16.0;
  EXPECT_LE(to_double(iv.lo), center);
  EXPECT_GE(to_double(iv.hi), center);
  const double bound = 2.0 * std::log(c.B().get_d()) / 16.0;
  EXPECT_LE(to_double(iv.hi - iv.lo), bound + 1e-9);
}

TEST(CanonicalHeight, PeriodicPointApproachesZero) {
  const ResidueMap phi = rmap("z^2-1");
  const auto iv = canonical_height_interval(phi, q(0), 10);
  EXPECT_EQ(iv.lo, 0);
  EXPECT_LT(to_double(iv.hi), 0.01);
  EXPECT_FALSE(iv.certifies_positive());
}

TEST(CanonicalHeight, FunctionalEquation) {
  for (const char* f : {"z^2+1", "z^2-1", "z^3-2*z", "2*z^2-3"}) {
    const ResidueMap phi = rmap(f);
    const auto c = height_gap_constants(phi);
    const int d = phi.degree();
    for (const ResiduePoint& x : {q(2), q(1, 3), q(-5, 2)}) {
      const auto outer = canonical_height_interval(phi, phi(x), 3, c);
      const auto inner = canonical_height_interval(phi, x, 4, c);
      EXPECT_EQ(outer.orbit_height, inner.orbit_height);
      EXPECT_NEAR(to_double(outer.hi), d * to_double(inner.hi), 1e-9);
      if (inner.lo > 0) EXPECT_NEAR(to_double(outer.lo), d * to_double(inner.lo), 1e-9);
    }
  }
}

TEST(CanonicalHeight, OrbitOverflow) {
  const ResidueMap phi = rmap("z^2+1");
  try {
    canonical_height_interval(phi, q(3), 20, height_gap_constants(phi), 4096);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OrbitOverflow);
  }
}

TEST(Preperiodicity, Examples) {
  auto r = preperiodicity_test(rmap("z^2-1"), q(0));
  EXPECT_EQ(r.kind, PreperiodicityResult::Kind::Preperiodic);
  EXPECT_EQ(r.tail, 0);
  EXPECT_EQ(r.period, 2);

  r = preperiodicity_test(rmap("z^2-1"), q(2));
  EXPECT_EQ(r.kind, PreperiodicityResult::Kind::Wandering);
  ASSERT_TRUE(r.proof.has_value());
  EXPECT_TRUE(r.proof->certifies_positive());
  EXPECT_GT(r.proof->lo, 0);

  // 2 -> 4 -> 1 -> 1 over F_5: 4 is not periodic, so the tail is 2.
  const Field f5 = Field::prime(5);
  r = preperiodicity_test(rmap("z^2", "1", f5), ResiduePoint(ResidueScalar(f5, 2)));
  EXPECT_EQ(r.kind, PreperiodicityResult::Kind::Preperiodic);
  EXPECT_EQ(r.tail, 2);
  EXPECT_EQ(r.period, 1);
}

TEST(Preperiodicity, DegreeOneClosedForm) {
  EXPECT_EQ(preperiodicity_test(rmap("z+1"), q(0)).kind, PreperiodicityResult::Kind::Wandering);
  EXPECT_EQ(preperiodicity_test(rmap("z+1"), ResiduePoint::infinity(kQ)).label(),
            "Preperiodic(tail 0, period 1)");
  EXPECT_EQ(preperiodicity_test(rmap("2*z"), q(0)).label(), "Preperiodic(tail 0, period 1)");
  EXPECT_EQ(preperiodicity_test(rmap("2*z"), q(3)).kind, PreperiodicityResult::Kind::Wandering);
  EXPECT_EQ(preperiodicity_test(rmap("-z"), q(3)).label(), "Preperiodic(tail 0, period 2)");
  // z -> -1/(z+1) has order 3.
  EXPECT_EQ(preperiodicity_test(rmap("-1", "z+1"), q(0)).label(),
            "Preperiodic(tail 0, period 3)");
  EXPECT_EQ(preperiodicity_test(rmap("z"), q(7)).label(), "Preperiodic(tail 0, period 1)");
}

TEST(Preperiodicity, FiniteFieldsAreAlwaysPreperiodic) {
  std::mt19937 rng(32);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const Field f = Field::prime(p);
    std::uniform_int_distribution<long> coef(0, p - 1);
    int maps = 0;
    while (maps < 20) {
      std::vector<ResidueScalar> a, b;
      for (int i = 0; i <= 3; ++i) {
        a.emplace_back(f, coef(rng));
        b.emplace_back(f, coef(rng));
      }
      try {
        const ResidueMap phi(ResiduePoly(f, a), ResiduePoly(f, b));
        for (std::uint32_t v = 0; v < p; ++v) {
          const auto r = preperiodicity_test(phi, ResiduePoint(ResidueScalar(f, long(v))));
          ASSERT_EQ(r.kind, PreperiodicityResult::Kind::Preperiodic);
        }
        EXPECT_EQ(preperiodicity_test(phi, ResiduePoint::infinity(f)).kind,
                  PreperiodicityResult::Kind::Preperiodic);
        ++maps;
      } catch (const Error&) {
        // constant or zero denominator; draw again
      }
    }
  }
}

TEST(GrandOrbit, Examples) {
  const ResidueMap sq = rmap("z^2");
  auto v = distinct_grand_orbit_certificate(sq, q(2), q(4));
  EXPECT_EQ(v.label(), "SameOrbit(1, 0)");
  v = distinct_grand_orbit_certificate(sq, q(2), q(3));
  EXPECT_EQ(v.kind, GrandOrbitVerdict::Kind::DistinctCertified);
  ASSERT_TRUE(v.window.has_value());
  EXPECT_FALSE(brute_force_collision(sq, q(2), q(3), 8));

  // phi(1) = 2 for z^2 + 1, so these share a grand orbit.
  v = distinct_grand_orbit_certificate(rmap("z^2+1"), q(1), q(2));
  EXPECT_EQ(v.label(), "SameOrbit(1, 0)");
  v = distinct_grand_orbit_certificate(rmap("z^2+1"), q(1), q(3));
  EXPECT_EQ(v.kind, GrandOrbitVerdict::Kind::DistinctCertified);
  EXPECT_FALSE(brute_force_collision(rmap("z^2+1"), q(1), q(3), 8));

  // Equal canonical heights cannot be separated by a window.
  v = distinct_grand_orbit_certificate(sq, q(2), q(1, 2));
  EXPECT_EQ(v.kind, GrandOrbitVerdict::Kind::Inconclusive);
  // -2 and 2 collide after one step.
  EXPECT_EQ(distinct_grand_orbit_certificate(sq, q(-2), q(2)).label(), "SameOrbit(1, 1)");
}

TEST(GrandOrbit, WindowEvidenceIsConsistent) {
  const ResidueMap phi = rmap("z^2-1");
  const auto v = distinct_grand_orbit_certificate(phi, q(2), q(5));
  ASSERT_EQ(v.kind, GrandOrbitVerdict::Kind::DistinctCertified);
  const WindowEvidence& w = *v.window;
  const double lw = std::log(w.w.get_d());
  for (const auto* iv : {&w.x_interval, &w.y_interval}) {
    EXPECT_GT(to_double(iv->lo), lw - 1e-9);
    EXPECT_LE(to_double(iv->hi), 2 * lw + 1e-9);
  }
  EXPECT_TRUE(w.x_interval.hi < w.y_interval.lo || w.y_interval.hi < w.x_interval.lo);
}

TEST(GrandOrbit, OracleAgreement) {
  for (const char* f : {"z^2", "z^2+1", "z^2-2", "z^3+z"}) {
    const ResidueMap phi = rmap(f);
    const std::vector<ResiduePoint> pts{q(2), q(3), q(1, 2), q(-3), q(5, 3), q(9), q(4)};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto v = distinct_grand_orbit_certificate(phi, pts[i], pts[j]);
        if (v.kind == GrandOrbitVerdict::Kind::DistinctCertified) {
          EXPECT_FALSE(brute_force_collision(phi, pts[i], pts[j], 8)) << f;
        }
        if (v.kind == GrandOrbitVerdict::Kind::SameOrbit) {
          ResiduePoint a = pts[i], b = pts[j];
          for (int k = 0; k < v.m; ++k) a = phi(a);
          for (int k = 0; k < v.n; ++k) b = phi(b);
          EXPECT_EQ(a, b);
        }
      }
    }
  }
}

TEST(GrandOrbit, DegreeOne) {
  const ResidueMap t = rmap("z+1");
  EXPECT_EQ(distinct_grand_orbit_certificate(t, q(-3), q(1)).label(), "SameOrbit(4, 0)");
  EXPECT_EQ(distinct_grand_orbit_certificate(t, q(1, 2), q(1)).kind,
            GrandOrbitVerdict::Kind::DistinctCertified);
  EXPECT_EQ(distinct_grand_orbit_certificate(t, q(100), q(-100)).label(), "SameOrbit(0, 200)");
  const ResidueMap s = rmap("2*z");
  EXPECT_EQ(distinct_grand_orbit_certificate(s, q(3), q(6)).label(), "SameOrbit(1, 0)");
  EXPECT_EQ(distinct_grand_orbit_certificate(s, q(3), q(5)).kind,
            GrandOrbitVerdict::Kind::DistinctCertified);
  EXPECT_EQ(distinct_grand_orbit_certificate(s, q(3), q(3, 64)).label(), "SameOrbit(0, 6)");
  // Fixed point 1 of z -> 2z - 1 moves to infinity in adapted coordinates.
  const ResidueMap a = rmap("2*z-1");
  EXPECT_EQ(distinct_grand_orbit_certificate(a, q(3), q(5)).label(), "SameOrbit(1, 0)");
  EXPECT_EQ(distinct_grand_orbit_certificate(a, q(3), q(4)).kind,
            GrandOrbitVerdict::Kind::DistinctCertified);
  // A Mobius map whose fixed points are irrational.
  EXPECT_EQ(distinct_grand_orbit_certificate(rmap("1", "z+1"), q(5), q(7)).kind,
            GrandOrbitVerdict::Kind::Inconclusive);
}

TEST(WanderingRepresentatives, PurePower) {
  const auto fam = wandering_representatives(rmap("z^2"), 3);
  ASSERT_EQ(fam.points.size(), 3u);
  EXPECT_EQ(fam.points[0], q(2));
  EXPECT_EQ(fam.points[1], q(3));
  EXPECT_EQ(fam.points[2], q(5));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_EQ(fam.verdicts[i][j].kind, GrandOrbitVerdict::Kind::DistinctCertified);
      EXPECT_FALSE(brute_force_collision(rmap("z^2"), fam.points[i], fam.points[j], 10));
    }
  }
}

TEST(WanderingRepresentatives, OtherMaps) {
  const auto fam = wandering_representatives(rmap("z^2+1"), 2);
  ASSERT_EQ(fam.points.size(), 2u);
  EXPECT_EQ(fam.verdicts[1][0].kind, GrandOrbitVerdict::Kind::DistinctCertified);
  EXPECT_FALSE(brute_force_collision(rmap("z^2+1"), fam.points[0], fam.points[1], 8));
  EXPECT_EQ(wandering_representatives(rmap("z^3-z"), 1).points.size(), 1u);
  HeightOptions tiny;
  tiny.max_candidates = 3;
  try {
    wandering_representatives(rmap("z^2"), 2, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchBudgetExhausted);
  }
}

TEST(RationalsOfHeight, Order) {
  const auto h1 = rationals_of_height(1);
  ASSERT_EQ(h1.size(), 4u);
  EXPECT_TRUE(h1[3].is_infinity());
  const auto h4 = rationals_of_height(4);
  ASSERT_EQ(h4.size(), 8u);
  EXPECT_EQ(h4[0], q(4));
  EXPECT_EQ(h4[1], q(1, 4));
  EXPECT_EQ(h4[2], q(4, 3));
  EXPECT_EQ(h4[4], q(-4));
}

TEST(DegreeOneFamily, Examples) {
  auto fam = degree_one_family(mpq_class(2), 3);
  EXPECT_EQ(fam.points, (std::vector<mpz_class>{3, 5, 7}));
  EXPECT_EQ(fam.verified_depth, 12);
  fam = degree_one_family(mpq_class(3, 2), 2);
  EXPECT_EQ(fam.points, (std::vector<mpz_class>{5, 7}));
  try {
    degree_one_family(mpq_class(-1), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RootOfUnity);
  }
}
