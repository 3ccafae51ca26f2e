#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wander/ratmap.hpp"

using namespace wander;
using namespace wander::testing;

namespace {

const char* kCorpus[] = {
    "(z^3 + (1+T)*z^2)/(z+1)",
    "z^2 + T/(z+1)",
    "z^3 + T/(z^2+z+1)",
    "z^2 + z + T",
    "T*z^2 + z + 1",
    "(z^2 + z + T)/z",
    "2*z*(z+T)*(z+T^2)/((z+2*T)*(z+T^3)*(T*z+1)^2)",
    "-z*(z+T)*(z+T^2)/((z-T)*(z+T^3)*(T*z+1)^2)",
    "T*z^3 + z^2 + z",
    "(z^2 - 2)/(z + T)",
    "(2*z^2 + T)/(3*z - 1)",
};

ValuedPoint pt(const std::string& s) { return parse_point(s, kQ); }

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_EQ(RatMap::normalize(Kpoly("z^2+z"), Kpoly("z+1")),
            RatMap::normalize(Kpoly("z"), Kpoly("1")));
  const RatMap ex = RatMap::normalize(Kpoly("T*z^2+z+1"), Kpoly("1"));
  EXPECT_EQ(ex.numerator(), Kpoly("T*z^2+z+1"));
  EXPECT_EQ(ex.denominator(), Kpoly("1"));
  const RatMap scaled = RatMap::normalize(Kpoly("T^2*z + T^3"), Kpoly("T^2"));
  EXPECT_EQ(scaled.numerator(), Kpoly("z+T"));
  EXPECT_EQ(scaled.denominator(), Kpoly("1"));
}

TEST(Normalize, Errors) {
  try {
    RatMap::normalize(Kpoly("z"), ValuedPoly(kQ));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  try {
    RatMap::normalize(Kpoly("2*z+2"), Kpoly("z+1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConstantMap);
  }
}

TEST(Normalize, IdempotentAndScaleInvariant) {
  std::mt19937 rng(21);
  for (const char* text : kCorpus) {
    const RatMap phi = map(text);
    EXPECT_EQ(min(min_valuation(phi.numerator()), min_valuation(phi.denominator())),
              ExtInt(0));
    EXPECT_EQ(RatMap::normalize(phi.numerator(), phi.denominator()), phi);
    ValuedScalar lambda = random_element(rng, kQ);
    while (lambda.is_zero()) lambda = random_element(rng, kQ);
    lambda *= ValuedScalar::t_power(kQ, 3);
    EXPECT_EQ(RatMap::normalize(phi.numerator() * lambda, phi.denominator() * lambda), phi)
        << text;
  }
}

TEST(Reduce, CancellingFactor) {
  const ReductionReport r = reduce(map("(z^3 + (1+T)*z^2)/(z+1)"));
  EXPECT_EQ(r.fbar, kpoly("z^3+z^2"));
  EXPECT_EQ(r.gbar, kpoly("z+1"));
  EXPECT_EQ(r.hbar, kpoly("z+1"));
  EXPECT_EQ(r.map().to_string(), "z^2");
  EXPECT_EQ(r.classification, Classification::Nontrivial);
  EXPECT_EQ(r.classification_label(), "Nontrivial(2)");
  ASSERT_EQ(r.bad_classes.size(), 1u);
  EXPECT_EQ(r.bad_classes[0], cls("-1"));
}

TEST(Reduce, CyclotomicAndGood) {
  const ReductionReport r = reduce(RatMap::normalize(Kpoly("z^3+z^2+T"), Kpoly("z+1")));
  EXPECT_EQ(r.map().to_string(), "z^2");
  EXPECT_EQ(r.classification_label(), "Nontrivial(2)");
  EXPECT_EQ(r.bad_classes, std::vector<ResidueClass>{cls("-1")});

  const ReductionReport good = reduce(map("z^2+z+T"));
  EXPECT_EQ(good.map().to_string(), "z^2 + z");
  EXPECT_EQ(good.classification, Classification::Good);
  EXPECT_TRUE(good.bad_classes.empty());
}

TEST(BadClasses, Examples) {
  EXPECT_EQ(bad_classes(map("(z^2+z+T)/z")), std::vector<ResidueClass>{cls("0")});
  const std::vector<ResidueClass> both{cls("0"), cls("inf")};
  EXPECT_EQ(bad_classes(map(kCorpus[6])), both);
  EXPECT_TRUE(bad_classes(map("z^2+z+T")).empty());
  try {
    bad_classes(map("z^2 - 1/T^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrivialReduction);
  }
}

TEST(BadClasses, GaloisCofactor) {
  // hbar = z^2 + 1 carries a Galois bad class.
  const RatMap phi = map("(z^2+1)*(z^2+T)/((z^2+1+T)*(z^2+2))");
  const ReductionReport r = reduce(phi);
  ASSERT_EQ(r.bad_classes.size(), 1u);
  EXPECT_EQ(r.bad_classes[0], cls("galois(z^2+1)"));
  EXPECT_EQ(r.bad_classes[0].point_count(), 2);
  EXPECT_TRUE(r.is_bad(cls("galois(z^2+1)")));
  EXPECT_FALSE(r.is_bad(cls("galois(z^2+2)")));
}

TEST(Reduce, GoodIffNoBadClasses) {
  for (const char* text : kCorpus) {
    const ReductionReport r = reduce(map(text));
    if (r.classification == Classification::Trivial) continue;
    EXPECT_EQ(r.classification == Classification::Good, r.bad_classes.empty()) << text;
    EXPECT_EQ(r.reduced_degree == r.map_degree, r.bad_classes.empty()) << text;
  }
}

TEST(Iterate, Examples) {
  EXPECT_EQ(iterate(map("z^2"), 3), map("z^8"));
  EXPECT_EQ(iterate(map("z^2+z+T"), 2), map("(z^2+z+T)^2 + (z^2+z+T) + T"));
  const RatMap intro = map(kCorpus[0]);
  const ReductionReport r1 = reduce(intro);
  const ReductionReport r2 = reduce(iterate(intro, 2));
  EXPECT_EQ(r2.map(), r1.map().compose(r1.map()));
  EXPECT_EQ(iterate(intro, 3).degree(), 27);
  try {
    iterate(intro, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeCapExceeded);
  }
  EXPECT_NO_THROW(iterate(intro, 4, 81));
}

TEST(Compose, AgreesWithPointwiseEvaluation) {
  std::mt19937 rng(22);
  for (const char* a : kCorpus) {
    for (const char* b : {"z^2+T", "(z+1)/(z-T)", "T*z^2 + z + 1"}) {
      const RatMap phi = map(a), psi = map(b);
      const RatMap both = compose(phi, psi);
      EXPECT_EQ(both.degree(), phi.degree() * psi.degree());
      for (int i = 0; i < 5; ++i) {
        const ValuedPoint x(random_element(rng, kQ));
        EXPECT_EQ(both(x), phi(psi(x))) << a << " o " << b << " at " << x;
      }
      EXPECT_EQ(both(ValuedPoint::infinity(kQ)), phi(psi(ValuedPoint::infinity(kQ))));
    }
  }
}

TEST(Reduce, Functoriality) {
  for (const char* a : kCorpus) {
    for (const char* b : kCorpus) {
      const RatMap phi = map(a), psi = map(b);
      if (phi.degree() * psi.degree() > 12) continue;
      const ReductionReport ra = reduce(phi), rb = reduce(psi);
      if (!ra.reduced_map || !rb.reduced_map) continue;
      const ReductionReport rc = reduce(compose(phi, psi));
      ASSERT_TRUE(rc.reduced_map.has_value()) << a << " o " << b;
      EXPECT_EQ(rc.map(), ra.map().compose(rb.map())) << a << " o " << b;
    }
  }
}

TEST(Conjugate, Examples) {
  // The conjugator that turns T z^2 + z + 1 into z^2 + z + T is z -> T z.
  const Mobius g(K("T"), K("0"), K("0"), K("1"));
  EXPECT_EQ(conjugate(map("T*z^2+z+1"), g), map("z^2+z+T"));
  // Conjugating by z -> z/T instead does not produce it.
  const Mobius h(K("1"), K("0"), K("0"), K("T"));
  EXPECT_NE(conjugate(map("T*z^2+z+1"), h), map("z^2+z+T"));
  EXPECT_EQ(conjugate(map("T*z^2+z+1"), h), map("T^2*z^2 + z + 1/T"));

  EXPECT_EQ(conjugate(map("z^2"), Mobius::identity(kQ)), map("z^2"));
  EXPECT_EQ(conjugate(map("z^2"), Mobius(K("0"), K("1"), K("1"), K("0"))), map("z^2"));
  EXPECT_THROW(Mobius(K("1"), K("2"), K("2"), K("4")), Error);
}

TEST(Conjugate, PointwiseOracle) {
  std::mt19937 rng(23);
  for (const char* text : kCorpus) {
    const RatMap phi = map(text);
    const Mobius g(K("1+T"), K("2"), K("T"), K("1"));
    const RatMap psi = conjugate(phi, g);
    EXPECT_EQ(psi.degree(), phi.degree());
    for (int i = 0; i < 5; ++i) {
      const ValuedPoint x(random_element(rng, kQ));
      EXPECT_EQ(psi(x), g(phi(g.inverse()(x)))) << text;
    }
  }
}

TEST(Conjugate, UnimodularPreservesClassification) {
  std::mt19937 rng(24);
  for (const char* text : kCorpus) {
    const RatMap phi = map(text);
    const std::string label = reduce(phi).classification_label();
    for (int trial = 0; trial < 4; ++trial) {
      ValuedScalar a = random_element(rng, kQ), b = random_element(rng, kQ),
                   c = random_element(rng, kQ), d = random_element(rng, kQ);
      const ValuedScalar det = a * d - b * c;
      if (det.is_zero() || det.valuation() != ExtInt(0)) continue;
      const RatMap psi = conjugate(phi, Mobius(a, b, c, d));
      EXPECT_EQ(reduce(psi).classification_label(), label) << text;
    }
  }
}

TEST(NormalizeConjugacy, Examples) {
  auto n1 = normalize_conjugacy(map("z^2"), pt("2"), 0, 1);
  EXPECT_EQ(n1.g.as_map(), map("(z-2)/2"));
  EXPECT_EQ(n1.psi, map("2*z^2+4*z+1"));
  EXPECT_EQ(n1.report.classification, Classification::Good);

  auto n2 = normalize_conjugacy(map("z+1"), pt("0"), 0, 1);
  EXPECT_EQ(n2.g.as_map(), map("z"));
  EXPECT_EQ(n2.psi, map("z+1"));
  EXPECT_EQ(n2.report.classification, Classification::Good);

  auto n3 = normalize_conjugacy(map("(z^2+z+T)/z"), pt("1"), 0, 1);
  EXPECT_EQ(n3.g.as_map(), map("(z-1)/(1+T)"));
  EXPECT_NE(n3.report.classification, Classification::Trivial);
  EXPECT_EQ(n3.g(pt("1")), pt("0"));
  EXPECT_EQ(n3.g(pt("2+T")), pt("1"));
  EXPECT_EQ(n3.g(ValuedPoint::infinity(kQ)), ValuedPoint::infinity(kQ));
}

TEST(NormalizeConjugacy, Errors) {
  try {
    normalize_conjugacy(map("z^2"), pt("1"), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoincidentPoints);
  }
  try {
    normalize_conjugacy(map("1/z"), pt("0"), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteOrbitPoint);
  }
}

TEST(Derivative, Examples) {
  auto [n1, d1] = derivative(map("z^2"));
  EXPECT_EQ(n1, Kpoly("2*z"));
  EXPECT_EQ(d1, Kpoly("1"));
  auto [n2, d2] = derivative(map("(z^2+z+T)/z"));
  EXPECT_EQ(n2, Kpoly("z^2-T"));
  EXPECT_EQ(d2, Kpoly("z^2"));
  const Field f3 = Field::prime(3);
  auto [n3, d3] = derivative(map("z^3", f3));
  EXPECT_TRUE(n3.is_zero());
  EXPECT_EQ(d3, Kpoly("1", f3));
}

TEST(Flip, MatchesConjugationByInverse) {
  for (const char* text : kCorpus) {
    const RatMap phi = map(text);
    EXPECT_EQ(phi.flipped(), conjugate(phi, Mobius(K("0"), K("1"), K("1"), K("0"))));
  }
}

TEST(ResidueMap, EvaluationAndCompose) {
  const ResidueMap sq(kpoly("z^2"), kpoly("1"));
  EXPECT_EQ(sq(ResiduePoint(k(3))), ResiduePoint(k(9)));
  EXPECT_TRUE(sq(ResiduePoint::infinity(kQ)).is_infinity());
  const ResidueMap inv(kpoly("1"), kpoly("z"));
  EXPECT_TRUE(inv(ResiduePoint(k(0))).is_infinity());
  EXPECT_EQ(inv(ResiduePoint::infinity(kQ)), ResiduePoint(k(0)));
  EXPECT_EQ(sq.compose(inv), ResidueMap(kpoly("1"), kpoly("z^2")));
  EXPECT_EQ(ResidueMap(kpoly("2*z^2"), kpoly("2")), sq);
  EXPECT_THROW(ResidueMap(kpoly("z+1"), kpoly("2*z+2")), Error);
}

TEST(ResidueClassType, Validation) {
  EXPECT_THROW(ResidueClass::galois(kpoly("z^2-1")), Error);
  EXPECT_THROW(ResidueClass::galois(kpoly("(z^2+1)^2")), Error);
  EXPECT_THROW(ResidueClass::galois(kpoly("z+1")), Error);
  const ResidueClass g = ResidueClass::galois(kpoly("2*z^2+2"));
  EXPECT_EQ(g.polynomial(), kpoly("z^2+1"));
  EXPECT_EQ(g.to_string(), "galois(z^2 + 1)");
  EXPECT_EQ(cls("-1").to_string(), "-1");
  EXPECT_LT(cls("5"), cls("galois(z^2+1)"));
  EXPECT_LT(cls("galois(z^2+1)"), cls("inf"));
  const auto roots = classes_of_roots(kpoly("(z-1)^2*(z^2-2)*z"));
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[2], cls("galois(z^2-2)"));
}
