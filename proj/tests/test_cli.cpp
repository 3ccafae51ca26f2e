#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>

#include "test_support.hpp"
#include "wander/cli.hpp"

using namespace wander;
using namespace wander::testing;
using json = nlohmann::ordered_json;

namespace {

Report run_cmd(const std::string& command, std::function<void(CommandInput&)> set = {}) {
  CommandInput in;
  in.command = command;
  if (set) set(in);
  return run(in);
}

ValuedPoly random_poly(std::mt19937& rng, Field f, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<ValuedScalar> c;
  const int n = deg(rng);
  for (int i = 0; i <= n; ++i) c.push_back(random_element(rng, f));
  return ValuedPoly(f, std::move(c));
}

int totient(int m) {
  int n = 0;
  for (int k = 1; k <= m; ++k) n += std::gcd(k, m) == 1;
  return n;
}

}  // namespace

TEST(Parser, Examples) {
  const RatMap intro = map("(z^3 + (1+T)*z^2)/(z+1)");
  EXPECT_EQ(intro.degree(), 3);
  EXPECT_EQ(map("z^2 + T/(z+1)"), RatMap::normalize(Kpoly("z^3+z^2+T"), Kpoly("z+1")));
  try {
    map("z/(z-z)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
  EXPECT_EQ(map("-z^2"), RatMap::normalize(Kpoly("-1*z^2"), Kpoly("1")));
  EXPECT_EQ(map(" z ^ 2 + 1 "), map("z^2+1"));
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  for (const auto& [text, pos] : std::vector<std::pair<std::string, std::size_t>>{
           {"z^", 2}, {"z + * 2", 4}, {"(z + 1", 6}, {"z^-1", 2}, {"x + 1", 0}}) {
    try {
      map(text);
      FAIL() << text;
    } catch (const SyntaxError& e) {
      EXPECT_EQ(e.code(), ErrorCode::SyntaxError) << text;
      EXPECT_EQ(e.position(), pos) << text;
    }
  }
  EXPECT_THROW(map("z + z - z - z"), Error);  // ConstantMap
}

TEST(Parser, PrintParseRoundTrip) {
  std::mt19937 rng(41);
  int checked = 0;
  for (const Field f : {kQ, Field::prime(2), Field::prime(5), Field::prime(7)}) {
    for (int local = 0; local < 125;) {
      const ValuedPoly a = random_poly(rng, f, 3), b = random_poly(rng, f, 3);
      std::optional<RatMap> phi;
      try {
        phi = RatMap::normalize(a, b);
      } catch (const Error&) {
        continue;  // constant or zero denominator
      }
      const std::string text = phi->to_string();
      EXPECT_EQ(parse_map(text, f), *phi) << text;
      EXPECT_EQ(parse_map(text, f).to_string(), text);
      ++local;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 500);
}

TEST(Cyclotomic, DegreeAndDivisibility) {
  for (int m = 1; m <= 30; ++m) {
    const ResiduePoly p = cyclotomic_polynomial(m, kQ);
    EXPECT_EQ(p.degree(), totient(m)) << m;
    // z^m - 1 is the product of Phi_d over d | m.
    ResiduePoly prod = ResiduePoly::one(kQ);
    for (int d = 1; d <= m; ++d) {
      if (m % d == 0) prod *= cyclotomic_polynomial(d, kQ);
    }
    EXPECT_EQ(prod, kpoly("z^" + std::to_string(m) + " - 1")) << m;
  }
  EXPECT_EQ(cyclotomic_polynomial(2, kQ), kpoly("z+1"));
  EXPECT_EQ(cyclotomic_polynomial(3, Field::prime(2)), kpoly("z^2+z+1", Field::prime(2)));
}

TEST(Fixtures, ReductionTable) {
  std::vector<std::string> names;
  for (const auto& f : fixtures()) names.push_back(f.name);
  names.push_back("cyclotomic:3");
  names.push_back("cyclotomic:5");
  for (const auto& name : names) {
    const Fixture f = load_fixture(name);
    const ReductionReport r = reduce(f.map());
    EXPECT_EQ(r.classification_label(), f.classification) << name;
    EXPECT_EQ(r.reduced_map ? r.reduced_map->to_string() : "", f.reduced_map) << name;
    std::vector<std::string> bad;
    for (const auto& c : r.bad_classes) bad.push_back(c.to_string());
    EXPECT_EQ(bad, f.bad_classes) << name;
  }
}

TEST(Fixtures, ExpectedValues) {
  EXPECT_EQ(load_fixture("intro").reduced_map, "z^2");
  EXPECT_EQ(load_fixture("intro").bad_classes, std::vector<std::string>{"-1"});
  EXPECT_EQ(load_fixture("ex6.1").reduced_map, "z + 1");
  EXPECT_EQ(load_fixture("ex6.2").reduced_map, "z + 1");
  EXPECT_EQ(load_fixture("ex6.3").reduced_map, "2*z");
  EXPECT_EQ(load_fixture("ex6.4").reduced_map, "-z");
  EXPECT_EQ(load_fixture("ex2.5").map(), load_fixture("ex2.5:2,T").map());
  EXPECT_EQ(load_fixture("ex6.4").map(), load_fixture("ex2.5:-1,T").map());
  EXPECT_EQ(load_fixture("cyclotomic:2").map(), map("z^2 + T/(z+1)"));
  EXPECT_EQ(load_fixture("cyclotomic:3", Field::prime(2)).bad_classes,
            std::vector<std::string>{"galois(z^2 + z + 1)"});
  EXPECT_FALSE(load_fixture("ex2.5:1+T,T").warnings.empty());
  for (const char* bad : {"ex7.1", "cyclotomic:", "cyclotomic:x", "ex2.5:2"}) {
    try {
      load_fixture(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownExample) << bad;
    }
  }
  EXPECT_THROW(load_fixture("cyclotomic:4", Field::prime(2)), Error);
}

TEST(Run, Classify) {
  const Report r = run_cmd("classify", [](CommandInput& in) { in.map = "example:intro"; });
  EXPECT_EQ(r.status, Status::Ok);
  EXPECT_EQ(r.result["classification"], "Nontrivial(2)");
  EXPECT_EQ(r.result["reduced_map"], "z^2");
  EXPECT_EQ(r.result["bad_classes"], json::array({"-1"}));
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Run, WanderCyclotomic) {
  const Report r = run_cmd("wander", [](CommandInput& in) {
    in.map = "example:cyclotomic:2";
    in.count = 3;
    in.depth = 5;
  });
  ASSERT_EQ(r.status, Status::Ok) << r.to_json().dump();
  ASSERT_EQ(r.result["certificates"].size(), 3u);
  for (const auto& c : r.result["certificates"]) {
    EXPECT_EQ(c["component_types"], json::array({"dynamical", "dynamicalD", "D", "analytic"}));
    EXPECT_FALSE(c["push"]["evidence"].get<std::string>().empty());
    EXPECT_FALSE(c["wandering"]["reason"].get<std::string>().empty());
  }
  EXPECT_EQ(r.result["julia_witness"]["route"], "RiemannHurwitzGrowth");
}

TEST(Run, WanderRefusals) {
  Report r = run_cmd("wander", [](CommandInput& in) {
    in.map = "z^2";
    in.count = 2;
    in.require_julia = true;
  });
  EXPECT_EQ(r.status, Status::HypothesesNotMet);
  EXPECT_EQ(r.exit_code(), 2);
  EXPECT_EQ(r.result["code"], "HypothesesNotMet");

  r = run_cmd("wander", [](CommandInput& in) {
    in.map = "z^2 + T";
    in.field = "fp:5";
  });
  EXPECT_EQ(r.exit_code(), 2);
}

TEST(Run, Newton) {
  const Report r = run_cmd("newton", [](CommandInput& in) { in.poly = "z^2+T*z+T^3"; });
  ASSERT_EQ(r.status, Status::Ok);
  EXPECT_EQ(r.result["segments"][0]["slope"], "-2");
  EXPECT_EQ(r.result["segments"][1]["slope"], "-1");
  EXPECT_EQ(r.result["root_valuations"][0]["valuation"], "1");
  EXPECT_EQ(r.result["root_valuations"][1]["valuation"], "2");
}

TEST(Run, OrbitAndConjugate) {
  Report r = run_cmd("orbit", [](CommandInput& in) {
    in.map = "example:ex6.4";
    in.cls = "1";
    in.depth = 4;
  });
  EXPECT_EQ(r.result["verdict"], "Cyclic(0, 2)");

  r = run_cmd("conjugate", [](CommandInput& in) {
    in.map = "example:ex6.2";
    in.mobius = "T,0,0,1";
  });
  EXPECT_EQ(r.result["psi"], "z^2 + z + T");
  EXPECT_EQ(r.result["reduction"]["classification"], "Good");
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(Run, LocalCommands) {
  Report r = run_cmd("disk-image", [](CommandInput& in) {
    in.map = "example:ex6.1";
    in.center = "1";
    in.radius_val = "1";
  });
  EXPECT_EQ(r.result["image"]["text"], "D(T + 2, 1)");
  r = run_cmd("injectivity", [](CommandInput& in) {
    in.map = "z^2";
    in.center = "1";
    in.radius_val = "0";
    in.kind = "closed";
  });
  EXPECT_EQ(r.result["injective"], false);
  r = run_cmd("fixedpoints", [](CommandInput& in) {
    in.map = "example:cyclotomic:2";
    in.cls = "-1";
  });
  EXPECT_EQ(r.result["offset_valuation"], "1");
  EXPECT_EQ(r.result["derivative_valuation"], "-1");
  r = run_cmd("julia", [](CommandInput& in) { in.map = "example:cyclotomic:2"; });
  EXPECT_EQ(r.result["growth"]["counts"][0], 3);
  EXPECT_EQ(r.result["growth"]["counts"][1], 6);
}

TEST(Run, Errors) {
  Report r = run_cmd("frobnicate");
  EXPECT_EQ(r.result["code"], "UnknownCommand");
  EXPECT_EQ(r.exit_code(), 1);
  r = run_cmd("classify", [](CommandInput& in) { in.map = "example:nope"; });
  EXPECT_EQ(r.result["code"], "UnknownExample");
  r = run_cmd("classify", [](CommandInput& in) { in.map = "z^"; });
  EXPECT_EQ(r.result["code"], "SyntaxError");
  r = run_cmd("classify");
  EXPECT_EQ(r.result["code"], "InvalidArgument");
  r = run_cmd("bad-classes", [](CommandInput& in) { in.map = "T*z^2"; });
  EXPECT_EQ(r.result["code"], "TrivialReduction");
}

TEST(Report, JsonRoundTripAndDeterminism) {
  for (const char* cmd : {"classify", "wander", "julia", "example"}) {
    auto set = [](CommandInput& in) {
      in.map = "example:cyclotomic:2";
      in.name = "ex6.2";
    };
    const Report a = run_cmd(cmd, set), b = run_cmd(cmd, set);
    EXPECT_EQ(a.to_json().dump(2), b.to_json().dump(2)) << cmd;
    const json j = a.to_json();
    EXPECT_EQ(Report::from_json(json::parse(j.dump())).to_json(), j) << cmd;
    EXPECT_EQ(a.to_text(), b.to_text());
  }
}

TEST(Limits, Environment) {
  ::setenv("WANDER_DEGREE_CAP", "16", 1);
  ::setenv("WANDER_BIT_BUDGET", "4096", 1);
  const Limits l = Limits::from_environment();
  EXPECT_EQ(l.degree_cap, 16);
  EXPECT_EQ(l.bit_budget, 4096u);
  ::setenv("WANDER_DEGREE_CAP", "-3", 1);
  EXPECT_THROW(Limits::from_environment(), Error);
  ::unsetenv("WANDER_DEGREE_CAP");
  ::unsetenv("WANDER_BIT_BUDGET");
  EXPECT_EQ(Limits::from_environment().degree_cap, kDefaultDegreeCap);
}
