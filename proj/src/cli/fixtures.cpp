#include <algorithm>

#include "wander/cli.hpp"
#include "wander/parser.hpp"

namespace wander {

namespace {

const Field kQ = Field::rationals();

Fixture make(std::string name, std::string description, std::string text, Field field,
             std::string reduced, std::string classification, std::vector<std::string> bad) {
  Fixture f{std::move(name), std::move(description), std::move(text), field, std::move(reduced),
            std::move(classification), std::move(bad), {}, {}};
  return f;
}

const char* kConjugatorWarning =
    "psi = z^2 + z + T equals g o phi o g^-1 for g(z) = T*z (--mobius T,0,0,1), so "
    "phi = g^-1 o psi o g; with h(z) = T*z the form phi = h o psi o h^-1 does not hold, and "
    "g(z) = z/T gives T^2*z^2 + z + 1/T instead";

// b z (z + c)(z + c^2) / ((z + b c)(z + c^3)(c z + 1)^2)
Fixture annulus_family(const std::string& name, const std::string& b, const std::string& c) {
  const std::string B = "(" + b + ")", C = "(" + c + ")";
  Fixture f;
  f.name = name;
  f.description = "b*z*(z+c)*(z+c^2)/((z+b*c)*(z+c^3)*(c*z+1)^2) with b = " + b + ", c = " + c;
  f.map_text = B + "*z*(z+" + C + ")*(z+" + C + "^2)/((z+" + B + "*" + C + ")*(z+" + C +
               "^3)*(" + C + "*z+1)^2)";
  f.field = kQ;
  const ValuedScalar bv = parse_scalar(b, kQ), cv = parse_scalar(c, kQ);
  const bool ok = cv.valuation() > ExtInt(0) && !cv.is_zero() && bv.valuation() == ExtInt(0) &&
                  (bv - ValuedScalar::one(kQ)).valuation() == ExtInt(0);
  if (!ok) f.warnings.push_back("parameters violate 0 < |c| < |b| = |b-1| = 1");
  return f;
}

std::vector<Fixture> build() {
  std::vector<Fixture> v;
  v.push_back(make("intro", "cubic with a cancelling factor (z + 1) in its reduction",
                   "(z^3 + (1+T)*z^2)/(z+1)", kQ, "z^2", "Nontrivial(2)", {"-1"}));
  v.push_back(load_fixture("cyclotomic:2"));
  v.push_back(make("ex2.1", "pure power z^2, good reduction", "z^2", kQ, "z^2", "Good", {}));
  v.push_back(make("ex2.2", "z^d - c^-d with d = 2, c = T", "z^2 - 1/T^2", kQ, "", "Trivial", {}));
  v.push_back(make("ex2.3", "z^(pd) - c^(-pd) over F_3(T) with d = 2, c = T", "z^6 - 1/T^6",
                   Field::prime(3), "", "Trivial", {}));
  v.push_back(make("ex2.4", "c*z^d + z^(d-1) + z with d = 3, c = T", "T*z^3 + z^2 + z", kQ,
                   "z^2 + z", "Nontrivial(2)", {"inf"}));
  v.push_back(load_fixture("ex2.5"));
  Fixture e61 = make("ex6.1", "translation with a repelling fixed point -T in the class of 0",
                     "z + 1 + T/z", kQ, "z + 1", "Nontrivial(1)", {"0"});
  v.push_back(e61);
  Fixture e62 = make("ex6.2", "T*z^2 + z + 1, conjugate to z^2 + z + T", "T*z^2 + z + 1", kQ,
                     "z + 1", "Nontrivial(1)", {"inf"});
  e62.warnings.push_back(kConjugatorWarning);
  v.push_back(e62);
  v.push_back(load_fixture("ex6.3"));
  v.push_back(load_fixture("ex6.4"));
  return v;
}

}  // namespace

RatMap Fixture::map() const { return parse_map(map_text, field); }

ResiduePoly cyclotomic_polynomial(int m, Field field) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be >= 1");
  const ResiduePoly z = ResiduePoly::variable(field);
  ResiduePoly p = z.pow(static_cast<unsigned>(m)) - ResiduePoly::one(field);
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) p = p / cyclotomic_polynomial(d, field);
  }
  return p;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = build();
  return all;
}

Fixture load_fixture(const std::string& name, std::optional<Field> field) {
  auto unknown = [&]() {
    return Error(ErrorCode::UnknownExample, "unknown example '" + name + "'");
  };
  if (name.rfind("cyclotomic:", 0) == 0) {
    const std::string arg = name.substr(11);
    if (arg.empty() || arg.size() > 3 || !std::all_of(arg.begin(), arg.end(), ::isdigit)) {
      throw unknown();
    }
    const int m = std::stoi(arg);
    const Field f = field.value_or(kQ);
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "cyclotomic:m needs m >= 2");
    if (f.is_finite() && m % static_cast<int>(f.characteristic()) == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "m = " + arg + " is divisible by the characteristic of " + f.name());
    }
    const std::string psi = to_string(cyclotomic_polynomial(m, f));
    Fixture fx;
    fx.name = name;
    fx.description = "z^m + T/Psi_m(z) with Psi_m the m-th cyclotomic polynomial, m = " + arg;
    fx.map_text = "z^" + arg + " + T/(" + psi + ")";
    fx.field = f;
    fx.reduced_map = "z^" + arg;
    fx.classification = "Nontrivial(" + arg + ")";
    for (const auto& c : classes_of_roots(cyclotomic_polynomial(m, f))) {
      fx.bad_classes.push_back(c.to_string());
    }
    std::sort(fx.bad_classes.begin(), fx.bad_classes.end());
    return fx;
  }
  if (name == "ex2.5" || name.rfind("ex2.5:", 0) == 0) {
    if (name == "ex2.5") {
      Fixture f = annulus_family(name, "2", "T");
      f.reduced_map = "2*z";
      f.classification = "Nontrivial(1)";
      f.bad_classes = {"0", "inf"};
      return f;
    }
    const std::string args = name.substr(6);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw unknown();
    try {
      return annulus_family(name, args.substr(0, comma), args.substr(comma + 1));
    } catch (const SyntaxError&) {
      throw unknown();
    }
  }
  if (name == "ex6.3") {
    Fixture f = annulus_family(name, "2", "T");
    f.description = "the b = 2, c = T member of ex2.5; reduction 2z";
    f.reduced_map = "2*z";
    f.classification = "Nontrivial(1)";
    f.bad_classes = {"0", "inf"};
    f.notes.push_back(
        "the wandering D-component claim for D(a, 1) rests on Julia points in classes at "
        "valuations -1 and 1; not verified here");
    return f;
  }
  if (name == "ex6.4") {
    Fixture f = annulus_family(name, "-1", "T");
    f.description = "the b = -1, c = T member of ex2.5; reduction -z, classes fixed by phi^2";
    f.reduced_map = "-z";
    f.classification = "Nontrivial(1)";
    f.bad_classes = {"0", "inf"};
    return f;
  }
  for (const auto& f : fixtures()) {
    if (f.name == name) return f;
  }
  throw unknown();
}

std::pair<RatMap, std::optional<Fixture>> resolve_map(const std::string& text,
                                                      std::optional<Field> field) {
  if (text.rfind("example:", 0) == 0) {
    Fixture f = load_fixture(text.substr(8), field);
    RatMap m = f.map();
    return {std::move(m), std::move(f)};
  }
  return {parse_map(text, field.value_or(kQ)), std::nullopt};
}

}  // namespace wander
