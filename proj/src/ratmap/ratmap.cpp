#include "wander/ratmap.hpp"

#include <algorithm>

#include "wander/errors.hpp"

namespace wander {

namespace {

// (F(p, q), G(p, q)) for the degree-d forms of f/g and degree-e forms of
// p/q, dehomogenized. Coprime inputs give coprime outputs of degree d*e.
template <class C>
std::pair<Poly<C>, Poly<C>> compose_forms(const Poly<C>& f, const Poly<C>& g, int d,
                                          const Poly<C>& p, const Poly<C>& q) {
  const Field field = g.field();
  std::vector<Poly<C>> pp{Poly<C>::one(field)}, qq{Poly<C>::one(field)};
  for (int i = 1; i <= d; ++i) {
    pp.push_back(pp.back() * p);
    qq.push_back(qq.back() * q);
  }
  Poly<C> a(field), b(field);
  for (int i = 0; i <= d; ++i) {
    const C fi = f.coeff(i), gi = g.coeff(i);
    if (fi.is_zero() && gi.is_zero()) continue;
    const Poly<C> term = pp[static_cast<std::size_t>(i)] * qq[static_cast<std::size_t>(d - i)];
    if (!fi.is_zero()) a += term * fi;
    if (!gi.is_zero()) b += term * gi;
  }
  return {a, b};
}

std::string fraction_text(const std::string& num, const std::string& den, bool den_is_one) {
  if (den_is_one) return num;
  return "(" + num + ")/(" + den + ")";
}

}  // namespace

// ResidueMap ---------------------------------------------------------------

ResidueMap::ResidueMap(ResiduePoly num, ResiduePoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero denominator");
  if (num_.is_zero()) throw Error(ErrorCode::ConstantMap, "reduced map is constant");
  const ResiduePoly h = gcd(num_, den_);
  if (h.degree() > 0) {
    num_ = num_ / h;
    den_ = den_ / h;
  }
  degree_ = std::max(num_.degree(), den_.degree());
  if (degree_ <= 0) {
    throw Error(ErrorCode::ConstantMap, "reduced map is constant");
  }
}

ResidueMap ResidueMap::compose(const ResidueMap& inner) const {
  auto [a, b] = compose_forms(num_, den_, degree_, inner.num_, inner.den_);
  return ResidueMap(std::move(a), std::move(b));
}

ResidueMap ResidueMap::iterate(int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "iterate needs n >= 1");
  ResidueMap out = *this;
  for (int i = 1; i < n; ++i) out = compose(out);
  return out;
}

bool operator==(const ResidueMap& a, const ResidueMap& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string ResidueMap::to_string() const {
  const ResidueScalar inv = den_.leading().inverse();
  const ResiduePoly d = den_ * inv;
  return fraction_text(wander::to_string(num_ * inv), wander::to_string(d),
                       d.degree() == 0);
}

// RatMap -------------------------------------------------------------------

RatMap RatMap::normalize(const ValuedPoly& f, const ValuedPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
  if (f.is_zero()) throw Error(ErrorCode::ConstantMap, "map is identically zero");
  const ValuedPoly h = gcd(f, g);
  if (h.degree() > 0) return from_coprime(f / h, g / h);
  return from_coprime(f, g);
}

RatMap RatMap::from_coprime(ValuedPoly f, ValuedPoly g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
  RatMap out;
  out.f_ = std::move(f);
  out.g_ = std::move(g);
  out.degree_ = std::max(out.f_.degree(), out.g_.degree());
  if (out.degree_ <= 0) throw Error(ErrorCode::ConstantMap, "map is constant");
  out.canonicalize_scale();
  return out;
}

void RatMap::canonicalize_scale() {
  const ValuedScalar inv = g_.leading().inverse();
  if (!inv.is_one()) {
    f_ = f_ * inv;
    g_ = g_ * inv;
  }
  const ExtInt m = min(min_valuation(f_), min_valuation(g_));
  if (m != ExtInt(0)) {
    const ValuedScalar t = ValuedScalar::t_power(field(), -m.value());
    f_ = f_ * t;
    g_ = g_ * t;
  }
}

RatMap RatMap::flipped() const {
  return from_coprime(g_.reversed(degree_), f_.reversed(degree_));
}

std::string RatMap::to_string() const {
  return fraction_text(wander::to_string(f_), wander::to_string(g_),
                       g_.degree() == 0 && g_.leading().is_one());
}

// Mobius -------------------------------------------------------------------

Mobius::Mobius(ValuedScalar a, ValuedScalar b, ValuedScalar c, ValuedScalar d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (determinant().is_zero()) {
    throw Error(ErrorCode::SingularMobius, "Mobius map " + to_string() + " has ad - bc = 0");
  }
}

Mobius Mobius::identity(Field field) {
  return Mobius(ValuedScalar::one(field), ValuedScalar::zero(field),
                ValuedScalar::zero(field), ValuedScalar::one(field));
}

Mobius Mobius::inverse() const { return Mobius(d_, -b_, -c_, a_); }

RatMap Mobius::as_map() const {
  const Field f = a_.field();
  return RatMap::normalize(ValuedPoly(f, {b_, a_}), ValuedPoly(f, {d_, c_}));
}

ValuedPoint Mobius::operator()(const ValuedPoint& x) const {
  const Field f = a_.field();
  return evaluate_fraction(ValuedPoly(f, {b_, a_}), ValuedPoly(f, {d_, c_}), 1, x);
}

std::string Mobius::to_string() const {
  return a_.to_string() + "," + b_.to_string() + "," + c_.to_string() + "," + d_.to_string();
}

// Reduction ----------------------------------------------------------------

std::string ReductionReport::classification_label() const {
  switch (classification) {
    case Classification::Trivial: return "Trivial";
    case Classification::Good: return "Good";
    case Classification::Nontrivial:
      return "Nontrivial(" + std::to_string(reduced_degree) + ")";
  }
  return "";
}

const ResidueMap& ReductionReport::map() const {
  if (!reduced_map) throw Error(ErrorCode::TrivialReduction, "map has trivial reduction");
  return *reduced_map;
}

bool ReductionReport::is_bad(const ResidueClass& c) const {
  switch (c.kind()) {
    case ResidueClass::Kind::Infinity:
      return std::find(bad_classes.begin(), bad_classes.end(), c) != bad_classes.end();
    case ResidueClass::Kind::Rational:
      return hbar.degree() > 0 && hbar.evaluate(c.value()).is_zero();
    case ResidueClass::Kind::Galois:
      return hbar.degree() > 0 && gcd(hbar, c.polynomial()).degree() > 0;
  }
  return false;
}

ReductionReport reduce(const RatMap& phi) {
  ReductionReport r;
  const int d = phi.degree();
  r.map_degree = d;
  r.fbar = reduce_coefficients(phi.numerator());
  r.gbar = reduce_coefficients(phi.denominator());
  r.hbar = gcd(r.fbar, r.gbar);
  const ResiduePoly f0 = r.fbar / r.hbar;
  const ResiduePoly g0 = r.gbar / r.hbar;
  if (f0.degree() <= 0 && g0.degree() <= 0) {
    r.classification = Classification::Trivial;
    return r;
  }
  r.reduced_map = ResidueMap(f0, g0);
  r.reduced_degree = r.reduced_map->degree();
  r.classification = r.reduced_degree == d ? Classification::Good : Classification::Nontrivial;

  if (r.hbar.degree() > 0) r.bad_classes = classes_of_roots(r.hbar);
  // The class at infinity is the class at 0 for z -> 1/phi(1/z), whose
  // numerator and denominator reduce to the reversed gbar and fbar.
  const ResiduePoly hflip = gcd(r.gbar.reversed(d), r.fbar.reversed(d));
  if (hflip.degree() > 0 && hflip.coeff(0).is_zero()) {
    r.bad_classes.push_back(ResidueClass::infinity(phi.field()));
  }
  std::sort(r.bad_classes.begin(), r.bad_classes.end());
  return r;
}

std::vector<ResidueClass> bad_classes(const RatMap& phi) {
  ReductionReport r = reduce(phi);
  if (r.classification == Classification::Trivial) {
    throw Error(ErrorCode::TrivialReduction, "bad classes need nontrivial reduction");
  }
  return std::move(r.bad_classes);
}

// Composition --------------------------------------------------------------

RatMap compose(const RatMap& outer, const RatMap& inner) {
  auto [a, b] = compose_forms(outer.numerator(), outer.denominator(), outer.degree(),
                              inner.numerator(), inner.denominator());
  return RatMap::from_coprime(std::move(a), std::move(b));
}

RatMap iterate(const RatMap& phi, int n, int degree_cap) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "iterate needs n >= 1");
  long long deg = 1;
  for (int i = 0; i < n; ++i) {
    deg *= phi.degree();
    if (deg > degree_cap) {
      throw Error(ErrorCode::DegreeCapExceeded,
                  "degree " + std::to_string(phi.degree()) + "^" + std::to_string(n) +
                      " exceeds the cap " + std::to_string(degree_cap));
    }
  }
  RatMap out = phi;
  for (int i = 1; i < n; ++i) out = compose(phi, out);
  return out;
}

RatMap conjugate(const RatMap& phi, const Mobius& g) {
  return compose(g.as_map(), compose(phi, g.inverse().as_map()));
}

ConjugacyNormalization normalize_conjugacy(const RatMap& phi, const ValuedPoint& a,
                                           int M, int N, int degree_cap) {
  if (M < 0 || N < 1) {
    throw Error(ErrorCode::InvalidArgument, "normalize_conjugacy needs M >= 0 and N >= 1");
  }
  ValuedPoint p0 = a;
  for (int i = 0; i < M; ++i) p0 = phi(p0);
  ValuedPoint p1 = p0;
  for (int i = 0; i < N; ++i) p1 = phi(p1);
  if (p0.is_infinity() || p1.is_infinity()) {
    throw Error(ErrorCode::InfiniteOrbitPoint,
                "orbit points " + p0.to_string() + ", " + p1.to_string() + " must be finite");
  }
  if (p0 == p1) {
    throw Error(ErrorCode::CoincidentPoints, "phi^M(a) = phi^(M+N)(a) = " + p0.to_string());
  }
  const Field f = phi.field();
  Mobius g(ValuedScalar::one(f), -p0.value(), ValuedScalar::zero(f), p1.value() - p0.value());
  RatMap psi = conjugate(iterate(phi, N, degree_cap), g);
  ReductionReport report = reduce(psi);
  return {std::move(g), std::move(psi), std::move(report)};
}

std::pair<ValuedPoly, ValuedPoly> derivative(const RatMap& phi) {
  const ValuedPoly& f = phi.numerator();
  const ValuedPoly& g = phi.denominator();
  ValuedPoly num = f.derivative() * g - f * g.derivative();
  ValuedPoly den = g * g;
  if (num.is_zero()) return {num, ValuedPoly::one(phi.field())};
  const ValuedPoly h = gcd(num, den);
  if (h.degree() > 0) {
    num = num / h;
    den = den / h;
  }
  return {num, den};
}

}  // namespace wander
