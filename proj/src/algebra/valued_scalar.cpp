#include "wander/valued_scalar.hpp"

#include <regex>

namespace wander {

namespace {

bool is_unit_poly(const ResiduePoly& p) {
  return p.degree() == 0 && p.leading().is_one();
}

std::strong_ordering compare_polys(const ResiduePoly& a, const ResiduePoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = a.degree(); i >= 0; --i) {
    const auto& x = a.coeffs()[static_cast<std::size_t>(i)];
    const auto& y = b.coeffs()[static_cast<std::size_t>(i)];
    if (auto c = x <=> y; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

}  // namespace

ValuedScalar::ValuedScalar(Field field, long value)
    : num_(ResiduePoly::constant(ResidueScalar(field, value))),
      den_(ResiduePoly::one(field)) {}

ValuedScalar::ValuedScalar(const ResidueScalar& value)
    : num_(ResiduePoly::constant(value)),
      den_(ResiduePoly::one(value.field())) {}

ValuedScalar::ValuedScalar(ResiduePoly num, ResiduePoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(ErrorCode::ZeroDenominator, "zero denominator in F(T)");
  }
  canonicalize();
}

ValuedScalar::ValuedScalar(ResiduePoly num)
    : num_(std::move(num)), den_(ResiduePoly::one(num_.field())) {}

ValuedScalar ValuedScalar::t_power(Field field, long n) {
  const ResiduePoly t =
      ResiduePoly::monomial(ResidueScalar::one(field), static_cast<int>(n < 0 ? -n : n));
  if (n >= 0) return ValuedScalar(t);
  return ValuedScalar(ResiduePoly::one(field), t);
}

void ValuedScalar::canonicalize() {
  const Field f = den_.field();
  if (num_.is_zero()) {
    num_ = ResiduePoly(f);
    den_ = ResiduePoly::one(f);
    return;
  }
  if (den_.degree() > 0) {
    ResiduePoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.leading().is_one()) {
    const ResidueScalar inv = den_.leading().inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

bool ValuedScalar::is_one() const {
  return is_unit_poly(num_) && is_unit_poly(den_);
}

ExtInt ValuedScalar::valuation() const {
  if (num_.is_zero()) return ExtInt::infinity();
  return ExtInt(num_.low_degree() - den_.low_degree());
}

ResidueScalar ValuedScalar::residue() const {
  const ExtInt v = valuation();
  if (v < ExtInt(0)) {
    throw Error(ErrorCode::NegativeValuation,
                "residue of " + to_string() + " (valuation " + v.to_string() + ")");
  }
  if (v > ExtInt(0)) return ResidueScalar::zero(field());
  return num_.coeff(0) / den_.coeff(0);
}

ResidueScalar ValuedScalar::angular_component() const {
  if (num_.is_zero()) return ResidueScalar::zero(field());
  return num_.coeff(num_.low_degree()) / den_.coeff(den_.low_degree());
}

ValuedScalar ValuedScalar::operator-() const {
  ValuedScalar out = *this;
  out.num_ = -out.num_;
  return out;
}

ValuedScalar ValuedScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F(T)");
  return ValuedScalar(den_, num_);
}

ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b) {
  ValuedScalar out;
  if (is_unit_poly(a.den_) && is_unit_poly(b.den_)) {
    out.num_ = a.num_ + b.num_;
    out.den_ = a.den_;
    return out;
  }
  if (is_unit_poly(a.den_) || is_unit_poly(b.den_)) {
    // gcd(n1*d2 + n2, d2) = gcd(n2, d2) = 1, so the result is reduced.
    const ValuedScalar& poly = is_unit_poly(a.den_) ? a : b;
    const ValuedScalar& frac = is_unit_poly(a.den_) ? b : a;
    out.num_ = poly.num_ * frac.den_ + frac.num_;
    out.den_ = frac.den_;
    if (out.num_.is_zero()) out.den_ = ResiduePoly::one(a.field());
    return out;
  }
  return ValuedScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b) {
  return a + (-b);
}

ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b) {
  if (a.is_zero() || b.is_zero()) return ValuedScalar::zero(a.field());
  ValuedScalar out;
  if (is_unit_poly(a.den_) && is_unit_poly(b.den_)) {
    out.num_ = a.num_ * b.num_;
    out.den_ = a.den_;
    return out;
  }
  // Cross-cancel so the product stays in lowest terms with a monic den.
  ResiduePoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (bd.degree() > 0) {
    ResiduePoly g = gcd(an, bd);
    if (g.degree() > 0) {
      an = an / g;
      bd = bd / g;
    }
  }
  if (ad.degree() > 0) {
    ResiduePoly g = gcd(bn, ad);
    if (g.degree() > 0) {
      bn = bn / g;
      ad = ad / g;
    }
  }
  out.num_ = an * bn;
  out.den_ = ad * bd;
  return out;
}

ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b) {
  return a * b.inverse();
}

ValuedScalar ValuedScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  ValuedScalar result = one(field());
  ValuedScalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::strong_ordering operator<=>(const ValuedScalar& a, const ValuedScalar& b) {
  if (auto c = compare_polys(a.num_, b.num_); c != 0) return c;
  return compare_polys(a.den_, b.den_);
}

std::string ValuedScalar::to_string() const {
  const std::string n = wander::to_string(num_, "T");
  if (is_unit_poly(den_)) return n;
  std::string d = wander::to_string(den_, "T");
  static const std::regex atom(R"(T(\^[0-9]+)?)");
  if (!std::regex_match(d, atom)) d = "(" + d + ")";
  const std::string nn = detail::has_top_level_sum(n) ? "(" + n + ")" : n;
  return nn + "/" + d;
}

std::string to_string(const ValuedPoly& p, const std::string& var) {
  return format_poly(p, var,
                     [](const ValuedScalar& c) { return c.to_string(); });
}

ExtInt min_valuation(const ValuedPoly& p) {
  ExtInt m = ExtInt::infinity();
  for (const auto& c : p.coeffs()) m = min(m, c.valuation());
  return m;
}

ResiduePoly reduce_coefficients(const ValuedPoly& p) {
  std::vector<ResidueScalar> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(c.residue());
  return ResiduePoly(p.field(), std::move(v));
}

ValuedPoly lift(const ResiduePoly& p) {
  std::vector<ValuedScalar> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return ValuedPoly(p.field(), std::move(v));
}

}  // namespace wander
