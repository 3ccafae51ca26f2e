#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wander/errors.hpp"
#include "wander/field.hpp"

namespace wander {

/// Dense univariate polynomial over a field of coefficients C.
///
/// C is either ResidueScalar (k[z], F[T]) or ValuedScalar (K[z]). The
/// coefficient type must provide zero(Field), one(Field), field(),
/// is_zero() and field arithmetic. Coefficients are stored low degree first
/// and the leading coefficient is nonzero unless the polynomial is zero.
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(Field field) : field_(field) {}
  Poly(Field field, std::vector<C> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {
    trim();
  }

  static Poly constant(const C& c) { return Poly(c.field(), {c}); }
  static Poly monomial(const C& c, int degree) {
    std::vector<C> v(static_cast<std::size_t>(degree) + 1, C::zero(c.field()));
    v.back() = c;
    return Poly(c.field(), std::move(v));
  }
  static Poly variable(Field field) { return monomial(C::one(field), 1); }
  static Poly one(Field field) { return constant(C::one(field)); }

  Field field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }

  C coeff(int i) const {
    if (i < 0 || i > degree()) return C::zero(field_);
    return coeffs_[static_cast<std::size_t>(i)];
  }
  const C& leading() const { return coeffs_.back(); }

  /// Index of the lowest nonzero coefficient; -1 for zero.
  int low_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i].is_zero()) return static_cast<int>(i);
    }
    return -1;
  }

  bool is_monic() const { return !is_zero() && leading() == C::one(field_); }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
  }

  Poly operator-() const {
    Poly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<C> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < a.coeffs_.size() && i < b.coeffs_.size()) {
        v.push_back(a.coeffs_[i] + b.coeffs_[i]);
      } else if (i < a.coeffs_.size()) {
        v.push_back(a.coeffs_[i]);
      } else {
        v.push_back(b.coeffs_[i]);
      }
    }
    return Poly(a.is_zero() ? b.field_ : a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<C> v(a.coeffs_.size() + b.coeffs_.size() - 1,
                     C::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        v[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Poly(a.field_, std::move(v));
  }

  friend Poly operator*(const Poly& a, const C& c) {
    if (c.is_zero()) return Poly(a.field_);
    Poly out = a;
    for (auto& x : out.coeffs_) x *= c;
    out.trim();
    return out;
  }
  friend Poly operator*(const C& c, const Poly& a) { return a * c; }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Quotient and remainder. Throws ZeroPolynomial on division by zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) {
      throw Error(ErrorCode::ZeroPolynomial, "polynomial division by zero");
    }
    Poly rem = a;
    if (a.degree() < b.degree()) return {Poly(a.field_), rem};
    const int db = b.degree();
    const C lead_inv = b.leading().inverse();
    std::vector<C> q(static_cast<std::size_t>(a.degree() - db + 1),
                     C::zero(a.field_));
    std::vector<C>& r = rem.coeffs_;
    for (int i = a.degree(); i >= db; --i) {
      const C& top = r[static_cast<std::size_t>(i)];
      if (top.is_zero()) continue;
      C factor = top * lead_inv;
      for (int j = 0; j <= db; ++j) {
        r[static_cast<std::size_t>(i - db + j)] -=
            factor * b.coeffs_[static_cast<std::size_t>(j)];
      }
      q[static_cast<std::size_t>(i - db)] = std::move(factor);
    }
    rem.trim();
    return {Poly(a.field_, std::move(q)), rem};
  }

  friend Poly operator/(const Poly& a, const Poly& b) {
    return divmod(a, b).first;
  }
  friend Poly operator%(const Poly& a, const Poly& b) {
    return divmod(a, b).second;
  }

  bool divides(const Poly& b) const { return (b % *this).is_zero(); }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly(field_);
    std::vector<C> v;
    v.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      v.push_back(coeffs_[i] * C(field_, static_cast<long>(i)));
    }
    return Poly(field_, std::move(v));
  }

  C evaluate(const C& x) const {
    C acc = C::zero(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + *it;
    }
    return acc;
  }

  /// p(q(z)).
  Poly compose(const Poly& inner) const {
    Poly acc(field_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * inner + constant(*it);
    }
    return acc;
  }

  /// p(a + w) as a polynomial in w.
  Poly shift(const C& a) const {
    return compose(Poly(field_, {a, C::one(field_)}));
  }

  /// w^n p(1/w); requires n >= degree().
  Poly reversed(int n) const {
    std::vector<C> v(static_cast<std::size_t>(n) + 1, C::zero(field_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      v[static_cast<std::size_t>(n) - i] = coeffs_[i];
    }
    return Poly(field_, std::move(v));
  }

  Poly pow(unsigned e) const {
    Poly result = one(field_);
    Poly base = *this;
    while (e > 0) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e > 0) base *= base;
    }
    return result;
  }

  /// Multiply by z^k.
  Poly shifted_up(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<C> v(static_cast<std::size_t>(k), C::zero(field_));
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Poly(field_, std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  Field field_;
  std::vector<C> coeffs_;
};

/// Monic gcd over the coefficient field; a degree-0 gcd is the constant 1.
template <class C>
Poly<C> gcd(const Poly<C>& a, const Poly<C>& b) {
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorCode::BothZero, "gcd of two zero polynomials");
  }
  Poly<C> x = a.monic();
  Poly<C> y = b.monic();
  while (!y.is_zero()) {
    Poly<C> r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

/// Returns (g, u, v) with u*a + v*b = g = gcd(a, b) monic.
template <class C>
std::tuple<Poly<C>, Poly<C>, Poly<C>> extended_gcd(const Poly<C>& a,
                                                    const Poly<C>& b) {
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorCode::BothZero, "gcd of two zero polynomials");
  }
  const Field f = a.is_zero() ? b.field() : a.field();
  Poly<C> r0 = a, r1 = b;
  Poly<C> s0 = Poly<C>::one(f), s1(f);
  Poly<C> t0(f), t1 = Poly<C>::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = Poly<C>::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<C> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<C> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const C inv = r0.leading().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Resultant via the Euclidean recurrence
///   Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r),  r = a mod b.
/// Zero iff a and b share a root in an algebraic closure.
template <class C>
C resultant(const Poly<C>& a, const Poly<C>& b) {
  if (a.is_zero() || b.is_zero()) {
    throw Error(ErrorCode::ZeroPolynomial, "resultant with a zero polynomial");
  }
  const Field f = a.field();
  C acc = C::one(f);
  Poly<C> p = a, q = b;
  while (true) {
    const int m = p.degree();
    const int n = q.degree();
    if (n == 0) {
      C c = q.leading();
      C pw = C::one(f);
      for (int i = 0; i < m; ++i) pw *= c;
      return acc * pw;
    }
    if (m == 0) {
      C c = p.leading();
      C pw = C::one(f);
      for (int i = 0; i < n; ++i) pw *= c;
      return acc * pw;
    }
    Poly<C> r = p % q;
    if (r.is_zero()) return C::zero(f);
    if ((static_cast<long>(m) * n) % 2 != 0) acc = -acc;
    const C lc = q.leading();
    for (int i = 0; i < m - r.degree(); ++i) acc *= lc;
    p = std::move(q);
    q = std::move(r);
  }
}

namespace detail {

/// True if s has a '+' or a binary '-' outside parentheses.
inline bool has_top_level_sum(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || (ch == '-' && i > 0))) return true;
  }
  return false;
}

}  // namespace detail

/// Renders p in the parser's grammar, highest degree first, e.g.
/// "z^3 + (1 + T)*z^2 - 2". The coefficient formatter must produce text in
/// the same grammar.
template <class C, class Format>
std::string format_poly(const Poly<C>& p, const std::string& var,
                        Format&& format_coeff) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const C& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string text = format_coeff(c);
    bool negative = false;
    if (!text.empty() && text[0] == '-' && !detail::has_top_level_sum(text)) {
      negative = true;
      text.erase(0, 1);
    }
    const bool wrap = detail::has_top_level_sum(text);
    if (wrap) text = "(" + text + ")";
    std::string term;
    const std::string power =
        i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (i == 0) {
      term = text;
    } else if (text == "1") {
      term = power;
    } else {
      term = text + "*" + power;
    }
    if (first) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
    first = false;
  }
  return out;
}

}  // namespace wander
