#pragma once

#include <compare>
#include <ostream>
#include <string>

#include "wander/ext_int.hpp"
#include "wander/field.hpp"
#include "wander/residue_poly.hpp"

namespace wander {

/// An element of K = F(T) with the T-adic valuation, stored as num/den in
/// lowest terms over F[T] with den monic. |x| = eps^v(x) for a fixed
/// symbolic 0 < eps < 1, so absolute values are compared via valuations.
class ValuedScalar {
 public:
  ValuedScalar() : ValuedScalar(Field::rationals(), 0) {}
  ValuedScalar(Field field, long value);
  ValuedScalar(const ResidueScalar& value);  // NOLINT(implicit): k embeds in K
  /// Throws ZeroDenominator if den is zero.
  ValuedScalar(ResiduePoly num, ResiduePoly den);
  explicit ValuedScalar(ResiduePoly num);

  static ValuedScalar zero(Field field) { return ValuedScalar(field, 0); }
  static ValuedScalar one(Field field) { return ValuedScalar(field, 1); }
  /// T^n for any integer n.
  static ValuedScalar t_power(Field field, long n);

  Field field() const { return num_.field(); }
  const ResiduePoly& num() const { return num_; }
  const ResiduePoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// ord_T(num) - ord_T(den); +inf for zero.
  ExtInt valuation() const;

  /// Image under T -> 0. Throws NegativeValuation when v(x) < 0.
  ResidueScalar residue() const;

  /// The leading T-adic coefficient: x = lead * T^v * (unit with residue 1).
  ResidueScalar angular_component() const;

  ValuedScalar operator-() const;
  ValuedScalar inverse() const;

  friend ValuedScalar operator+(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator-(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator*(const ValuedScalar& a, const ValuedScalar& b);
  friend ValuedScalar operator/(const ValuedScalar& a, const ValuedScalar& b);
  ValuedScalar& operator+=(const ValuedScalar& b) { return *this = *this + b; }
  ValuedScalar& operator-=(const ValuedScalar& b) { return *this = *this - b; }
  ValuedScalar& operator*=(const ValuedScalar& b) { return *this = *this * b; }
  ValuedScalar& operator/=(const ValuedScalar& b) { return *this = *this / b; }

  ValuedScalar pow(long e) const;

  friend bool operator==(const ValuedScalar& a, const ValuedScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  /// Deterministic total order for containers; not field-compatible.
  friend std::strong_ordering operator<=>(const ValuedScalar& a,
                                          const ValuedScalar& b);

  /// Parser-grammar text: "T^2 + 3*T", "(1 + T)/(1 - T)".
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const ValuedScalar& x) {
    return os << x.to_string();
  }

 private:
  void canonicalize();

  ResiduePoly num_;
  ResiduePoly den_;
};

using ValuedPoly = Poly<ValuedScalar>;

std::string to_string(const ValuedPoly& p, const std::string& var = "z");

/// Minimum coefficient valuation (+inf for the zero polynomial).
ExtInt min_valuation(const ValuedPoly& p);

/// Coefficientwise residues; requires min_valuation(p) >= 0.
ResiduePoly reduce_coefficients(const ValuedPoly& p);

/// Embeds a polynomial over k into K[z].
ValuedPoly lift(const ResiduePoly& p);

}  // namespace wander
