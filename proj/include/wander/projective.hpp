#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "wander/errors.hpp"
#include "wander/field.hpp"
#include "wander/valued_scalar.hpp"

namespace wander {

/// A point of P^1 over the scalars C: a finite value or infinity.
template <class C>
class ProjectivePoint {
 public:
  ProjectivePoint(C value) : value_(std::move(value)) {}  // NOLINT(implicit)
  static ProjectivePoint infinity(Field field) {
    ProjectivePoint p(C::zero(field));
    p.value_.reset();
    p.field_ = field;
    return p;
  }

  bool is_infinity() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  Field field() const { return value_ ? value_->field() : field_; }

  const C& value() const {
    if (!value_) throw Error(ErrorCode::InfiniteOrbitPoint, "point at infinity has no value");
    return *value_;
  }

  std::string to_string() const { return value_ ? value_->to_string() : "inf"; }

  friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
    return a.value_ == b.value_;
  }
  /// Finite points first, infinity last.
  friend std::strong_ordering operator<=>(const ProjectivePoint& a,
                                          const ProjectivePoint& b) {
    if (a.is_infinity() || b.is_infinity()) {
      return b.is_infinity() <=> a.is_infinity();
    }
    return *a.value_ <=> *b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ProjectivePoint& p) {
    return os << p.to_string();
  }

 private:
  std::optional<C> value_;
  Field field_;
};

using ResiduePoint = ProjectivePoint<ResidueScalar>;
using ValuedPoint = ProjectivePoint<ValuedScalar>;

/// Evaluates num/den at a point of P^1, treating (num, den) as binary forms
/// of the given degree. num and den must have no common root.
template <class C>
ProjectivePoint<C> evaluate_fraction(const Poly<C>& num, const Poly<C>& den,
                                     int degree, const ProjectivePoint<C>& x) {
  const Field f = num.is_zero() ? den.field() : num.field();
  C top = C::zero(f), bottom = C::zero(f);
  if (x.is_infinity()) {
    top = num.coeff(degree);
    bottom = den.coeff(degree);
  } else {
    top = num.evaluate(x.value());
    bottom = den.evaluate(x.value());
  }
  if (bottom.is_zero()) return ProjectivePoint<C>::infinity(f);
  return ProjectivePoint<C>(top / bottom);
}

}  // namespace wander
