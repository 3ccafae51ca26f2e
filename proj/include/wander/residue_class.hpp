#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <vector>

#include "wander/field.hpp"
#include "wander/projective.hpp"
#include "wander/residue_poly.hpp"

namespace wander {

/// A point of P^1(k), or a Galois-stable set of points of P^1 over an
/// algebraic closure of k given by a squarefree monic polynomial without
/// k-rational roots. The polynomial is not factored, so a Galois class may
/// bundle several conjugacy orbits.
class ResidueClass {
 public:
  enum class Kind { Rational = 0, Galois = 1, Infinity = 2 };

  /// The class at infinity over Q.
  ResidueClass() : ResidueClass(Field::rationals(), Kind::Infinity) {}

  static ResidueClass rational(const ResidueScalar& value);
  static ResidueClass infinity(Field field);
  /// Throws InvalidArgument unless p is squarefree of degree >= 2 with no
  /// root in k. The stored polynomial is made monic.
  static ResidueClass galois(const ResiduePoly& p);
  static ResidueClass of(const ResiduePoint& x);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_galois() const { return kind_ == Kind::Galois; }
  Field field() const { return field_; }

  /// Rational classes only.
  const ResidueScalar& value() const;
  /// Galois classes only.
  const ResiduePoly& polynomial() const;
  /// Rational or infinity classes as a point of P^1(k).
  ResiduePoint point() const;

  int point_count() const { return is_galois() ? poly_.degree() : 1; }

  /// "-1", "1/2", "inf", "galois(z^2 + 1)".
  std::string to_string() const;

  friend bool operator==(const ResidueClass& a, const ResidueClass& b);
  friend std::strong_ordering operator<=>(const ResidueClass& a,
                                          const ResidueClass& b);
  friend std::ostream& operator<<(std::ostream& os, const ResidueClass& c) {
    return os << c.to_string();
  }

 private:
  ResidueClass(Field field, Kind kind) : field_(field), kind_(kind) {}

  Field field_;
  Kind kind_;
  ResidueScalar value_;
  ResiduePoly poly_;
};

/// The finite classes containing the roots of a nonzero polynomial: one
/// rational class per root in k, then one Galois class for the rest.
std::vector<ResidueClass> classes_of_roots(const ResiduePoly& p);

}  // namespace wander
