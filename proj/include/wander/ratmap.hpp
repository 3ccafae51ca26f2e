#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wander/limits.hpp"
#include "wander/projective.hpp"
#include "wander/residue_class.hpp"
#include "wander/residue_poly.hpp"
#include "wander/valued_scalar.hpp"

namespace wander {

/// A nonconstant rational map over the residue field k, num/den coprime.
/// The pair is kept as given (no rescaling), so it can carry f0 = f/h and
/// g0 = g/h verbatim.
class ResidueMap {
 public:
  /// Cancels any common factor. Throws ZeroDenominator or ConstantMap.
  ResidueMap(ResiduePoly num, ResiduePoly den);

  Field field() const { return num_.is_zero() ? den_.field() : num_.field(); }
  const ResiduePoly& numerator() const { return num_; }
  const ResiduePoly& denominator() const { return den_; }
  int degree() const { return degree_; }

  ResiduePoint operator()(const ResiduePoint& x) const {
    return evaluate_fraction(num_, den_, degree_, x);
  }

  /// this o inner.
  ResidueMap compose(const ResidueMap& inner) const;
  ResidueMap iterate(int n) const;

  /// Equality as rational functions.
  friend bool operator==(const ResidueMap& a, const ResidueMap& b);

  /// "z^2", "(z^2 + 1)/(z)"; the denominator is displayed monic.
  std::string to_string() const;

 private:
  ResiduePoly num_;
  ResiduePoly den_;
  int degree_ = 0;
};

/// A rational map f/g over K = F(T) in normal form: f, g coprime, the
/// minimum coefficient valuation is 0 and the leading coefficient of g is a
/// power of T. The last condition makes the representation unique, so ==
/// is equality of maps.
class RatMap {
 public:
  /// Cancels gcd(f, g) in K[z] and rescales into normal form. Throws
  /// ZeroDenominator if g = 0 and ConstantMap if the quotient is constant.
  static RatMap normalize(const ValuedPoly& f, const ValuedPoly& g);
  /// Like normalize but skips the gcd; the caller guarantees coprimality.
  static RatMap from_coprime(ValuedPoly f, ValuedPoly g);

  Field field() const { return f_.is_zero() ? g_.field() : f_.field(); }
  const ValuedPoly& numerator() const { return f_; }
  const ValuedPoly& denominator() const { return g_; }
  int degree() const { return degree_; }

  ValuedPoint operator()(const ValuedPoint& x) const {
    return evaluate_fraction(f_, g_, degree_, x);
  }

  /// z -> 1/phi(1/z).
  RatMap flipped() const;

  friend bool operator==(const RatMap&, const RatMap&) = default;

  /// "z^2 + z + T" or "(z^3 + z^2 + T)/(z + 1)".
  std::string to_string() const;

 private:
  RatMap() = default;
  void canonicalize_scale();

  ValuedPoly f_;
  ValuedPoly g_;
  int degree_ = 0;
};

/// z -> (a z + b)/(c z + d) with ad - bc != 0.
class Mobius {
 public:
  /// Throws SingularMobius.
  Mobius(ValuedScalar a, ValuedScalar b, ValuedScalar c, ValuedScalar d);
  static Mobius identity(Field field);

  const ValuedScalar& a() const { return a_; }
  const ValuedScalar& b() const { return b_; }
  const ValuedScalar& c() const { return c_; }
  const ValuedScalar& d() const { return d_; }
  ValuedScalar determinant() const { return a_ * d_ - b_ * c_; }

  Mobius inverse() const;
  RatMap as_map() const;
  ValuedPoint operator()(const ValuedPoint& x) const;

  /// "a,b,c,d", the CLI's --mobius syntax.
  std::string to_string() const;

 private:
  ValuedScalar a_, b_, c_, d_;
};

enum class Classification { Trivial, Nontrivial, Good };

struct ReductionReport {
  ResiduePoly fbar;
  ResiduePoly gbar;
  ResiduePoly hbar;
  /// (f0, g0) = (fbar/hbar, gbar/hbar); empty when the reduction is trivial.
  std::optional<ResidueMap> reduced_map;
  Classification classification = Classification::Trivial;
  int map_degree = 0;
  int reduced_degree = 0;
  /// Sorted; empty for trivial reduction.
  std::vector<ResidueClass> bad_classes;

  /// "Trivial", "Nontrivial(2)", "Good".
  std::string classification_label() const;
  /// Throws TrivialReduction.
  const ResidueMap& map() const;
  /// True if the class contains a bad point. A Galois class counts as bad
  /// when any of its points is bad.
  bool is_bad(const ResidueClass& c) const;
};

ReductionReport reduce(const RatMap& phi);

/// Throws TrivialReduction.
std::vector<ResidueClass> bad_classes(const RatMap& phi);

/// outer o inner.
RatMap compose(const RatMap& outer, const RatMap& inner);

/// phi^n; throws InvalidArgument for n < 1 and DegreeCapExceeded when
/// deg(phi)^n exceeds the cap.
RatMap iterate(const RatMap& phi, int n, int degree_cap = kDefaultDegreeCap);

/// g o phi o g^-1.
RatMap conjugate(const RatMap& phi, const Mobius& g);

struct ConjugacyNormalization {
  Mobius g;
  RatMap psi;
  ReductionReport report;
};

/// The affine g with g(phi^M(a)) = 0 and g(phi^{M+N}(a)) = 1, and
/// psi = g o phi^N o g^-1 with its reduction. Throws InfiniteOrbitPoint or
/// CoincidentPoints.
ConjugacyNormalization normalize_conjugacy(const RatMap& phi, const ValuedPoint& a,
                                           int M, int N,
                                           int degree_cap = kDefaultDegreeCap);

/// (f'g - fg', g^2) with common factors removed; (0, 1) when phi' = 0.
std::pair<ValuedPoly, ValuedPoly> derivative(const RatMap& phi);

}  // namespace wander
