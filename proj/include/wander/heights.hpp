#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wander/limits.hpp"
#include "wander/projective.hpp"
#include "wander/ratmap.hpp"

namespace wander {

/// Multiplicative height H >= 1. The logarithm is for display only; every
/// certificate compares exact integers.
struct HeightValue {
  mpz_class multiplicative;

  double log() const;
};

/// H(m/n) = max(|m|, |n|) in lowest terms, H(inf) = 1. Requires k = Q.
HeightValue standard_height(const ResiduePoint& x);

/// max(deg num, deg den) for x in F(T); 0 at infinity.
long function_field_height(const ValuedPoint& x);
/// The same height in multiplicative form, 2^h.
HeightValue function_field_height_value(const ValuedPoint& x);

/// A point of P^1(Q) as a coprime integer pair (m, n) with n > 0, or (1, 0)
/// for infinity.
struct IntegerPoint {
  mpz_class m;
  mpz_class n;

  static IntegerPoint from(const ResiduePoint& x);
  ResiduePoint to_point() const;
  mpz_class height() const { return abs(m) > n ? mpz_class(abs(m)) : n; }
  friend bool operator==(const IntegerPoint&, const IntegerPoint&) = default;
};

/// The reduced map over Q as a pair of coprime integer binary forms
/// F(X, Y), G(X, Y) of degree d with jointly coprime coefficients.
class IntegerForms {
 public:
  explicit IntegerForms(const ResidueMap& phibar);

  int degree() const { return degree_; }
  /// Coefficients of X^i Y^(d-i), i = 0..d.
  const std::vector<mpz_class>& f() const { return f_; }
  const std::vector<mpz_class>& g() const { return g_; }

  IntegerPoint apply(const IntegerPoint& x) const;

 private:
  int degree_;
  std::vector<mpz_class> f_, g_;
};

struct HeightGapConstants {
  int degree = 0;
  /// H(phibar(x)) <= B_up * H(x)^d.
  mpz_class B_up;
  /// H(x)^d <= B_low * H(phibar(x)).
  mpz_class B_low;
  int samples_verified = 0;

  const mpz_class& B() const { return B_up > B_low ? B_up : B_low; }
};

/// Explicit constants for a reduced map over Q of degree >= 2. B_up is the
/// largest l1 norm of the integer forms. B_low comes from cofactors
/// U_i F + V_i G = A_i X^(2d-1), A_i Y^(2d-1) with deg U_i, V_i = d - 1.
/// Both are checked on 100 deterministic sample points. Throws
/// InseparableOrSharedRoot if the forms have a common root, InvalidArgument
/// for d < 2 or k != Q.
HeightGapConstants height_gap_constants(const ResidueMap& phibar);

/// Bounds on the canonical height from the orbit height H_n = H(phibar^n(x)):
///   exp((d-1) d^n hhat(x)) lies in [H_n^(d-1) / B, H_n^(d-1) * B].
/// lo and hi are that interval in log scale with outward rounding.
struct CanonicalHeightInterval {
  mpq_class lo;
  mpq_class hi;
  int depth = 0;
  int degree = 0;
  mpz_class orbit_height;
  mpz_class B;
  /// B = 1, so hhat(x) = log(orbit_height) / d^n exactly.
  bool exact = false;

  /// H_n^(d-1) > B, i.e. hhat(x) > 0.
  bool certifies_positive() const;
  /// H_n^(d-1), the multiplicative center.
  mpz_class power() const;
};

struct HeightOptions {
  std::size_t bit_budget = kDefaultBitBudget;
  /// Collision search depth for grand orbits.
  int search_depth = 10;
  /// Deepest orbit point used by a height window.
  int max_window_depth = 12;
  /// Largest forward shift tried when aligning two points' heights.
  int max_shift = 8;
  /// Candidates examined by wandering_representatives.
  int max_candidates = 4000;
};

/// Throws OrbitOverflow if an orbit height exceeds the bit budget.
CanonicalHeightInterval canonical_height_interval(const ResidueMap& phibar,
                                                  const ResiduePoint& x, int depth,
                                                  const HeightGapConstants& constants,
                                                  std::size_t bit_budget = kDefaultBitBudget);
CanonicalHeightInterval canonical_height_interval(const ResidueMap& phibar,
                                                  const ResiduePoint& x, int depth);

struct PreperiodicityResult {
  enum class Kind { Preperiodic, Wandering, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Preperiodic: phibar^tail(x) is periodic of exact period `period`.
  int tail = 0;
  int period = 0;
  /// Wandering, degree >= 2: an interval certifying hhat(x) > 0.
  std::optional<CanonicalHeightInterval> proof;
  std::string reason;

  std::string label() const;
};

/// Over F_p walks the orbit until it repeats. Over Q with d >= 2 walks
/// until a repeat or until an orbit height certifies hhat > 0. Over Q with
/// d = 1 decides in closed form: a Mobius map of finite order makes every
/// point periodic; otherwise only fixed points are.
PreperiodicityResult preperiodicity_test(const ResidueMap& phibar, const ResiduePoint& x,
                                         const HeightOptions& options = {});

/// Evidence that hhat(x) and hhat(y') lie in (log w, d log w] and their
/// intervals are disjoint, where y' is phibar^shift(y) (or x' when shift
/// is negative). Both intervals use the same depth n.
struct WindowEvidence {
  int depth = 0;
  int shift = 0;
  mpq_class w;
  CanonicalHeightInterval x_interval;
  CanonicalHeightInterval y_interval;
};

struct GrandOrbitVerdict {
  enum class Kind { SameOrbit, DistinctCertified, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// SameOrbit witness: phibar^m(x) = phibar^n(y), re-checked.
  int m = 0;
  int n = 0;
  std::optional<WindowEvidence> window;
  std::string evidence;

  std::string label() const;
};

/// Collision search to options.search_depth, then a height window for
/// degree >= 2. Degree-one maps over Q with a rational fixed point are
/// decided in closed form after moving that fixed point to infinity.
/// Requires k = Q.
GrandOrbitVerdict distinct_grand_orbit_certificate(const ResidueMap& phibar,
                                                   const ResiduePoint& x,
                                                   const ResiduePoint& y,
                                                   const HeightOptions& options = {});

struct WanderingFamily {
  std::vector<ResiduePoint> points;
  std::vector<PreperiodicityResult> wandering;
  /// verdicts[i][j] for j < i.
  std::vector<std::vector<GrandOrbitVerdict>> verdicts;
  int candidates_examined = 0;
};

/// Greedy search over rationals in height order: a candidate is kept when
/// it is certified wandering and certified distinct from every kept point.
/// Throws SearchBudgetExhausted. Requires k = Q and d >= 2.
WanderingFamily wandering_representatives(const ResidueMap& phibar, int count,
                                          const HeightOptions& options = {});

/// Rationals of height H in enumeration order: H/q, q/H for q < H coprime
/// to H, then their negatives. Height 1 gives 0, 1, -1, inf.
std::vector<ResiduePoint> rationals_of_height(long H);

struct DegreeOneFamily {
  mpq_class c;
  std::vector<mpz_class> points;
  /// Brute-force collision search depth that found nothing.
  int verified_depth = 0;
};

/// The first `count` primes dividing neither the numerator nor the
/// denominator of c; pairwise in distinct grand orbits of z -> c z. Throws
/// RootOfUnity for c = +-1 and InvalidArgument for c = 0.
DegreeOneFamily degree_one_family(const mpq_class& c, int count, int verify_depth = 12);

}  // namespace wander
