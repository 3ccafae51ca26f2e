#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wander/ratmap.hpp"

namespace wander {

struct NewtonSegment {
  /// Slope of the hull edge; its roots have valuation -slope.
  mpq_class slope;
  int length = 0;
  /// Index where the edge starts.
  int start = 0;
};

/// Lower convex hull of the points (i, v(c_i)) of a nonzero polynomial over
/// K. Slopes strictly increase along the hull.
struct NewtonPolygon {
  std::vector<std::pair<int, long>> support;
  std::vector<NewtonSegment> segments;
  int degree = 0;
  /// Index of the first nonzero coefficient, i.e. the multiplicity of 0 as
  /// a root.
  int zero_roots = 0;

  /// (valuation, multiplicity) for the nonzero roots, ascending valuation.
  std::vector<std::pair<mpq_class, int>> root_valuations() const;
  /// Largest valuation of a nonzero root; empty for a monomial.
  std::optional<mpq_class> max_root_valuation() const;
  /// Number of roots (with multiplicity, 0 included) of valuation > s, or
  /// >= s when `inclusive`.
  int roots_beyond(const mpq_class& s, bool inclusive) const;
};

/// Throws ZeroPolynomial.
NewtonPolygon newton_polygon(const ValuedPoly& p);

/// D(a, r) or its closure, with r = eps^s.
struct Disk {
  enum class Kind { Open, Closed };
  ValuedScalar center;
  mpq_class radius_valuation;
  Kind kind = Kind::Open;

  bool contains(const ValuedScalar& x) const;
  /// "D(1, 1)" or "Dbar(0, 1/2)".
  std::string to_string() const;
  friend bool operator==(const Disk&, const Disk&) = default;
};

/// phi(a + w) = sum c_i w^i truncated at `order`.
struct LocalExpansion {
  enum class Tail { Unknown, Vanishes, Bounded };

  ValuedScalar center;
  std::vector<ValuedScalar> coefficients;
  /// Every pole a + w has v(w) <= this value, so D(a, s) is pole-free for
  /// s >= it. Empty when phi has no finite pole.
  std::optional<mpq_class> pole_free_radius_valuation;
  /// Bounded: v(c_i) >= tail_offset - rho * i for every i > order, where
  /// rho is pole_free_radius_valuation. Needs order >= deg f, deg g.
  Tail tail = Tail::Unknown;
  mpq_class tail_offset;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Exact truncated expansion by series division. Throws PoleAtCenter and
/// InvalidArgument for a negative order.
LocalExpansion taylor_expand(const RatMap& phi, const ValuedScalar& a, int order);

/// Image of a pole-free disk: center phi(a), radius valuation
/// min_{i >= 1} v(c_i) + i s, same kind. Throws PoleInDisk.
Disk disk_image(const RatMap& phi, const Disk& u);

struct InjectivityResult {
  bool injective = false;
  /// v(c_1), the isometry scaling |phi'(a)|, when injective.
  ExtInt scaling_valuation;
  /// First i >= 2 breaking dominance, when not injective.
  int witness_index = 0;
  /// Critical points of phi inside the disk, with multiplicity; empty when
  /// phi' vanishes identically.
  std::optional<int> critical_points_in_disk;
};

/// Injective iff v(c_1) + s <= v(c_i) + i s for all i >= 2 on an open
/// disk, with strict inequality on a closed one. Throws PoleInDisk.
InjectivityResult injectivity_isometry(const RatMap& phi, const Disk& u);

/// Fixed points a + w of phi with v(w) = offset.
struct FixedSphere {
  mpq_class offset;
  int count = 0;
  /// v(phi') on the whole sphere, when one term dominates.
  std::optional<mpq_class> derivative_valuation;
};

struct RepellingResult {
  bool found = false;
  /// Offset of the repelling fixed point from the lift; empty when the lift
  /// itself is fixed.
  std::optional<mpq_class> offset;
  mpq_class derivative_valuation;
  /// Every fixed-point sphere inside the class, ascending offset.
  std::vector<FixedSphere> spheres;
  std::optional<mpq_class> lift_derivative_valuation;
  bool lift_is_fixed = false;
};

/// Looks for a fixed point with |phi'| > 1 in the class of a rational or
/// infinite residue point. The class at infinity is handled by z -> 1/z.
/// Throws InvalidArgument for Galois classes and BadLift when a pole on a
/// fixed-point sphere blocks every verdict.
RepellingResult repelling_fixed_class(const RatMap& phi, const ResidueClass& c);

}  // namespace wander
