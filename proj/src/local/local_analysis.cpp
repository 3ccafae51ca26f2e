#include "wander/local_analysis.hpp"

#include <algorithm>

namespace wander {

namespace {

mpq_class val(const ValuedScalar& x) { return mpq_class(x.valuation().value()); }

// min_i v(p_i) + i s over nonzero coefficients, and whether one index
// attains it alone. On the sphere v(w) = s that minimum is v(p(w)) exactly
// when it is unique.
struct SphereMin {
  mpq_class value;
  bool unique = false;
  int argmin = -1;
};

SphereMin sphere_min(const ValuedPoly& p, const mpq_class& s) {
  SphereMin m;
  for (int i = 0; i <= p.degree(); ++i) {
    const ValuedScalar& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const mpq_class v = val(c) + i * s;
    if (m.argmin < 0 || v < m.value) {
      m.value = v;
      m.unique = true;
      m.argmin = i;
    } else if (v == m.value) {
      m.unique = false;
    }
  }
  return m;
}

ValuedPoly shifted_denominator(const RatMap& phi, const ValuedScalar& a) {
  return phi.denominator().shift(a);
}

bool is_open(const Disk& u) { return u.kind == Disk::Kind::Open; }

// An expansion deep enough that the truncated minima below are exact on a
// pole-free disk. Throws PoleInDisk.
LocalExpansion checked_expansion(const RatMap& phi, const Disk& u) {
  const ValuedPoly g = shifted_denominator(phi, u.center);
  if (g.coeff(0).is_zero()) {
    throw Error(ErrorCode::PoleInDisk, "phi has a pole at the center " + u.center.to_string());
  }
  const int order = std::max({2 * phi.degree(), phi.numerator().degree(), g.degree() + 1});
  LocalExpansion e = taylor_expand(phi, u.center, order);
  if (e.pole_free_radius_valuation) {
    const mpq_class& rho = *e.pole_free_radius_valuation;
    if (is_open(u) ? u.radius_valuation < rho : u.radius_valuation <= rho) {
      throw Error(ErrorCode::PoleInDisk, u.to_string() + " contains a pole at valuation " +
                                             rho.get_str() + " from the center");
    }
  }
  return e;
}

}  // namespace

std::vector<std::pair<mpq_class, int>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<mpq_class, int>> out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    out.emplace_back(-it->slope, it->length);
  }
  return out;
}

std::optional<mpq_class> NewtonPolygon::max_root_valuation() const {
  if (segments.empty()) return std::nullopt;
  return mpq_class(-segments.front().slope);
}

int NewtonPolygon::roots_beyond(const mpq_class& s, bool inclusive) const {
  int n = zero_roots;
  for (const auto& seg : segments) {
    const mpq_class v = -seg.slope;
    if (v > s || (inclusive && v == s)) n += seg.length;
  }
  return n;
}

NewtonPolygon newton_polygon(const ValuedPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Newton polygon of the zero polynomial");
  NewtonPolygon np;
  np.degree = p.degree();
  for (int i = 0; i <= p.degree(); ++i) {
    const ValuedScalar& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (!c.is_zero()) np.support.emplace_back(i, c.valuation().value());
  }
  np.zero_roots = np.support.front().first;

  std::vector<std::pair<int, long>> hull;
  for (const auto& pt : np.support) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) -
                         (b.second - a.second) * static_cast<long>(pt.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    NewtonSegment seg;
    seg.length = hull[i].first - hull[i - 1].first;
    seg.start = hull[i - 1].first;
    seg.slope = mpq_class(hull[i].second - hull[i - 1].second, seg.length);
    seg.slope.canonicalize();
    np.segments.push_back(seg);
  }
  return np;
}

bool Disk::contains(const ValuedScalar& x) const {
  const ExtInt v = (x - center).valuation();
  if (v.is_infinite()) return true;
  const mpq_class q(v.value());
  return kind == Kind::Open ? q > radius_valuation : q >= radius_valuation;
}

std::string Disk::to_string() const {
  return std::string(kind == Kind::Open ? "D(" : "Dbar(") + center.to_string() + ", " +
         radius_valuation.get_str() + ")";
}

LocalExpansion taylor_expand(const RatMap& phi, const ValuedScalar& a, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "expansion order must be >= 0");
  const ValuedPoly f = phi.numerator().shift(a);
  const ValuedPoly g = shifted_denominator(phi, a);
  const ValuedScalar g0 = g.coeff(0);
  if (g0.is_zero()) {
    throw Error(ErrorCode::PoleAtCenter, "phi has a pole at " + a.to_string());
  }
  const ValuedScalar g0inv = g0.inverse();

  LocalExpansion e;
  e.center = a;
  e.coefficients.reserve(static_cast<std::size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) {
    ValuedScalar acc = f.coeff(i);
    for (int j = 1; j <= std::min(i, g.degree()); ++j) {
      acc -= g.coeff(j) * e.coefficients[static_cast<std::size_t>(i - j)];
    }
    e.coefficients.push_back(acc * g0inv);
  }
  if (g.degree() > 0) e.pole_free_radius_valuation = newton_polygon(g).max_root_valuation();

  // Past deg f the coefficients obey c_i = -sum_j g_j c_{i-j} / g_0 and
  // v(g_j) - v(g_0) >= -rho j, so a window of deg g trailing terms bounds
  // the whole tail by induction.
  if (order >= f.degree()) {
    if (g.degree() == 0) {
      e.tail = LocalExpansion::Tail::Vanishes;
    } else if (order >= g.degree()) {
      const mpq_class& rho = *e.pole_free_radius_valuation;
      std::optional<mpq_class> offset;
      for (int k = order - g.degree() + 1; k <= order; ++k) {
        const ValuedScalar& c = e.coefficients[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const mpq_class t = val(c) + rho * k;
        if (!offset || t < *offset) offset = t;
      }
      if (offset) {
        e.tail = LocalExpansion::Tail::Bounded;
        e.tail_offset = *offset;
      } else {
        e.tail = LocalExpansion::Tail::Vanishes;
      }
    }
  }
  return e;
}

// With s >= rho and order >= deg g + 1 the tail bound of taylor_expand
// gives v(c_i) + i s >= min over the window of v(c_k) + k s for i > order,
// so minima over the truncated coefficients are exact.
Disk disk_image(const RatMap& phi, const Disk& u) {
  const LocalExpansion e = checked_expansion(phi, u);
  std::optional<mpq_class> t;
  for (int i = 1; i <= e.order(); ++i) {
    const ValuedScalar& c = e.coefficients[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const mpq_class v = val(c) + i * u.radius_valuation;
    if (!t || v < *t) t = v;
  }
  if (!t) throw Error(ErrorCode::ImageNotBounded, "no nonconstant term in the expansion");
  return Disk{e.coefficients[0], *t, u.kind};
}

InjectivityResult injectivity_isometry(const RatMap& phi, const Disk& u) {
  const LocalExpansion e = checked_expansion(phi, u);
  const mpq_class& s = u.radius_valuation;
  const ValuedScalar& c1 = e.coefficients[1];
  InjectivityResult r;
  r.injective = true;
  for (int i = 2; i <= e.order(); ++i) {
    const ValuedScalar& c = e.coefficients[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    bool breaks = c1.is_zero();
    if (!breaks) {
      const mpq_class lhs = val(c1) + s;
      const mpq_class rhs = val(c) + i * s;
      breaks = is_open(u) ? lhs > rhs : lhs >= rhs;
    }
    if (breaks) {
      r.injective = false;
      r.witness_index = i;
      break;
    }
  }
  if (r.injective) r.scaling_valuation = c1.valuation();

  const ValuedPoly crit = derivative(phi).first.shift(u.center);
  if (!crit.is_zero()) r.critical_points_in_disk = newton_polygon(crit).roots_beyond(s, !is_open(u));
  return r;
}

RepellingResult repelling_fixed_class(const RatMap& phi, const ResidueClass& c) {
  if (c.is_galois()) {
    throw Error(ErrorCode::InvalidArgument, "repelling_fixed_class needs a rational class");
  }
  if (c.is_infinity()) {
    return repelling_fixed_class(phi.flipped(), ResidueClass::rational(ResidueScalar::zero(c.field())));
  }
  const Field fld = phi.field();
  const ValuedScalar zeta(ResiduePoly::constant(c.value()));
  const ValuedPoly f = phi.numerator().shift(zeta);
  const ValuedPoly g = phi.denominator().shift(zeta);
  const ValuedPoly z(fld, {zeta, ValuedScalar::one(fld)});
  const ValuedPoly fixed = f - z * g;

  RepellingResult r;
  if (fixed.is_zero()) return r;  // the identity

  const auto [dnum, dden] = derivative(phi);
  const ValuedPoly dn = dnum.shift(zeta);
  const ValuedPoly dd = dden.shift(zeta);
  bool blocked = false;

  const NewtonPolygon np = newton_polygon(fixed);
  for (const auto& [s, count] : np.root_valuations()) {
    if (s <= 0) continue;
    FixedSphere sphere{s, count, std::nullopt};
    if (!dn.is_zero()) {
      const SphereMin top = sphere_min(dn, s);
      const SphereMin bottom = sphere_min(dd, s);
      if (!bottom.unique) {
        blocked = true;
      } else if (top.unique) {
        sphere.derivative_valuation = top.value - bottom.value;
        if (!r.found && *sphere.derivative_valuation < 0) {
          r.found = true;
          r.offset = s;
          r.derivative_valuation = *sphere.derivative_valuation;
        }
      }
    }
    r.spheres.push_back(sphere);
  }

  if (np.zero_roots > 0) {
    r.lift_is_fixed = true;
    const ValuedScalar top = dn.coeff(0);
    const ValuedScalar bottom = dd.coeff(0);
    if (!top.is_zero() && !bottom.is_zero()) {
      r.lift_derivative_valuation = val(top) - val(bottom);
      if (!r.found && *r.lift_derivative_valuation < 0) {
        r.found = true;
        r.offset.reset();
        r.derivative_valuation = *r.lift_derivative_valuation;
      }
    }
  }
  if (!r.found && blocked) {
    throw Error(ErrorCode::BadLift, "a pole on a fixed-point sphere hides |phi'| in class " +
                                        c.to_string());
  }
  return r;
}

}  // namespace wander
