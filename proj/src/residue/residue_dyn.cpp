#include "wander/residue_dyn.hpp"

#include <algorithm>
#include <set>

namespace wander {

namespace {

// A finite set of points of P^1 over an algebraic closure of k: rational
// points, infinity, and one squarefree polynomial without rational roots
// for everything else.
class PointSet {
 public:
  explicit PointSet(Field f) : field_(f), galois_(ResiduePoly::one(f)) {}

  void add(const ResidueClass& c) {
    switch (c.kind()) {
      case ResidueClass::Kind::Rational:
        rationals_.insert(c.value());
        break;
      case ResidueClass::Kind::Infinity:
        infinity_ = true;
        break;
      case ResidueClass::Kind::Galois: {
        const ResiduePoly& p = c.polynomial();
        galois_ = (galois_ * p / gcd(galois_, p)).monic();
        break;
      }
    }
  }

  int count() const {
    return static_cast<int>(rationals_.size()) + (infinity_ ? 1 : 0) + galois_.degree();
  }

  std::vector<ResidueClass> classes() const {
    std::vector<ResidueClass> out;
    for (const auto& r : rationals_) out.push_back(ResidueClass::rational(r));
    if (galois_.degree() > 0) out.push_back(ResidueClass::galois(galois_));
    if (infinity_) out.push_back(ResidueClass::infinity(field_));
    return out;
  }

 private:
  Field field_;
  std::set<ResidueScalar> rationals_;
  bool infinity_ = false;
  ResiduePoly galois_;
};

// Classes of phibar over the points of a, ignoring badness.
std::vector<ResidueClass> reduced_image(const ResidueMap& m, const ResidueClass& a) {
  if (!a.is_galois()) return {ResidueClass::of(m(a.point()))};
  // Res_x(p(x), f0(x) - y g0(x)) vanishes exactly at the finite images;
  // y is modelled by T in F(y).
  const Field f = m.field();
  const ResiduePoly& p = a.polynomial();
  const ValuedPoly h = lift(m.numerator()) - lift(m.denominator()) * ValuedScalar::t_power(f, 1);
  const ValuedScalar res = resultant(lift(p), h);
  PointSet out(f);
  if (gcd(p, m.denominator()).degree() > 0) out.add(ResidueClass::infinity(f));
  if (res.num().degree() > 0) {
    for (const auto& c : classes_of_roots(res.num())) out.add(c);
  }
  return out.classes();
}

// Adds the roots of h (finite preimages) with multiplicities.
void add_roots(const ResiduePoly& h, ClassPreimages& out) {
  const RationalRoots rr = rational_roots(h);
  for (const auto& r : rr.roots) {
    out.classes.emplace_back(ResidueClass::rational(r.root), r.multiplicity);
  }
  for (const auto& [factor, mult] : squarefree_decomposition(rr.cofactor)) {
    out.classes.emplace_back(ResidueClass::galois(factor), mult);
  }
}

ValuedPoint lift_point(const ResidueClass& c) {
  if (c.is_infinity()) return ValuedPoint::infinity(c.field());
  return ValuedPoint(ValuedScalar(c.value()));
}

struct DegreeOne {
  ResidueScalar a, b, c, d;
};

DegreeOne coefficients(const ResidueMap& m) {
  return {m.numerator().coeff(1), m.numerator().coeff(0), m.denominator().coeff(1),
          m.denominator().coeff(0)};
}

// Degree-one maps over Q of finite order: the identity, or tr^2/det in
// {0, 1, 2, 3} (orders 2, 3, 4, 6).
bool finite_order(const ResidueMap& m) {
  const DegreeOne k = coefficients(m);
  if (k.b.is_zero() && k.c.is_zero() && k.a == k.d) return true;
  const ResidueScalar tr = k.a + k.d;
  const ResidueScalar t = tr * tr / (k.a * k.d - k.b * k.c);
  for (long v : {0L, 1L, 2L, 3L}) {
    if (t == ResidueScalar(m.field(), v)) return true;
  }
  return false;
}

// Rational classes worth testing for a repelling fixed point: the bad
// ones, then the classes of rational fixed points of phibar, then infinity.
std::vector<ResidueClass> witness_candidates(const ReductionReport& report) {
  const ResidueMap& m = report.map();
  const Field f = m.field();
  std::vector<ResidueClass> out;
  auto push = [&](const ResidueClass& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  for (const auto& c : report.bad_classes) {
    if (!c.is_galois()) push(c);
  }
  const ResiduePoly fixed = m.numerator() - ResiduePoly::variable(f) * m.denominator();
  if (!fixed.is_zero()) {
    for (const auto& r : rational_roots(fixed).roots) push(ResidueClass::rational(r.root));
  }
  push(ResidueClass::infinity(f));
  return out;
}

PointSet preimage_set(const ReductionReport& report, const PointSet& s) {
  PointSet out(report.map().field());
  for (const auto& c : s.classes()) {
    for (const auto& [pc, mult] : class_preimages(report, c).classes) out.add(pc);
  }
  return out;
}

bool is_scaling(const ResidueMap& m) {
  const DegreeOne k = coefficients(m);
  return k.b.is_zero() && k.c.is_zero();
}

struct Representative {
  ResiduePoint point;
  PreperiodicityResult wandering;
  std::vector<GrandOrbitVerdict> verdicts;
};

std::vector<Representative> degree_one_representatives(const ResidueMap& m, int count,
                                                       const HeightOptions& options) {
  std::vector<Representative> reps;
  auto accept_if_distinct = [&](const ResiduePoint& x) {
    PreperiodicityResult pre = preperiodicity_test(m, x, options);
    if (pre.kind != PreperiodicityResult::Kind::Wandering) return;
    std::vector<GrandOrbitVerdict> verdicts;
    for (const auto& r : reps) {
      GrandOrbitVerdict v = distinct_grand_orbit_certificate(m, x, r.point, options);
      if (v.kind != GrandOrbitVerdict::Kind::DistinctCertified) return;
      verdicts.push_back(std::move(v));
    }
    reps.push_back({x, std::move(pre), std::move(verdicts)});
  };

  if (is_scaling(m)) {
    const DegreeOne k = coefficients(m);
    const DegreeOneFamily fam = degree_one_family((k.a / k.d).rational(), count);
    for (const auto& p : fam.points) {
      accept_if_distinct(ResiduePoint(ResidueScalar(m.field(), mpq_class(p))));
    }
    if (static_cast<int>(reps.size()) == count) return reps;
    throw Error(ErrorCode::SearchBudgetExhausted, "degree_one_family points failed re-verification");
  }

  int examined = 0;
  for (long H = 1; static_cast<int>(reps.size()) < count; ++H) {
    for (const auto& x : rationals_of_height(H)) {
      if (static_cast<int>(reps.size()) == count) break;
      if (++examined > options.max_candidates) {
        throw Error(ErrorCode::SearchBudgetExhausted,
                    "examined " + std::to_string(options.max_candidates) +
                        " candidates without finding " + std::to_string(count) + " grand orbits");
      }
      accept_if_distinct(x);
    }
  }
  return reps;
}

}  // namespace

ResidueClass class_of(const ValuedPoint& x) {
  const Field f = x.is_infinity() ? x.field() : x.value().field();
  if (x.is_infinity()) return ResidueClass::infinity(f);
  const ValuedScalar& v = x.value();
  if (v.valuation() < ExtInt(0)) return ResidueClass::infinity(f);
  return ResidueClass::rational(v.residue());
}

std::string ClassImage::to_string() const {
  if (whole_sphere) return "WholeSphere";
  if (classes.size() == 1) return classes.front().to_string();
  std::string s = "{";
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) s += ", ";
    s += classes[i].to_string();
  }
  return s + "}";
}

ClassImage class_image(const ReductionReport& report, const ResidueClass& a) {
  const ResidueMap& m = report.map();
  ClassImage img;
  if (report.is_bad(a)) {
    img.whole_sphere = true;
    return img;
  }
  img.classes = reduced_image(m, a);
  return img;
}

std::string ClassOrbitReport::verdict_label() const {
  switch (verdict) {
    case Verdict::AllGoodDistinct:
      return "AllGoodDistinct(" + std::to_string(first) + ")";
    case Verdict::HitBad:
      return "HitBad(" + std::to_string(first) + ")";
    case Verdict::Cyclic:
      return "Cyclic(" + std::to_string(first) + ", " + std::to_string(second) + ")";
    case Verdict::Split:
      return "Split(" + std::to_string(first) + ")";
  }
  return "";
}

ClassOrbitReport class_orbit(const ReductionReport& report, const ResidueClass& b, int depth) {
  (void)report.map();
  ClassOrbitReport out;
  ResidueClass cur = b;
  for (int n = 0; n < depth; ++n) {
    ClassOrbitStep step{n, cur, ClassOrbitStep::Status::GoodStep, -1};
    for (const auto& prev : out.steps) {
      if (prev.cls == cur) {
        const int m = prev.step;
        step.status = ClassOrbitStep::Status::Collision;
        step.collision_with = m;
        out.steps.push_back(step);
        out.verdict = ClassOrbitReport::Verdict::Cyclic;
        out.first = m;
        out.second = n;
        return out;
      }
    }
    if (report.is_bad(cur)) {
      step.status = ClassOrbitStep::Status::BadClassHit;
      out.steps.push_back(step);
      out.verdict = ClassOrbitReport::Verdict::HitBad;
      out.first = n;
      return out;
    }
    out.steps.push_back(step);
    const ClassImage img = class_image(report, cur);
    if (img.classes.size() != 1) {
      out.verdict = ClassOrbitReport::Verdict::Split;
      out.first = n;
      return out;
    }
    cur = img.classes.front();
  }
  out.verdict = ClassOrbitReport::Verdict::AllGoodDistinct;
  out.first = depth;
  return out;
}

ClassOrbitReport class_orbit(const RatMap& phi, const ResidueClass& b, int depth) {
  return class_orbit(reduce(phi), b, depth);
}

PushResult push_past_bad(const ReductionReport& report, const ResidueClass& b, int horizon) {
  const ResidueMap& m = report.map();
  if (horizon < 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 0");
  const Field f = m.field();
  PushResult r;
  r.start = b;
  r.pushed = b;

  auto advance = [&](const ResidueClass& c, int steps) {
    ResidueClass x = c;
    for (int i = 0; i < steps; ++i) x = reduced_image(m, x).front();
    return x;
  };
  auto finish = [&](int last) {
    if (last >= horizon && last >= 0) {
      throw Error(ErrorCode::HorizonTooSmall, "bad hit at step " + std::to_string(last) +
                                                  " is not inside horizon " +
                                                  std::to_string(horizon));
    }
    r.last_bad_step = last;
    r.steps_pushed = last + 1;
    r.pushed = advance(b, last + 1);
  };

  // Degree one over Q: phibar is a bijection of P^1(Q), so the orbit of a
  // wandering b meets a bad class c at most once, at the step given by the
  // closed-form grand-orbit test.
  if (!b.is_galois() && f.is_rationals() && m.degree() == 1) {
    int last = -1;
    bool exact = true;
    for (const auto& c : report.bad_classes) {
      if (c.is_galois()) continue;
      const GrandOrbitVerdict v = distinct_grand_orbit_certificate(m, b.point(), c.point());
      if (v.kind == GrandOrbitVerdict::Kind::SameOrbit) {
        if (v.m >= v.n) last = std::max(last, v.m - v.n);
      } else if (v.kind == GrandOrbitVerdict::Kind::Inconclusive) {
        exact = false;
      }
    }
    if (exact) {
      finish(last);
      r.certified = true;
      r.evidence = "degree-one closed form: last bad hit at step " + std::to_string(last);
      return r;
    }
  }

  // Height escape for degree >= 2 over Q: once H^(d-1) > B_low the orbit
  // heights increase strictly, and once H exceeds every rational bad
  // class's height no later step can be bad.
  std::optional<mpz_class> b_low;
  mpz_class max_bad = 1;
  if (!b.is_galois() && f.is_rationals() && m.degree() >= 2) {
    b_low = height_gap_constants(m).B_low;
    for (const auto& c : report.bad_classes) {
      if (c.is_rational()) max_bad = std::max(max_bad, standard_height(c.point()).multiplicative);
    }
  }

  int last = -1;
  ResidueClass cur = b;
  for (int n = 0; n <= horizon; ++n) {
    const bool bad = report.is_bad(cur);
    if (bad) last = n;
    if (b_low && !bad) {
      const mpz_class h = IntegerPoint::from(cur.point()).height();
      mpz_class hp;
      mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(m.degree() - 1));
      if (h > max_bad && hp > *b_low) {
        finish(last);
        r.certified = true;
        r.evidence = "heights escape at step " + std::to_string(n) + " (H = " + h.get_str() +
                     ", B_low = " + b_low->get_str() + ")";
        return r;
      }
    }
    if (n == horizon) break;
    const auto next = reduced_image(m, cur);
    if (next.size() != 1) break;
    cur = next.front();
  }
  finish(last);
  r.evidence = "scanned to horizon " + std::to_string(horizon);
  return r;
}

ClassPreimages class_preimages(const ResidueMap& m, const ResidueClass& a) {
  const int d = m.degree();
  ClassPreimages out;
  ResiduePoly h(m.field());
  switch (a.kind()) {
    case ResidueClass::Kind::Rational:
      h = m.numerator() - m.denominator() * a.value();
      break;
    case ResidueClass::Kind::Infinity:
      h = m.denominator();
      break;
    case ResidueClass::Kind::Galois: {
      // g0^e q(f0/g0), e = deg q; phibar(inf) is rational or infinite, so
      // it never lies over q and no degree is lost.
      const ResiduePoly& q = a.polynomial();
      const int e = q.degree();
      for (int j = 0; j <= e; ++j) {
        h += m.numerator().pow(static_cast<unsigned>(j)) *
             m.denominator().pow(static_cast<unsigned>(e - j)) * q.coeff(j);
      }
      break;
    }
  }
  add_roots(h, out);
  if (!a.is_galois() && h.degree() < d) {
    out.classes.emplace_back(ResidueClass::infinity(m.field()), d - h.degree());
  }
  std::sort(out.classes.begin(), out.classes.end());
  for (const auto& [c, mult] : out.classes) out.distinct_points += c.point_count();
  return out;
}

ClassPreimages class_preimages(const ReductionReport& report, const ResidueClass& a) {
  return class_preimages(report.map(), a);
}

SeparabilityData separability_decompose(const ResidueMap& m) {
  const std::uint32_t p = m.field().characteristic();
  if (p == 0) return {0, m, true};
  auto in_z_p = [p](const ResiduePoly& q) {
    for (int i = 0; i <= q.degree(); ++i) {
      if (!q.coeffs()[static_cast<std::size_t>(i)].is_zero() && i % static_cast<int>(p) != 0) {
        return false;
      }
    }
    return true;
  };
  auto contract = [p](const ResiduePoly& q) {
    std::vector<ResidueScalar> c;
    for (int i = 0; i <= q.degree(); i += static_cast<int>(p)) c.push_back(q.coeffs()[static_cast<std::size_t>(i)]);
    return ResiduePoly(q.field(), std::move(c));
  };
  ResiduePoly a = m.numerator(), b = m.denominator();
  int r = 0;
  while (in_z_p(a) && in_z_p(b)) {
    a = contract(a);
    b = contract(b);
    ++r;
  }
  ResidueMap psi(a, b);
  const bool separable = !(a.derivative() * b - a * b.derivative()).is_zero();
  return {r, psi, separable};
}

std::string JuliaGrowthReport::conclusion_label() const {
  return conclusion == Conclusion::InfinitelyManyCertified ? "InfinitelyManyCertified"
                                                           : "HypothesesNotMet";
}

JuliaGrowthReport julia_class_growth(const RatMap& phi, int depth) {
  JuliaGrowthReport rep;
  const ReductionReport report = reduce(phi);
  if (report.classification == Classification::Trivial) {
    rep.reason = "trivial reduction";
    return rep;
  }
  const ResidueMap& m = report.map();
  const SeparabilityData sep = separability_decompose(m);
  rep.r = sep.r;
  rep.psi_degree = sep.psi.degree();
  rep.separable = sep.separable;

  for (const auto& c : witness_candidates(report)) {
    try {
      RepellingResult w = repelling_fixed_class(phi, c);
      if (w.found) rep.witnesses.emplace_back(c, std::move(w));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BadLift) throw;
    }
  }
  if (rep.witnesses.empty()) {
    rep.reason = "no repelling fixed point found in a rational class";
    return rep;
  }

  PointSet seeds(m.field());
  for (const auto& [c, w] : rep.witnesses) {
    seeds.add(c);
    for (const auto& [pc, mult] : class_preimages(report, c).classes) seeds.add(pc);
  }
  rep.seeds = seeds.classes();
  rep.counts.push_back(seeds.count());
  PointSet cur = seeds;
  for (int k = 1; k <= depth; ++k) {
    cur = preimage_set(report, cur);
    rep.counts.push_back(cur.count());
  }

  if (rep.counts.front() < 3) {
    rep.reason = "seed has " + std::to_string(rep.counts.front()) + " points, need 3";
  } else if (!rep.separable || rep.psi_degree < 2) {
    rep.reason = "psi has degree " + std::to_string(rep.psi_degree) + ", need a separable map of degree >= 2";
  } else if (rep.counts.size() < 2 || rep.counts[1] <= rep.counts[0]) {
    rep.reason = "no growth observed at depth 1";
  } else {
    rep.conclusion = JuliaGrowthReport::Conclusion::InfinitelyManyCertified;
    rep.reason = "seed of " + std::to_string(rep.counts[0]) + " points grows to " +
                 std::to_string(rep.counts[1]);
  }
  return rep;
}

std::string JuliaWitness::route_label() const {
  return route == Route::RiemannHurwitzGrowth ? "RiemannHurwitzGrowth" : "DegreeOneBackwardOrbit";
}

std::optional<JuliaWitness> julia_witness(const RatMap& phi, int depth) {
  const JuliaGrowthReport growth = julia_class_growth(phi, depth);
  if (growth.conclusion == JuliaGrowthReport::Conclusion::InfinitelyManyCertified) {
    JuliaWitness w;
    w.route = JuliaWitness::Route::RiemannHurwitzGrowth;
    w.witness_class = growth.witnesses.front().first;
    w.repelling = growth.witnesses.front().second;
    w.counts = growth.counts;
    w.evidence = growth.reason;
    return w;
  }
  const ReductionReport report = reduce(phi);
  if (report.classification == Classification::Trivial) return std::nullopt;
  const ResidueMap& m = report.map();
  if (m.degree() != 1 || !m.field().is_rationals()) return std::nullopt;

  // Every class over a Julia class meets J: a good class maps onto it, a
  // bad one onto everything. phibar^-1 is a bijection, so a non-periodic
  // witness class has infinitely many distinct backward images.
  const DegreeOne k = coefficients(m);
  const ResidueMap inverse(ResiduePoly(m.field(), {-k.b, k.d}), ResiduePoly(m.field(), {k.a, -k.c}));
  for (const auto& [c, rep] : growth.witnesses) {
    if (preperiodicity_test(m, c.point()).kind != PreperiodicityResult::Kind::Wandering) continue;
    JuliaWitness w;
    w.route = JuliaWitness::Route::DegreeOneBackwardOrbit;
    w.witness_class = c;
    w.repelling = rep;
    ResidueClass cur = c;
    for (int n = 0; n <= depth; ++n) {
      w.backward_orbit.push_back(cur);
      cur = ResidueClass::of(inverse(cur.point()));
    }
    w.evidence = "repelling fixed point in non-periodic class " + c.to_string() +
                 " of a degree-one reduced map";
    return w;
  }
  return std::nullopt;
}

std::vector<WanderingCertificate> wandering_domain_certificates(
    const RatMap& phi, int count, int depth, const std::optional<JuliaWitness>& julia,
    const CertificateOptions& options) {
  const ReductionReport report = reduce(phi);
  if (report.classification == Classification::Trivial) {
    throw Error(ErrorCode::HypothesesNotMet, "trivial reduction");
  }
  const ResidueMap& m = report.map();
  if (m.field().is_finite()) {
    throw Error(ErrorCode::HypothesesNotMet,
                "residue field " + m.field().name() + " is finite, so every class is preperiodic");
  }

  std::vector<Representative> reps;
  if (m.degree() >= 2) {
    WanderingFamily fam = wandering_representatives(m, count, options.heights);
    for (std::size_t i = 0; i < fam.points.size(); ++i) {
      reps.push_back({fam.points[i], fam.wandering[i], fam.verdicts[i]});
    }
  } else {
    if (finite_order(m)) {
      throw Error(ErrorCode::HypothesesNotMet,
                  "reduced map " + m.to_string() + " has finite order, so every class is periodic");
    }
    reps = degree_one_representatives(m, count, options.heights);
  }

  // Largest n < depth with deg(phi^n) within the cap.
  int lift_depth = 0;
  for (long deg = 1; lift_depth + 1 < depth && deg * phi.degree() <= options.degree_cap;
       deg *= phi.degree()) {
    ++lift_depth;
  }

  std::vector<WanderingCertificate> out;
  for (auto& rep : reps) {
    WanderingCertificate cert;
    cert.representative = ResidueClass::of(rep.point);
    cert.push = push_past_bad(report, cert.representative, options.push_horizon);
    cert.orbit = class_orbit(report, cert.push.pushed, depth);
    if (cert.orbit.verdict != ClassOrbitReport::Verdict::AllGoodDistinct) {
      throw Error(ErrorCode::HorizonTooSmall, "orbit of " + cert.push.pushed.to_string() +
                                                  " ends with " + cert.orbit.verdict_label() +
                                                  " after pushing past bad classes");
    }
    cert.wandering = std::move(rep.wandering);
    cert.distinct_from = std::move(rep.verdicts);

    ValuedPoint x = lift_point(cert.push.pushed);
    for (int n = 0; n < static_cast<int>(cert.orbit.steps.size()) && n <= lift_depth; ++n) {
      if (class_of(x) != cert.orbit.steps[static_cast<std::size_t>(n)].cls) break;
      cert.revalidated_depth = n + 1;
      if (n < lift_depth) x = phi(x);
    }

    cert.component_types = {"dynamical", "dynamicalD"};
    if (julia) {
      cert.julia_upgrade = true;
      cert.component_types.push_back("D");
      cert.component_types.push_back("analytic");
    }
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace wander
