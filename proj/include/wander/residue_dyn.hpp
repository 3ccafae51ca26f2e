#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wander/heights.hpp"
#include "wander/local_analysis.hpp"
#include "wander/ratmap.hpp"

namespace wander {

/// Residue class of a point of P^1(K): its residue when v(x) >= 0,
/// infinity otherwise.
ResidueClass class_of(const ValuedPoint& x);

/// Image of a residue class under phi. A bad class covers the whole sphere.
/// A Galois class maps to the classes of phibar(alpha) over its points;
/// that is one class unless the polynomial bundles several orbits.
struct ClassImage {
  bool whole_sphere = false;
  std::vector<ResidueClass> classes;

  /// "WholeSphere", "4" or "{2, galois(z^2 + 1)}".
  std::string to_string() const;
};

/// Throws TrivialReduction.
ClassImage class_image(const ReductionReport& report, const ResidueClass& a);

struct ClassOrbitStep {
  enum class Status { GoodStep, BadClassHit, Collision };
  int step = 0;
  ResidueClass cls;
  Status status = Status::GoodStep;
  /// Earlier step with the same class, for Collision.
  int collision_with = -1;
};

/// Walks the classes b, phibar(b), ... for steps 0..depth-1. When all of
/// them are good, phi^n(W_b) = W_{phibar^n(b)} for every n <= depth.
struct ClassOrbitReport {
  enum class Verdict { AllGoodDistinct, HitBad, Cyclic, Split };
  std::vector<ClassOrbitStep> steps;
  Verdict verdict = Verdict::AllGoodDistinct;
  /// AllGoodDistinct(depth), HitBad(step), Cyclic(m, n) with class m equal
  /// to class n, Split(step) when a Galois class breaks into several.
  int first = 0;
  int second = 0;

  std::string verdict_label() const;
};

/// Throws TrivialReduction.
ClassOrbitReport class_orbit(const ReductionReport& report, const ResidueClass& b, int depth);
ClassOrbitReport class_orbit(const RatMap& phi, const ResidueClass& b, int depth);

struct PushResult {
  ResidueClass start;
  /// phibar^(N+1)(start) for the last bad hit N, or start.
  ResidueClass pushed;
  int last_bad_step = -1;
  int steps_pushed = 0;
  /// True when no bad hit can occur past the scan: heights escape for
  /// degree >= 2, a closed-form orbit test for degree one.
  bool certified = false;
  std::string evidence;
};

/// Scans the forward orbit of a (caller-certified) wandering class to the
/// horizon. Throws HorizonTooSmall if the last bad hit is at the horizon
/// or the closed form puts one beyond it.
PushResult push_past_bad(const ReductionReport& report, const ResidueClass& b, int horizon);

/// Points over an algebraic closure lying above a class.
struct ClassPreimages {
  /// (class, multiplicity of each of its points); multiplicities weighted
  /// by point counts sum to deg phibar.
  std::vector<std::pair<ResidueClass, int>> classes;
  int distinct_points = 0;
};

/// Throws TrivialReduction.
ClassPreimages class_preimages(const ReductionReport& report, const ResidueClass& a);
ClassPreimages class_preimages(const ResidueMap& phibar, const ResidueClass& a);

/// phibar = psi(z^(p^r)) with r maximal.
struct SeparabilityData {
  int r = 0;
  ResidueMap psi;
  bool separable = true;
};

SeparabilityData separability_decompose(const ResidueMap& phibar);

struct JuliaGrowthReport {
  enum class Conclusion { InfinitelyManyCertified, HypothesesNotMet };
  /// Classes holding a repelling fixed point, with their witnesses.
  std::vector<std::pair<ResidueClass, RepellingResult>> witnesses;
  /// Witness classes and their class preimages, as disjoint classes.
  std::vector<ResidueClass> seeds;
  /// counts[0] is the seed point count, counts[k] the point count of the
  /// k-th preimage set.
  std::vector<int> counts;
  int r = 0;
  int psi_degree = 0;
  bool separable = true;
  Conclusion conclusion = Conclusion::HypothesesNotMet;
  std::string reason;

  std::string conclusion_label() const;
};

/// Seeds from repelling fixed points in rational classes (bad classes,
/// fixed points of phibar, infinity), then counts iterated class
/// preimages. Certifies when the seed has >= 3 points, psi is separable of
/// degree >= 2 and the count grows at depth 1. Never throws for trivial
/// reduction; that is HypothesesNotMet.
JuliaGrowthReport julia_class_growth(const RatMap& phi, int depth);

/// Evidence that the Julia set meets infinitely many residue classes.
struct JuliaWitness {
  enum class Route { RiemannHurwitzGrowth, DegreeOneBackwardOrbit };
  Route route = Route::RiemannHurwitzGrowth;
  ResidueClass witness_class;
  RepellingResult repelling;
  /// Growth counts for the first route; backward class orbit of the
  /// witness class for the second.
  std::vector<int> counts;
  std::vector<ResidueClass> backward_orbit;
  std::string evidence;

  std::string route_label() const;
};

/// julia_class_growth when it certifies; otherwise, for a degree-one
/// reduced map over Q, a repelling fixed point in a class that is not
/// periodic under phibar: every class phibar^-n of it meets the Julia set
/// and they are pairwise distinct.
std::optional<JuliaWitness> julia_witness(const RatMap& phi, int depth);

struct WanderingCertificate {
  /// The representative found by the search, and its class after being
  /// pushed past the bad classes.
  ResidueClass representative;
  PushResult push;
  ClassOrbitReport orbit;
  PreperiodicityResult wandering;
  /// Grand-orbit verdicts against the earlier certificates' representatives.
  std::vector<GrandOrbitVerdict> distinct_from;
  /// Steps at which class_of(phi^n(lift)) was recomputed and matched.
  int revalidated_depth = 0;
  std::vector<std::string> component_types;
  bool julia_upgrade = false;
};

struct CertificateOptions {
  HeightOptions heights;
  int push_horizon = 64;
  int degree_cap = kDefaultDegreeCap;
};

/// N classes whose residue-class orbits are good, pairwise distinct grand
/// orbits and wandering. Degree >= 2 uses wandering_representatives;
/// phibar = c z uses degree_one_family; other degree-one maps run the same
/// greedy search with closed-form verdicts. Component types dynamical and
/// dynamicalD are always certified; D and analytic need a Julia witness.
/// Throws HypothesesNotMet for trivial reduction, k = F_p, or a degree-one
/// map of finite order.
std::vector<WanderingCertificate> wandering_domain_certificates(
    const RatMap& phi, int count, int depth, const std::optional<JuliaWitness>& julia = std::nullopt,
    const CertificateOptions& options = {});

}  // namespace wander
