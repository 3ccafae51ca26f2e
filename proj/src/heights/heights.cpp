#include "wander/heights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "wander/errors.hpp"

namespace wander {

namespace {

constexpr double kLogMargin = 1e-12;

double log_mpz(const mpz_class& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

mpq_class round_down(double x) { return mpq_class(x - kLogMargin * (1.0 + std::fabs(x))); }
mpq_class round_up(double x) { return mpq_class(x + kLogMargin * (1.0 + std::fabs(x))); }

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

mpz_class ceil_root(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  if (pow_z(r, k) < n) ++r;
  return r;
}

void require_rationals(const ResidueMap& phibar, const char* op) {
  if (!phibar.field().is_rationals()) {
    throw Error(ErrorCode::InvalidArgument, std::string(op) + " requires the residue field Q");
  }
}

std::size_t bits(const mpz_class& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

CanonicalHeightInterval make_interval(const mpz_class& H, int depth, int d, const mpz_class& B) {
  CanonicalHeightInterval out;
  out.depth = depth;
  out.degree = d;
  out.orbit_height = H;
  out.B = B;
  out.exact = (B == 1);
  const double scale = std::pow(static_cast<double>(d), depth);
  const double center = log_mpz(H) / scale;
  const double err = log_mpz(B) / ((d - 1) * scale);
  out.lo = std::max(mpq_class(0), round_down(center - err));
  out.hi = round_up(center + err);
  return out;
}

// Orbit x_0, x_1, ... as integer pairs, stopping early at the bit budget.
std::vector<IntegerPoint> integer_orbit(const IntegerForms& forms, const IntegerPoint& x,
                                        int length, std::size_t bit_budget) {
  std::vector<IntegerPoint> out{x};
  while (static_cast<int>(out.size()) <= length) {
    IntegerPoint next = forms.apply(out.back());
    if (bits(next.height()) > bit_budget) break;
    out.push_back(std::move(next));
  }
  return out;
}

ResiduePoint iterate_point(const ResidueMap& phi, ResiduePoint x, long n) {
  for (long i = 0; i < n; ++i) x = phi(x);
  return x;
}

// Shared state for certificates over Q so the constants are computed once.
struct QContext {
  const ResidueMap& phi;
  IntegerForms forms;
  std::optional<HeightGapConstants> constants;

  explicit QContext(const ResidueMap& p) : phi(p), forms(p) {
    if (p.degree() >= 2) constants = height_gap_constants(p);
  }
};

PreperiodicityResult preperiodic(int tail, int period) {
  PreperiodicityResult r;
  r.kind = PreperiodicityResult::Kind::Preperiodic;
  r.tail = tail;
  r.period = period;
  return r;
}

PreperiodicityResult walk_finite_field(const ResidueMap& phi, const ResiduePoint& x) {
  // The orbit has at most p + 1 points, so a linear scan beats a tree.
  std::vector<ResiduePoint> seen;
  ResiduePoint p = x;
  for (int i = 0;; ++i) {
    const auto it = std::find(seen.begin(), seen.end(), p);
    if (it != seen.end()) {
      const int first = static_cast<int>(it - seen.begin());
      return preperiodic(first, i - first);
    }
    seen.push_back(p);
    p = phi(p);
  }
}

PreperiodicityResult walk_heights(const QContext& ctx, const ResiduePoint& x,
                                  const HeightOptions& options) {
  const HeightGapConstants& c = *ctx.constants;
  const unsigned long dm1 = static_cast<unsigned long>(c.degree - 1);
  std::map<std::pair<mpz_class, mpz_class>, int> seen;
  IntegerPoint p = IntegerPoint::from(x);
  for (int i = 0;; ++i) {
    auto [it, inserted] = seen.emplace(std::make_pair(p.m, p.n), i);
    if (!inserted) return preperiodic(it->second, i - it->second);
    const mpz_class H = p.height();
    if (pow_z(H, dm1) > c.B()) {
      PreperiodicityResult r;
      r.kind = PreperiodicityResult::Kind::Wandering;
      r.proof = make_interval(H, i, c.degree, c.B());
      r.reason = "H(phi^" + std::to_string(i) + "(x))^" + std::to_string(dm1) + " = " +
                 pow_z(H, dm1).get_str() + " exceeds B = " + c.B().get_str();
      return r;
    }
    if (bits(H) > options.bit_budget) {
      PreperiodicityResult r;
      r.reason = "orbit height exceeded the bit budget at step " + std::to_string(i);
      return r;
    }
    p = ctx.forms.apply(p);
  }
}

struct MobiusEntries {
  mpq_class a, b, c, d;
};

MobiusEntries entries(const ResidueMap& phi) {
  const auto& num = phi.numerator();
  const auto& den = phi.denominator();
  return {num.coeff(1).rational(), num.coeff(0).rational(), den.coeff(1).rational(),
          den.coeff(0).rational()};
}

PreperiodicityResult degree_one_preperiodicity(const ResidueMap& phi, const ResiduePoint& x) {
  const MobiusEntries e = entries(phi);
  const mpq_class tr = e.a + e.d;
  const mpq_class det = e.a * e.d - e.b * e.c;
  const bool scalar = e.b == 0 && e.c == 0 && e.a == e.d;
  const mpq_class t = tr * tr / det;
  if (scalar || t == 0 || t == 1 || t == 2 || t == 3) {
    // Finite order (1, 2, 3, 4 or 6): every point is periodic.
    ResiduePoint p = phi(x);
    int period = 1;
    while (!(p == x)) {
      p = phi(p);
      ++period;
    }
    PreperiodicityResult r = preperiodic(0, period);
    r.reason = "degree-one map of finite order";
    return r;
  }
  if (phi(x) == x) {
    PreperiodicityResult r = preperiodic(0, 1);
    r.reason = "fixed point of a degree-one map of infinite order";
    return r;
  }
  PreperiodicityResult r;
  r.kind = PreperiodicityResult::Kind::Wandering;
  r.reason =
      "degree-one map of infinite order (tr^2/det = " + t.get_str() +
      "); its periodic points are its fixed points and x is not fixed";
  return r;
}

GrandOrbitVerdict same_orbit(const ResidueMap& phi, const ResiduePoint& x, const ResiduePoint& y,
                             long m, long n, std::string evidence) {
  if (!(iterate_point(phi, x, m) == iterate_point(phi, y, n))) {
    throw Error(ErrorCode::InvalidArgument,
                "internal: grand orbit witness failed re-evaluation");
  }
  GrandOrbitVerdict v;
  v.kind = GrandOrbitVerdict::Kind::SameOrbit;
  v.m = static_cast<int>(m);
  v.n = static_cast<int>(n);
  v.evidence = std::move(evidence);
  return v;
}

GrandOrbitVerdict distinct(std::string evidence) {
  GrandOrbitVerdict v;
  v.kind = GrandOrbitVerdict::Kind::DistinctCertified;
  v.evidence = std::move(evidence);
  return v;
}

GrandOrbitVerdict inconclusive(std::string reason) {
  GrandOrbitVerdict v;
  v.evidence = std::move(reason);
  return v;
}

int valuation_at(const mpz_class& z, const mpz_class& q) {
  if (z == 0) return 0;
  int v = 0;
  mpz_class t = abs(z);
  while (mpz_divisible_p(t.get_mpz_t(), q.get_mpz_t())) {
    t /= q;
    ++v;
  }
  return v;
}

int valuation_at(const mpq_class& x, const mpz_class& q) {
  return valuation_at(x.get_num(), q) - valuation_at(x.get_den(), q);
}

mpq_class pow_q(const mpq_class& x, long e) {
  mpq_class base = e < 0 ? mpq_class(1) / x : x;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpq_class out(1);
  while (k > 0) {
    if (k & 1ul) out *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  out.canonicalize();
  return out;
}

// Degree-one maps: move a rational fixed point to infinity, which leaves
// w -> alpha w + beta, then decide the grand orbit relation exactly.
GrandOrbitVerdict degree_one_verdict(const ResidueMap& phi, const ResiduePoint& x,
                                     const ResiduePoint& y) {
  const Field Q = Field::rationals();
  const MobiusEntries e = entries(phi);
  std::optional<ResidueMap> g, ginv;
  if (e.c != 0) {
    const ResiduePoly fixed(Q, {ResidueScalar(Q, -e.b), ResidueScalar(Q, e.d - e.a),
                                ResidueScalar(Q, e.c)});
    const RationalRoots roots = rational_roots(fixed);
    if (roots.roots.empty()) {
      return inconclusive("degree-one map without a rational fixed point");
    }
    const ResidueScalar z0 = roots.roots.front().root;
    g.emplace(ResiduePoly::one(Q), ResiduePoly(Q, {-z0, ResidueScalar::one(Q)}));
    ginv.emplace(ResiduePoly(Q, {ResidueScalar::one(Q), z0}), ResiduePoly::variable(Q));
  }
  const ResidueMap psi = g ? g->compose(phi.compose(*ginv)) : phi;
  const ResiduePoint wx = g ? (*g)(x) : x;
  const ResiduePoint wy = g ? (*g)(y) : y;
  if (wx.is_infinity() || wy.is_infinity()) {
    if (wx == wy) return same_orbit(phi, x, y, 0, 0, "equal points");
    return distinct("exactly one point is a fixed point of the map");
  }
  const mpq_class den = psi.denominator().coeff(0).rational();
  const mpq_class alpha = psi.numerator().coeff(1).rational() / den;
  const mpq_class beta = psi.numerator().coeff(0).rational() / den;
  const mpq_class ux = wx.value().rational(), uy = wy.value().rational();

  if (alpha == 1) {
    if (beta == 0) {
      if (ux == uy) return same_orbit(phi, x, y, 0, 0, "equal points");
      return distinct("identity map: every grand orbit is a single point");
    }
    mpq_class r = (ux - uy) / beta;
    r.canonicalize();
    if (r.get_den() != 1) {
      return distinct("translation by " + beta.get_str() + " in adapted coordinates: (w(x) - w(y))/beta = " +
                      r.get_str() + " is not an integer");
    }
    const long k = r.get_num().get_si();
    if (k >= 0) return same_orbit(phi, x, y, 0, k, "translation: w(x) = w(y) + k*beta");
    return same_orbit(phi, x, y, -k, 0, "translation: w(y) = w(x) + k*beta");
  }

  const mpq_class w0 = beta / (1 - alpha);
  const mpq_class sx = ux - w0, sy = uy - w0;
  if (sx == 0 || sy == 0) {
    if (sx == sy) return same_orbit(phi, x, y, 0, 0, "equal points");
    return distinct("exactly one point is a fixed point of the map");
  }
  mpq_class r = sx / sy;
  r.canonicalize();
  if (alpha == -1) {
    if (r == 1) return same_orbit(phi, x, y, 0, 0, "equal points");
    if (r == -1) return same_orbit(phi, x, y, 0, 1, "multiplier -1 swaps the two points");
    return distinct("multiplier -1: the ratio " + r.get_str() + " is not +-1");
  }
  const mpz_class& an = alpha.get_num();
  const mpz_class& ad = alpha.get_den();
  const mpz_class q = abs(an) > 1 ? factor_integer(an).front().first : factor_integer(ad).front().first;
  const int va = valuation_at(alpha, q);
  const int vr = valuation_at(r, q);
  const std::string base = "scaling by " + alpha.get_str() + " in adapted coordinates: ";
  if (vr % va != 0) {
    return distinct(base + "v_" + q.get_str() + " of the ratio is " + std::to_string(vr) +
                    ", not a multiple of " + std::to_string(va));
  }
  const long j = vr / va;
  if (pow_q(alpha, j) != r) {
    return distinct(base + "the ratio " + r.get_str() + " is not a power of the multiplier");
  }
  if (j >= 0) return same_orbit(phi, x, y, 0, j, base + "w(x) = alpha^j w(y)");
  return same_orbit(phi, x, y, -j, 0, base + "w(y) = alpha^j w(x)");
}

// Smallest w = r/2^s with P_max*B <= w^(dE) and w^E * B < P_min.
std::optional<mpq_class> find_window(const mpz_class& pmin, const mpz_class& pmax,
                                     const mpz_class& B, unsigned long d, unsigned long E) {
  for (unsigned long s = 0; s <= 48; ++s) {
    const mpz_class scale_dE = pow_z(mpz_class(2), s * d * E);
    const mpz_class r = ceil_root(pmax * B * scale_dE, d * E);
    if (pow_z(r, E) * B < pmin * pow_z(mpz_class(2), s * E)) {
      mpq_class w(r, pow_z(mpz_class(2), s));
      w.canonicalize();
      return w;
    }
  }
  return std::nullopt;
}

GrandOrbitVerdict window_certificate(const QContext& ctx, const ResiduePoint& x,
                                     const ResiduePoint& y, const HeightOptions& options) {
  const HeightGapConstants& c = *ctx.constants;
  const mpz_class& B = c.B();
  const unsigned long d = static_cast<unsigned long>(c.degree);
  const int length = options.max_window_depth + options.max_shift;
  const auto xs = integer_orbit(ctx.forms, IntegerPoint::from(x), length, options.bit_budget);
  const auto ys = integer_orbit(ctx.forms, IntegerPoint::from(y), length, options.bit_budget);
  for (int n = 0; n <= options.max_window_depth; ++n) {
    const unsigned long E = (d - 1) * static_cast<unsigned long>(std::pow(d, n));
    for (int k = 0; k <= 2 * options.max_shift; ++k) {
      const int shift = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
      const std::size_t ix = static_cast<std::size_t>(n + std::max(-shift, 0));
      const std::size_t iy = static_cast<std::size_t>(n + std::max(shift, 0));
      if (ix >= xs.size() || iy >= ys.size()) continue;
      const mpz_class px = pow_z(xs[ix].height(), d - 1);
      const mpz_class py = pow_z(ys[iy].height(), d - 1);
      const mpz_class& pmin = px < py ? px : py;
      const mpz_class& pmax = px < py ? py : px;
      if (!(pmin * B * B < pmax)) continue;  // intervals must be disjoint
      if (!(pmax * pow_z(B, d + 1) < pow_z(pmin, d))) continue;
      const auto w = find_window(pmin, pmax, B, d, E);
      if (!w) continue;
      WindowEvidence ev;
      ev.depth = n;
      ev.shift = shift;
      ev.w = *w;
      ev.x_interval = make_interval(xs[ix].height(), n, c.degree, B);
      ev.y_interval = make_interval(ys[iy].height(), n, c.degree, B);
      GrandOrbitVerdict v = distinct(
          "canonical heights of " + std::string(shift < 0 ? "phi^" + std::to_string(-shift) + "(x)" : "x") +
          " and " + std::string(shift > 0 ? "phi^" + std::to_string(shift) + "(y)" : "y") +
          " lie in (log w, " + std::to_string(d) + " log w] with w = " + w->get_str() +
          " and have disjoint intervals, so no power of " + std::to_string(d) + " relates them");
      v.window = std::move(ev);
      return v;
    }
  }
  return inconclusive("no height window found up to depth " +
                      std::to_string(options.max_window_depth));
}

GrandOrbitVerdict certificate_in_context(const QContext& ctx, const ResiduePoint& x,
                                         const ResiduePoint& y, const HeightOptions& options) {
  const auto xs = integer_orbit(ctx.forms, IntegerPoint::from(x), options.search_depth,
                                options.bit_budget);
  const auto ys = integer_orbit(ctx.forms, IntegerPoint::from(y), options.search_depth,
                                options.bit_budget);
  std::optional<std::pair<int, int>> best;
  for (std::size_t m = 0; m < xs.size(); ++m) {
    for (std::size_t n = 0; n < ys.size(); ++n) {
      if (!(xs[m] == ys[n])) continue;
      const std::pair<int, int> cand(static_cast<int>(m), static_cast<int>(n));
      if (!best || cand.first + cand.second < best->first + best->second ||
          (cand.first + cand.second == best->first + best->second && cand.first < best->first)) {
        best = cand;
      }
    }
  }
  if (best) {
    return same_orbit(ctx.phi, x, y, best->first, best->second,
                      "phi^" + std::to_string(best->first) + "(x) = phi^" +
                          std::to_string(best->second) + "(y)");
  }
  if (ctx.phi.degree() == 1) return degree_one_verdict(ctx.phi, x, y);
  return window_certificate(ctx, x, y, options);
}

PreperiodicityResult preperiodicity_in_context(const QContext& ctx, const ResiduePoint& x,
                                               const HeightOptions& options) {
  if (ctx.phi.degree() == 1) return degree_one_preperiodicity(ctx.phi, x);
  return walk_heights(ctx, x, options);
}

}  // namespace

// Heights --------------------------------------------------------------------

double HeightValue::log() const { return log_mpz(multiplicative); }

HeightValue standard_height(const ResiduePoint& x) {
  if (!x.field().is_rationals()) {
    throw Error(ErrorCode::InvalidArgument, "standard height needs a point of P^1(Q)");
  }
  return {IntegerPoint::from(x).height()};
}

long function_field_height(const ValuedPoint& x) {
  if (x.is_infinity()) return 0;
  return std::max(x.value().num().degree(), x.value().den().degree());
}

HeightValue function_field_height_value(const ValuedPoint& x) {
  return {pow_z(mpz_class(2), static_cast<unsigned long>(function_field_height(x)))};
}

IntegerPoint IntegerPoint::from(const ResiduePoint& x) {
  if (x.is_infinity()) return {mpz_class(1), mpz_class(0)};
  const mpq_class& q = x.value().rational();
  return {q.get_num(), q.get_den()};
}

ResiduePoint IntegerPoint::to_point() const {
  const Field Q = Field::rationals();
  if (n == 0) return ResiduePoint::infinity(Q);
  return ResiduePoint(ResidueScalar(Q, mpq_class(m, n)));
}

IntegerForms::IntegerForms(const ResidueMap& phibar) : degree_(phibar.degree()) {
  require_rationals(phibar, "integer forms");
  mpz_class l = 1;
  for (int i = 0; i <= degree_; ++i) {
    for (const auto* p : {&phibar.numerator(), &phibar.denominator()}) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p->coeff(i).rational().get_den_mpz_t());
    }
  }
  mpz_class content = 0;
  for (int i = 0; i <= degree_; ++i) {
    const mpq_class fi = phibar.numerator().coeff(i).rational() * l;
    const mpq_class gi = phibar.denominator().coeff(i).rational() * l;
    f_.push_back(fi.get_num());
    g_.push_back(gi.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), f_.back().get_mpz_t());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), g_.back().get_mpz_t());
  }
  for (auto& c : f_) c /= content;
  for (auto& c : g_) c /= content;
}

IntegerPoint IntegerForms::apply(const IntegerPoint& x) const {
  mpz_class F = 0, G = 0, npow = 1;
  std::vector<mpz_class> pn{npow};
  for (int i = 1; i <= degree_; ++i) pn.push_back(pn.back() * x.n);
  for (int i = degree_; i >= 0; --i) {
    const mpz_class& p = pn[static_cast<std::size_t>(degree_ - i)];
    F = F * x.m + f_[static_cast<std::size_t>(i)] * p;
    G = G * x.m + g_[static_cast<std::size_t>(i)] * p;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), F.get_mpz_t(), G.get_mpz_t());
  F /= g;
  G /= g;
  if (G < 0) {
    F = -F;
    G = -G;
  }
  if (G == 0) return {mpz_class(1), mpz_class(0)};
  return {F, G};
}

HeightGapConstants height_gap_constants(const ResidueMap& phibar) {
  require_rationals(phibar, "height gap constants");
  const int d = phibar.degree();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "height gap constants need degree >= 2");
  const IntegerForms forms(phibar);

  HeightGapConstants out;
  out.degree = d;
  mpz_class l1f = 0, l1g = 0;
  for (int i = 0; i <= d; ++i) {
    l1f += abs(forms.f()[static_cast<std::size_t>(i)]);
    l1g += abs(forms.g()[static_cast<std::size_t>(i)]);
  }
  out.B_up = std::max(l1f, l1g);

  // Solve U F + V G = X^(2d-1) (target 2d-1) or Y^(2d-1) (target 0).
  const int n = 2 * d;
  auto solve = [&](int target) -> std::pair<mpz_class, mpz_class> {
    std::vector<std::vector<mpq_class>> a(static_cast<std::size_t>(n),
                                          std::vector<mpq_class>(static_cast<std::size_t>(n + 1)));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < d; ++k) {
        const int i = j - k;
        if (i < 0 || i > d) continue;
        a[j][k] = forms.f()[static_cast<std::size_t>(i)];
        a[j][d + k] = forms.g()[static_cast<std::size_t>(i)];
      }
      a[j][n] = (j == target) ? 1 : 0;
    }
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r) {
        if (a[r][col] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) {
        throw Error(ErrorCode::InseparableOrSharedRoot,
                    "the forms of " + phibar.to_string() + " have a common root");
      }
      std::swap(a[col], a[pivot]);
      const mpq_class inv = 1 / a[col][col];
      for (int c = col; c <= n; ++c) a[col][c] *= inv;
      for (int r = 0; r < n; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const mpq_class factor = a[r][col];
        for (int c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
      }
    }
    mpz_class A = 1;
    for (int k = 0; k < n; ++k) {
      mpz_lcm(A.get_mpz_t(), A.get_mpz_t(), a[k][n].get_den_mpz_t());
    }
    mpz_class S = 0;
    for (int k = 0; k < n; ++k) {
      const mpq_class v = a[k][n] * A;
      S += abs(v.get_num());
    }
    return {A, S};
  };
  const auto [A1, S1] = solve(n - 1);
  const auto [A2, S2] = solve(0);
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), A1.get_mpz_t(), A2.get_mpz_t());
  const mpq_class r1(S1, A1), r2(S2, A2);
  const mpq_class bound = mpq_class(l) * std::max(r1, r2);
  mpz_cdiv_q(out.B_low.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (out.B_low < 1) out.B_low = 1;

  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000), den(1, 1'000'000);
  const unsigned long du = static_cast<unsigned long>(d);
  for (int i = 0; i < 100; ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    const IntegerPoint x{q.get_num(), q.get_den()};
    const mpz_class hx = pow_z(x.height(), du);
    const mpz_class hy = forms.apply(x).height();
    if (hy > out.B_up * hx || hx > out.B_low * hy) {
      throw Error(ErrorCode::InvalidArgument,
                  "internal: height gap constants failed the sample check at " + q.get_str());
    }
    ++out.samples_verified;
  }
  return out;
}

// Canonical heights -----------------------------------------------------------

bool CanonicalHeightInterval::certifies_positive() const { return power() > B; }

mpz_class CanonicalHeightInterval::power() const {
  return pow_z(orbit_height, static_cast<unsigned long>(degree - 1));
}

CanonicalHeightInterval canonical_height_interval(const ResidueMap& phibar,
                                                  const ResiduePoint& x, int depth,
                                                  const HeightGapConstants& constants,
                                                  std::size_t bit_budget) {
  require_rationals(phibar, "canonical heights");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  const IntegerForms forms(phibar);
  IntegerPoint p = IntegerPoint::from(x);
  for (int i = 0; i < depth; ++i) {
    p = forms.apply(p);
    if (bits(p.height()) > bit_budget) {
      throw Error(ErrorCode::OrbitOverflow, "orbit height exceeds " + std::to_string(bit_budget) +
                                                " bits at step " + std::to_string(i + 1));
    }
  }
  return make_interval(p.height(), depth, constants.degree, constants.B());
}

CanonicalHeightInterval canonical_height_interval(const ResidueMap& phibar,
                                                  const ResiduePoint& x, int depth) {
  return canonical_height_interval(phibar, x, depth, height_gap_constants(phibar));
}

std::string PreperiodicityResult::label() const {
  switch (kind) {
    case Kind::Preperiodic:
      return "Preperiodic(tail " + std::to_string(tail) + ", period " + std::to_string(period) + ")";
    case Kind::Wandering: return "Wandering";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "";
}

PreperiodicityResult preperiodicity_test(const ResidueMap& phibar, const ResiduePoint& x,
                                         const HeightOptions& options) {
  if (phibar.field().is_finite()) return walk_finite_field(phibar, x);
  const QContext ctx(phibar);
  return preperiodicity_in_context(ctx, x, options);
}

// Grand orbits -----------------------------------------------------------------

std::string GrandOrbitVerdict::label() const {
  switch (kind) {
    case Kind::SameOrbit:
      return "SameOrbit(" + std::to_string(m) + ", " + std::to_string(n) + ")";
    case Kind::DistinctCertified: return "DistinctCertified";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "";
}

GrandOrbitVerdict distinct_grand_orbit_certificate(const ResidueMap& phibar,
                                                   const ResiduePoint& x,
                                                   const ResiduePoint& y,
                                                   const HeightOptions& options) {
  require_rationals(phibar, "grand orbit certificates");
  const QContext ctx(phibar);
  return certificate_in_context(ctx, x, y, options);
}

std::vector<ResiduePoint> rationals_of_height(long H) {
  const Field Q = Field::rationals();
  auto q = [&](long a, long b) { return ResiduePoint(ResidueScalar(Q, mpq_class(a, b))); };
  if (H == 1) return {q(0, 1), q(1, 1), q(-1, 1), ResiduePoint::infinity(Q)};
  std::vector<ResiduePoint> out;
  for (long b = 1; b < H; ++b) {
    if (std::gcd(b, H) != 1) continue;
    out.push_back(q(H, b));
    out.push_back(q(b, H));
  }
  for (long b = 1; b < H; ++b) {
    if (std::gcd(b, H) != 1) continue;
    out.push_back(q(-H, b));
    out.push_back(q(-b, H));
  }
  return out;
}

WanderingFamily wandering_representatives(const ResidueMap& phibar, int count,
                                          const HeightOptions& options) {
  require_rationals(phibar, "wandering representatives");
  if (phibar.degree() < 2) {
    throw Error(ErrorCode::InvalidArgument, "wandering representatives need degree >= 2");
  }
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  const QContext ctx(phibar);
  WanderingFamily out;
  for (long H = 1;; ++H) {
    for (const ResiduePoint& x : rationals_of_height(H)) {
      if (out.candidates_examined >= options.max_candidates) {
        throw Error(ErrorCode::SearchBudgetExhausted,
                    "found " + std::to_string(out.points.size()) + " of " +
                        std::to_string(count) + " representatives after " +
                        std::to_string(out.candidates_examined) + " candidates");
      }
      ++out.candidates_examined;
      PreperiodicityResult pre = preperiodicity_in_context(ctx, x, options);
      if (pre.kind != PreperiodicityResult::Kind::Wandering) continue;
      std::vector<GrandOrbitVerdict> verdicts;
      bool ok = true;
      for (const ResiduePoint& y : out.points) {
        GrandOrbitVerdict v = certificate_in_context(ctx, x, y, options);
        if (v.kind != GrandOrbitVerdict::Kind::DistinctCertified) {
          ok = false;
          break;
        }
        verdicts.push_back(std::move(v));
      }
      if (!ok) continue;
      out.points.push_back(x);
      out.wandering.push_back(std::move(pre));
      out.verdicts.push_back(std::move(verdicts));
      if (static_cast<int>(out.points.size()) == count) return out;
    }
  }
}

DegreeOneFamily degree_one_family(const mpq_class& c, int count, int verify_depth) {
  if (c == 0) throw Error(ErrorCode::InvalidArgument, "c must be nonzero");
  if (c == 1 || c == -1) {
    throw Error(ErrorCode::RootOfUnity, "c = " + c.get_str() + " is a root of unity");
  }
  DegreeOneFamily out;
  out.c = c;
  for (mpz_class p = 2; static_cast<int>(out.points.size()) < count;
       mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (mpz_divisible_p(c.get_num_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(c.get_den_mpz_t(), p.get_mpz_t())) {
      continue;
    }
    out.points.push_back(p);
  }
  // Brute-force oracle: c^m x_i != c^n x_j for all m, n <= verify_depth.
  std::vector<std::vector<mpq_class>> orbits;
  for (const mpz_class& p : out.points) {
    std::vector<mpq_class> orbit{mpq_class(p)};
    for (int k = 0; k < verify_depth; ++k) orbit.push_back(orbit.back() * c);
    orbits.push_back(std::move(orbit));
  }
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto& a : orbits[i]) {
        for (const auto& b : orbits[j]) {
          if (a == b) {
            throw Error(ErrorCode::InvalidArgument,
                        "internal: degree-one family collision at " + a.get_str());
          }
        }
      }
    }
  }
  out.verified_depth = verify_depth;
  return out;
}

}  // namespace wander
