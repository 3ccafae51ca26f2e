#include "wander/residue_poly.hpp"

#include <algorithm>
#include <set>

namespace wander {

namespace {

const std::uint32_t kTrialLimit = 10000;

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 64;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::vector<mpz_class>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

ResiduePoly linear_factor(const ResidueScalar& root) {
  const Field f = root.field();
  return ResiduePoly(f, {-root, ResidueScalar::one(f)});
}

/// Divides out (z - r) as often as possible.
int strip_root(ResiduePoly& q, const ResidueScalar& r) {
  int mult = 0;
  const ResiduePoly lin = linear_factor(r);
  while (q.degree() >= 1 && q.evaluate(r).is_zero()) {
    q = q / lin;
    ++mult;
  }
  return mult;
}

ResiduePoly pth_root(const ResiduePoly& p) {
  const Field f = p.field();
  const int ch = static_cast<int>(f.characteristic());
  std::vector<ResidueScalar> v;
  for (int i = 0; i <= p.degree(); i += ch) v.push_back(p.coeff(i));
  // Frobenius is the identity on F_p, so coefficient p-th roots are trivial.
  return ResiduePoly(f, std::move(v));
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n) {
  mpz_class m = abs(n);
  std::vector<mpz_class> primes;
  for (std::uint32_t d = 2; d < kTrialLimit && m > 1; ++d) {
    if (mpz_class(d) * d > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d) != 0) {
      primes.emplace_back(d);
      m /= d;
    }
  }
  if (m > 1) factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<mpz_class, unsigned>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q) {
      ++out.back().second;
    } else {
      out.emplace_back(q, 1u);
    }
  }
  return out;
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> divs{1};
  for (const auto& [q, e] : factor_integer(n)) {
    const std::size_t base = divs.size();
    mpz_class power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= q;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<mpz_class> primitive_integer_form(const ResiduePoly& p) {
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  }
  std::vector<mpz_class> out;
  mpz_class content = 0;
  for (const auto& c : p.coeffs()) {
    mpq_class scaled = c.rational() * den;
    out.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(),
            out.back().get_mpz_t());
  }
  if (content == 0) return out;
  if (sgn(out.back()) < 0) content = -content;
  for (auto& c : out) c /= content;
  return out;
}

RationalRoots rational_roots(const ResiduePoly& p) {
  if (p.is_zero()) {
    throw Error(ErrorCode::ZeroPolynomial, "rational_roots of zero");
  }
  const Field f = p.field();
  RationalRoots out;
  ResiduePoly q = p.monic();

  if (f.is_finite()) {
    for (std::uint32_t r = 0; r < f.characteristic() && q.degree() >= 1; ++r) {
      ResidueScalar root(f, static_cast<long>(r));
      if (int m = strip_root(q, root); m > 0) out.roots.push_back({root, m});
    }
  } else {
    const ResidueScalar zero = ResidueScalar::zero(f);
    if (int m = strip_root(q, zero); m > 0) out.roots.push_back({zero, m});
    if (q.degree() >= 1) {
      auto ints = primitive_integer_form(q);
      std::set<mpq_class> candidates;
      const auto nums = positive_divisors(ints.front());
      const auto dens = positive_divisors(ints.back());
      for (const auto& u : nums) {
        for (const auto& v : dens) {
          mpq_class c(u, v);
          c.canonicalize();
          candidates.insert(c);
          candidates.insert(-c);
        }
      }
      for (const auto& c : candidates) {
        if (q.degree() < 1) break;
        ResidueScalar root(f, c);
        if (int m = strip_root(q, root); m > 0) out.roots.push_back({root, m});
      }
      std::sort(out.roots.begin(), out.roots.end(),
                [](const auto& a, const auto& b) { return a.root < b.root; });
    }
  }
  out.cofactor = q.monic();
  out.cofactor_radical = squarefree_part(out.cofactor);
  return out;
}

ResiduePoly squarefree_part(const ResiduePoly& p) {
  const Field f = p.field();
  if (p.degree() <= 0) return ResiduePoly::one(f);
  ResiduePoly m = p.monic();
  ResiduePoly d = m.derivative();
  if (d.is_zero()) return squarefree_part(pth_root(m));
  ResiduePoly g = gcd(m, d);
  ResiduePoly w = m / g;
  if (g.degree() == 0) return w.monic();
  ResiduePoly r = squarefree_part(g);
  return (w * r / gcd(w, r)).monic();
}

std::vector<std::pair<ResiduePoly, int>> squarefree_decomposition(const ResiduePoly& p) {
  std::vector<std::pair<ResiduePoly, int>> out;
  if (p.degree() <= 0) return out;
  // rad_k collects the roots of multiplicity > k; rad_k / rad_{k+1} those
  // of multiplicity exactly k + 1.
  ResiduePoly rest = p.monic();
  ResiduePoly rad = squarefree_part(rest);
  for (int k = 1; rad.degree() > 0; ++k) {
    rest = rest / rad;
    const ResiduePoly next = squarefree_part(rest);
    const ResiduePoly exact = rad / next;
    if (exact.degree() > 0) out.emplace_back(exact.monic(), k);
    rad = next;
  }
  return out;
}

int distinct_root_count(const ResiduePoly& p) {
  return squarefree_part(p).degree();
}

std::string to_string(const ResiduePoly& p, const std::string& var) {
  return format_poly(p, var,
                     [](const ResidueScalar& c) { return c.to_string(); });
}

}  // namespace wander
