#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "wander/field.hpp"
#include "wander/poly.hpp"

namespace wander {

/// Polynomials over the residue field k (also used for F[T]).
using ResiduePoly = Poly<ResidueScalar>;

struct RootMultiplicity {
  ResidueScalar root;
  int multiplicity = 0;

  friend bool operator==(const RootMultiplicity&,
                         const RootMultiplicity&) = default;
};

/// Roots of p lying in k, plus what is left after dividing them out.
struct RationalRoots {
  std::vector<RootMultiplicity> roots;  // sorted by root
  /// p divided by every (z - root)^multiplicity, made monic.
  ResiduePoly cofactor;
  /// Squarefree part of the cofactor; its degree counts the distinct
  /// non-rational roots over an algebraic closure.
  ResiduePoly cofactor_radical;
};

/// All k-rational roots of a nonzero polynomial. Over Q this applies the
/// rational-root criterion to the primitive integer form; over F_p every
/// element is tried. Throws ZeroPolynomial for p = 0.
RationalRoots rational_roots(const ResiduePoly& p);

/// Monic product of the distinct irreducible factors of p (the radical).
/// Handles inseparable input in characteristic p. rad(constant) = 1.
ResiduePoly squarefree_part(const ResiduePoly& p);

/// p = c * prod s_i^{m_i} with s_i monic, squarefree, pairwise coprime and
/// m_i ascending. Built from iterated radicals, so it works in any
/// characteristic.
std::vector<std::pair<ResiduePoly, int>> squarefree_decomposition(const ResiduePoly& p);

/// Number of distinct roots in an algebraic closure.
int distinct_root_count(const ResiduePoly& p);

/// Text form in the parser grammar, e.g. "z^2 - 1/2*z + 3".
std::string to_string(const ResiduePoly& p, const std::string& var = "z");

/// Over Q: scale p to a primitive integer polynomial with positive leading
/// coefficient. Coefficients are returned low degree first.
std::vector<mpz_class> primitive_integer_form(const ResiduePoly& p);

/// Positive divisors of |n| (n != 0), ascending.
std::vector<mpz_class> positive_divisors(const mpz_class& n);

/// Prime factorization of |n| > 1 as (prime, exponent), ascending.
std::vector<std::pair<mpz_class, unsigned>> factor_integer(const mpz_class& n);

}  // namespace wander
