#pragma once

#include <cstddef>
#include <string>

#include "wander/errors.hpp"
#include "wander/ratmap.hpp"
#include "wander/residue_class.hpp"
#include "wander/valued_scalar.hpp"

namespace wander {

/// Grammar, whitespace insignificant:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := '-' unary | power
///   power := atom ('^' INTEGER)?
///   atom  := INTEGER | 'z' | 'T' | '(' expr ')'
/// Multiplication is always explicit. Exponents are nonnegative literals up
/// to kMaxExponent.
inline constexpr unsigned kMaxExponent = 4096;

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              "syntax error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A quotient of polynomials in z over K in lowest terms, den monic.
struct ParsedFraction {
  ValuedPoly num;
  ValuedPoly den;
};

ParsedFraction parse_fraction(const std::string& text, Field field);

/// Throws SyntaxError, ZeroDenominator, ConstantMap.
RatMap parse_map(const std::string& text, Field field);

/// A polynomial in z over K; rejects a nonconstant denominator.
ValuedPoly parse_polynomial(const std::string& text, Field field);

/// An element of K (no z).
ValuedScalar parse_scalar(const std::string& text, Field field);

/// A point of P^1(K): "inf" or an element of K.
ValuedPoint parse_point(const std::string& text, Field field);

/// A polynomial in z over k (no T).
ResiduePoly parse_residue_poly(const std::string& text, Field field);

/// "inf", an element of k, or "galois(<polynomial in z over k>)".
ResidueClass parse_residue_class(const std::string& text, Field field);

/// "a,b,c,d" with entries in K.
Mobius parse_mobius(const std::string& text, Field field);

}  // namespace wander
