#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

namespace wander {

/// The base field F of K = F(T), which is also the residue field k.
/// Either Q (characteristic 0) or F_p for a prime p < 2^32.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field(); }
  /// Throws InvalidArgument unless p is prime.
  static Field prime(std::uint32_t p);

  constexpr std::uint32_t characteristic() const { return p_; }
  constexpr bool is_rationals() const { return p_ == 0; }
  constexpr bool is_finite() const { return p_ != 0; }

  friend constexpr bool operator==(Field, Field) = default;

  /// "q" or "fp:<p>", the same syntax the CLI accepts.
  std::string name() const;
  /// Inverse of name(). Throws InvalidArgument.
  static Field parse(const std::string& text);

 private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// An element of the residue field k (Q or F_p).
///
/// Q values are kept in lowest terms with positive denominator (GMP does that
/// for us); F_p values are canonical representatives in [0, p).
class ResidueScalar {
 public:
  ResidueScalar() : ResidueScalar(Field::rationals(), 0) {}
  ResidueScalar(Field field, long value);
  ResidueScalar(Field field, const mpq_class& value);

  static ResidueScalar zero(Field field) { return ResidueScalar(field, 0); }
  static ResidueScalar one(Field field) { return ResidueScalar(field, 1); }
  /// Parses "a" or "a/b" (optionally signed).
  static ResidueScalar parse(Field field, const std::string& text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Exact value; only valid over Q.
  const mpq_class& rational() const;
  /// Canonical representative; only valid over F_p.
  std::uint64_t residue() const;

  ResidueScalar operator-() const;
  ResidueScalar inverse() const;

  friend ResidueScalar operator+(const ResidueScalar& a, const ResidueScalar& b);
  friend ResidueScalar operator-(const ResidueScalar& a, const ResidueScalar& b);
  friend ResidueScalar operator*(const ResidueScalar& a, const ResidueScalar& b);
  friend ResidueScalar operator/(const ResidueScalar& a, const ResidueScalar& b);
  ResidueScalar& operator+=(const ResidueScalar& b) { return *this = *this + b; }
  ResidueScalar& operator-=(const ResidueScalar& b) { return *this = *this - b; }
  ResidueScalar& operator*=(const ResidueScalar& b) { return *this = *this * b; }
  ResidueScalar& operator/=(const ResidueScalar& b) { return *this = *this / b; }

  ResidueScalar pow(std::uint64_t e) const;

  friend bool operator==(const ResidueScalar& a, const ResidueScalar& b);
  /// Total order used only for deterministic containers and output.
  friend std::strong_ordering operator<=>(const ResidueScalar& a,
                                          const ResidueScalar& b);

  /// Canonical fraction string: "3", "-1/2"; over F_p the representative.
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const ResidueScalar& x) {
    return os << x.to_string();
  }

 private:
  Field field_;
  std::variant<std::uint64_t, mpq_class> value_;
};

}  // namespace wander
