#include "wander/field.hpp"

#include <charconv>

#include "wander/errors.hpp"

namespace wander {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_same(Field a, Field b) {
  if (a != b) {
    throw Error(ErrorCode::FieldMismatch,
                "scalars over " + a.name() + " and " + b.name());
  }
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (!is_prime_u32(p)) {
    throw Error(ErrorCode::InvalidArgument,
                "field characteristic " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

std::string Field::name() const {
  return p_ == 0 ? std::string("q") : "fp:" + std::to_string(p_);
}

Field Field::parse(const std::string& text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.rfind("fp:", 0) == 0) {
    std::uint32_t p = 0;
    const char* begin = text.data() + 3;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, p);
    if (ec == std::errc() && ptr == end) return prime(p);
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown field '" + text + "' (expected q or fp:<p>)");
}

ResidueScalar::ResidueScalar(Field field, long value) : field_(field) {
  if (field.is_rationals()) {
    value_ = mpq_class(value);
  } else {
    long p = field.characteristic();
    long r = value % p;
    if (r < 0) r += p;
    value_ = static_cast<std::uint64_t>(r);
  }
}

ResidueScalar::ResidueScalar(Field field, const mpq_class& value)
    : field_(field) {
  if (field.is_rationals()) {
    mpq_class v = value;
    v.canonicalize();
    value_ = std::move(v);
    return;
  }
  const std::uint32_t p = field.characteristic();
  std::uint64_t den = reduce_mpz(value.get_den(), p);
  if (den == 0) {
    throw Error(ErrorCode::DivisionByZero,
                "denominator vanishes in " + field.name());
  }
  value_ = reduce_mpz(value.get_num(), p) * mod_inverse(den, p) % p;
}

ResidueScalar ResidueScalar::parse(Field field, const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    throw Error(ErrorCode::SyntaxError, "not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorCode::ZeroDenominator, "zero denominator in '" + text + "'");
  }
  return ResidueScalar(field, q);
}

bool ResidueScalar::is_zero() const {
  if (field_.is_finite()) return std::get<std::uint64_t>(value_) == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool ResidueScalar::is_one() const {
  if (field_.is_finite()) return std::get<std::uint64_t>(value_) == 1;
  return std::get<mpq_class>(value_) == 1;
}

const mpq_class& ResidueScalar::rational() const {
  if (field_.is_finite()) {
    throw Error(ErrorCode::FieldMismatch, "rational() on an F_p scalar");
  }
  return std::get<mpq_class>(value_);
}

std::uint64_t ResidueScalar::residue() const {
  if (field_.is_rationals()) {
    throw Error(ErrorCode::FieldMismatch, "residue() on a Q scalar");
  }
  return std::get<std::uint64_t>(value_);
}

ResidueScalar ResidueScalar::operator-() const {
  ResidueScalar out = *this;
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(out.value_);
    if (r != 0) r = field_.characteristic() - r;
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    q = -q;
  }
  return out;
}

ResidueScalar ResidueScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  ResidueScalar out = *this;
  if (field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(out.value_);
    r = mod_inverse(r, field_.characteristic());
  } else {
    auto& q = std::get<mpq_class>(out.value_);
    q = 1 / q;
  }
  return out;
}

ResidueScalar operator+(const ResidueScalar& a, const ResidueScalar& b) {
  require_same(a.field_, b.field_);
  ResidueScalar out = a;
  if (a.field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(out.value_);
    r = (r + std::get<std::uint64_t>(b.value_)) % a.field_.characteristic();
  } else {
    std::get<mpq_class>(out.value_) += std::get<mpq_class>(b.value_);
  }
  return out;
}

ResidueScalar operator-(const ResidueScalar& a, const ResidueScalar& b) {
  return a + (-b);
}

ResidueScalar operator*(const ResidueScalar& a, const ResidueScalar& b) {
  require_same(a.field_, b.field_);
  ResidueScalar out = a;
  if (a.field_.is_finite()) {
    auto& r = std::get<std::uint64_t>(out.value_);
    r = r * std::get<std::uint64_t>(b.value_) % a.field_.characteristic();
  } else {
    std::get<mpq_class>(out.value_) *= std::get<mpq_class>(b.value_);
  }
  return out;
}

ResidueScalar operator/(const ResidueScalar& a, const ResidueScalar& b) {
  return a * b.inverse();
}

ResidueScalar ResidueScalar::pow(std::uint64_t e) const {
  ResidueScalar result = one(field_);
  ResidueScalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const ResidueScalar& a, const ResidueScalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ResidueScalar& a,
                                 const ResidueScalar& b) {
  if (auto c = a.field_.characteristic() <=> b.field_.characteristic();
      c != 0) {
    return c;
  }
  if (a.field_.is_finite()) {
    return std::get<std::uint64_t>(a.value_) <=>
           std::get<std::uint64_t>(b.value_);
  }
  int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ResidueScalar::to_string() const {
  if (field_.is_finite()) return std::to_string(std::get<std::uint64_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

}  // namespace wander
