#include "wander/parser.hpp"

#include <cctype>
#include <vector>

namespace wander {

namespace {

void reduce_fraction(ParsedFraction& x) {
  if (x.den.degree() > 0 && !x.num.is_zero()) {
    const ValuedPoly g = gcd(x.num, x.den);
    if (g.degree() > 0) {
      x.num = x.num / g;
      x.den = x.den / g;
    }
  }
  if (x.num.is_zero()) {
    x.den = ValuedPoly::one(x.den.field());
    return;
  }
  const ValuedScalar lead = x.den.leading();
  if (!lead.is_one()) {
    const ValuedScalar inv = lead.inverse();
    x.num = x.num * inv;
    x.den = x.den * inv;
  }
}

class Parser {
 public:
  Parser(const std::string& text, Field field) : text_(text), field_(field) {}

  ParsedFraction parse() {
    ParsedFraction out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ParsedFraction constant(const ValuedScalar& c) const {
    return {ValuedPoly::constant(c), ValuedPoly::one(field_)};
  }

  ParsedFraction add(const ParsedFraction& a, const ParsedFraction& b, bool subtract) const {
    ParsedFraction out;
    const ValuedPoly bn = subtract ? -b.num : b.num;
    if (a.den.degree() == 0 && b.den.degree() == 0) {
      out = {a.num + bn, a.den};
    } else {
      out = {a.num * b.den + bn * a.den, a.den * b.den};
    }
    reduce_fraction(out);
    return out;
  }

  ParsedFraction multiply(const ParsedFraction& a, const ParsedFraction& b) const {
    ParsedFraction out{a.num * b.num, a.den * b.den};
    reduce_fraction(out);
    return out;
  }

  ParsedFraction divide(const ParsedFraction& a, const ParsedFraction& b,
                        std::size_t at) const {
    if (b.num.is_zero()) {
      throw Error(ErrorCode::ZeroDenominator,
                  "division by zero at position " + std::to_string(at));
    }
    ParsedFraction out{a.num * b.den, a.den * b.num};
    reduce_fraction(out);
    return out;
  }

  ParsedFraction expr() {
    ParsedFraction acc = term();
    while (true) {
      if (accept('+')) {
        acc = add(acc, term(), false);
      } else if (accept('-')) {
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  ParsedFraction term() {
    ParsedFraction acc = unary();
    while (true) {
      if (accept('*')) {
        acc = multiply(acc, unary());
      } else if (accept('/')) {
        const std::size_t at = pos_;
        acc = divide(acc, unary(), at);
      } else {
        return acc;
      }
    }
  }

  ParsedFraction unary() {
    if (accept('-')) {
      ParsedFraction x = unary();
      x.num = -x.num;
      return x;
    }
    return power();
  }

  ParsedFraction power() {
    ParsedFraction base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer literal");
    const std::string digits = text_.substr(start, pos_ - start);
    if (digits.size() > 5 || std::stoul(digits) > kMaxExponent) {
      pos_ = start;
      fail("exponent exceeds " + std::to_string(kMaxExponent));
    }
    const auto e = static_cast<unsigned>(std::stoul(digits));
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') fail("chained exponents need parentheses");
    return {base.num.pow(e), base.den.pow(e)};
  }

  ParsedFraction atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const mpq_class value(mpz_class(text_.substr(start, pos_ - start)));
      return constant(ValuedScalar(ResidueScalar(field_, value)));
    }
    if (c == 'z') {
      ++pos_;
      return {ValuedPoly::variable(field_), ValuedPoly::one(field_)};
    }
    if (c == 'T') {
      ++pos_;
      return constant(ValuedScalar::t_power(field_, 1));
    }
    if (c == '(') {
      ++pos_;
      ParsedFraction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  Field field_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

ParsedFraction parse_fraction(const std::string& text, Field field) {
  return Parser(text, field).parse();
}

RatMap parse_map(const std::string& text, Field field) {
  const ParsedFraction x = parse_fraction(text, field);
  return RatMap::normalize(x.num, x.den);
}

ValuedPoly parse_polynomial(const std::string& text, Field field) {
  const ParsedFraction x = parse_fraction(text, field);
  if (x.den.degree() > 0) {
    throw Error(ErrorCode::InvalidArgument, "'" + text + "' is not a polynomial in z");
  }
  return x.num;
}

ValuedScalar parse_scalar(const std::string& text, Field field) {
  const ValuedPoly p = parse_polynomial(text, field);
  if (p.degree() > 0) {
    throw Error(ErrorCode::InvalidArgument, "'" + text + "' must not contain z");
  }
  return p.coeff(0);
}

ValuedPoint parse_point(const std::string& text, Field field) {
  if (trim(text) == "inf") return ValuedPoint::infinity(field);
  return ValuedPoint(parse_scalar(text, field));
}

ResiduePoly parse_residue_poly(const std::string& text, Field field) {
  const ValuedPoly p = parse_polynomial(text, field);
  std::vector<ResidueScalar> coeffs;
  for (const auto& c : p.coeffs()) {
    if (!c.is_constant()) {
      throw Error(ErrorCode::InvalidArgument, "'" + text + "' must not contain T");
    }
    coeffs.push_back(c.residue());
  }
  return ResiduePoly(field, std::move(coeffs));
}

ResidueClass parse_residue_class(const std::string& text, Field field) {
  const std::string t = trim(text);
  if (t == "inf") return ResidueClass::infinity(field);
  const std::string prefix = "galois(";
  if (t.rfind(prefix, 0) == 0 && t.back() == ')') {
    return ResidueClass::galois(
        parse_residue_poly(t.substr(prefix.size(), t.size() - prefix.size() - 1), field));
  }
  const ValuedScalar x = parse_scalar(t, field);
  if (!x.is_constant()) {
    throw Error(ErrorCode::InvalidArgument, "class '" + text + "' must not contain T");
  }
  return ResidueClass::rational(x.residue());
}

Mobius parse_mobius(const std::string& text, Field field) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) {
    throw Error(ErrorCode::InvalidArgument, "Mobius map needs four entries a,b,c,d");
  }
  return Mobius(parse_scalar(parts[0], field), parse_scalar(parts[1], field),
                parse_scalar(parts[2], field), parse_scalar(parts[3], field));
}

}  // namespace wander
