#include "wander/residue_class.hpp"

#include "wander/errors.hpp"

namespace wander {

ResidueClass ResidueClass::rational(const ResidueScalar& value) {
  ResidueClass c(value.field(), Kind::Rational);
  c.value_ = value;
  return c;
}

ResidueClass ResidueClass::infinity(Field field) {
  return ResidueClass(field, Kind::Infinity);
}

ResidueClass ResidueClass::galois(const ResiduePoly& p) {
  if (p.degree() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "a Galois class needs a polynomial of degree >= 2, got " +
                    wander::to_string(p));
  }
  if (squarefree_part(p).degree() != p.degree()) {
    throw Error(ErrorCode::InvalidArgument,
                "Galois class polynomial is not squarefree: " + wander::to_string(p));
  }
  if (!rational_roots(p).roots.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "Galois class polynomial has a rational root: " + wander::to_string(p));
  }
  ResidueClass c(p.field(), Kind::Galois);
  c.poly_ = p.monic();
  return c;
}

ResidueClass ResidueClass::of(const ResiduePoint& x) {
  if (x.is_infinity()) return infinity(x.field());
  return rational(x.value());
}

const ResidueScalar& ResidueClass::value() const {
  if (!is_rational()) {
    throw Error(ErrorCode::InvalidArgument, "class " + to_string() + " is not a rational point");
  }
  return value_;
}

const ResiduePoly& ResidueClass::polynomial() const {
  if (!is_galois()) {
    throw Error(ErrorCode::InvalidArgument, "class " + to_string() + " is not a Galois class");
  }
  return poly_;
}

ResiduePoint ResidueClass::point() const {
  if (is_infinity()) return ResiduePoint::infinity(field_);
  return ResiduePoint(value());
}

std::string ResidueClass::to_string() const {
  switch (kind_) {
    case Kind::Rational: return value_.to_string();
    case Kind::Infinity: return "inf";
    case Kind::Galois: return "galois(" + wander::to_string(poly_) + ")";
  }
  return "";
}

bool operator==(const ResidueClass& a, const ResidueClass& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case ResidueClass::Kind::Rational: return a.value_ == b.value_;
    case ResidueClass::Kind::Infinity: return true;
    case ResidueClass::Kind::Galois: return a.poly_ == b.poly_;
  }
  return false;
}

std::strong_ordering operator<=>(const ResidueClass& a, const ResidueClass& b) {
  if (a.kind_ != b.kind_) {
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  switch (a.kind_) {
    case ResidueClass::Kind::Rational: return a.value_ <=> b.value_;
    case ResidueClass::Kind::Infinity: return std::strong_ordering::equal;
    case ResidueClass::Kind::Galois: {
      if (auto c = a.poly_.degree() <=> b.poly_.degree(); c != 0) return c;
      for (int i = a.poly_.degree(); i >= 0; --i) {
        if (auto c = a.poly_.coeff(i) <=> b.poly_.coeff(i); c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

std::vector<ResidueClass> classes_of_roots(const ResiduePoly& p) {
  const RationalRoots rr = rational_roots(p);
  std::vector<ResidueClass> out;
  for (const auto& r : rr.roots) out.push_back(ResidueClass::rational(r.root));
  if (rr.cofactor_radical.degree() >= 1) {
    out.push_back(ResidueClass::galois(rr.cofactor_radical));
  }
  return out;
}

}  // namespace wander
