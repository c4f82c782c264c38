#include "flam/field.hpp"

#include <ostream>
#include <string>

namespace flam {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw FieldError("field modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw FieldError("field modulus " + std::to_string(p) + " is too large");
}

Residue Field::pow(Residue a, std::uint64_t n) const {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

Residue Field::inv(Residue a) const {
  if (a % p_ == 0) throw FieldError("inverse of zero in F_" + std::to_string(p_));
  // Fermat: a^(p-2) is the inverse of a nonzero a.
  return pow(a, p_ - 2);
}

const Field& FieldElem::checked(const FieldElem& o) const {
  if (!(field_ == o.field_)) {
    throw FieldError("mixed moduli " + std::to_string(field_.modulus()) + " and " +
                     std::to_string(o.field_.modulus()));
  }
  return field_;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  return FieldElem(checked(o), checked(o).add(residue_, o.residue_));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  return FieldElem(checked(o), checked(o).sub(residue_, o.residue_));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  return FieldElem(checked(o), checked(o).mul(residue_, o.residue_));
}

std::ostream& operator<<(std::ostream& os, const FieldElem& a) { return os << a.residue(); }

}  // namespace flam
