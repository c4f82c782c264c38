#pragma once

#include <cstdint>
#include <iosfwd>

#include "flam/error.hpp"

namespace flam {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

// The prime field F_p. Cheap to copy; every session fixes one.
class Field {
 public:
  // Throws FieldError unless p is prime and small enough that products of
  // residues fit in 64 bits.
  explicit Field(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Residue reduce(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t n) const;
  Residue inv(Residue a) const;

  bool operator==(const Field&) const = default;

 private:
  std::uint32_t p_;
};

// A residue tagged with its modulus, for callers that want checked
// arithmetic. Inner loops use Field with raw residues instead.
class FieldElem {
 public:
  FieldElem(Field field, std::int64_t value) : field_(field), residue_(field.reduce(value)) {}

  Residue residue() const { return residue_; }
  const Field& field() const { return field_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const { return FieldElem(field_, field_.neg(residue_)); }
  FieldElem inverse() const { return FieldElem(field_, field_.inv(residue_)); }
  FieldElem pow(std::uint64_t n) const { return FieldElem(field_, field_.pow(residue_, n)); }

  bool operator==(const FieldElem& o) const { return field_ == o.field_ && residue_ == o.residue_; }

 private:
  const Field& checked(const FieldElem& o) const;

  Field field_;
  Residue residue_;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& a);

}  // namespace flam
