#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace flam {

enum class TypeKind : std::uint8_t { Unit, Bool, Prod, Arrow };

class Type;
using TypePtr = std::shared_ptr<const Type>;

// Simple types 1 | Bool | A * B | A -> B. Immutable and shared; compare
// with type_equal / type_compare, never by pointer.
class Type {
 public:
  static TypePtr unit();
  static TypePtr boolean();
  static TypePtr prod(TypePtr left, TypePtr right);
  static TypePtr arrow(TypePtr domain, TypePtr codomain);

  TypeKind kind() const { return kind_; }
  bool is(TypeKind k) const { return kind_ == k; }

  // Prod components.
  const TypePtr& left() const { return a_; }
  const TypePtr& right() const { return b_; }
  // Arrow components.
  const TypePtr& domain() const { return a_; }
  const TypePtr& codomain() const { return b_; }

  Type(TypeKind kind, TypePtr a, TypePtr b) : kind_(kind), a_(std::move(a)), b_(std::move(b)) {}

 private:
  TypeKind kind_;
  TypePtr a_;
  TypePtr b_;
};

int type_compare(const Type& x, const Type& y);
inline bool type_equal(const Type& x, const Type& y) { return type_compare(x, y) == 0; }
inline bool type_equal(const TypePtr& x, const TypePtr& y) { return type_compare(*x, *y) == 0; }

// Surface syntax: `1`, `Bool`, `A * B` (right-nested), `A -> B`.
std::string to_string(const Type& t);
inline std::string to_string(const TypePtr& t) { return to_string(*t); }

// A^{x n} as the right-nested product A * (A * ...); n >= 1.
TypePtr power_type(const TypePtr& base, std::size_t n);

}  // namespace flam
