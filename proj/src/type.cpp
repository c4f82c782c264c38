#include "flam/type.hpp"

#include <stdexcept>

namespace flam {

TypePtr Type::unit() {
  static const TypePtr t = std::make_shared<const Type>(TypeKind::Unit, nullptr, nullptr);
  return t;
}

TypePtr Type::boolean() {
  static const TypePtr t = std::make_shared<const Type>(TypeKind::Bool, nullptr, nullptr);
  return t;
}

TypePtr Type::prod(TypePtr left, TypePtr right) {
  return std::make_shared<const Type>(TypeKind::Prod, std::move(left), std::move(right));
}

TypePtr Type::arrow(TypePtr domain, TypePtr codomain) {
  return std::make_shared<const Type>(TypeKind::Arrow, std::move(domain), std::move(codomain));
}

int type_compare(const Type& x, const Type& y) {
  if (&x == &y) return 0;
  if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
  if (x.is(TypeKind::Unit) || x.is(TypeKind::Bool)) return 0;
  if (int c = type_compare(*x.left(), *y.left()); c != 0) return c;
  return type_compare(*x.right(), *y.right());
}

namespace {

// 0: arrow level, 1: product level, 2: atom.
void render(const Type& t, int level, std::string& out) {
  switch (t.kind()) {
    case TypeKind::Unit:
      out += "1";
      return;
    case TypeKind::Bool:
      out += "Bool";
      return;
    case TypeKind::Prod:
      if (level > 1) out += "(";
      render(*t.left(), 2, out);
      out += " * ";
      render(*t.right(), 1, out);
      if (level > 1) out += ")";
      return;
    case TypeKind::Arrow:
      if (level > 0) out += "(";
      render(*t.domain(), 1, out);
      out += " -> ";
      render(*t.codomain(), 0, out);
      if (level > 0) out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Type& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

TypePtr power_type(const TypePtr& base, std::size_t n) {
  if (n == 0) throw std::invalid_argument("power_type: n must be positive");
  TypePtr t = base;
  for (std::size_t i = 1; i < n; ++i) t = Type::prod(base, t);
  return t;
}

}  // namespace flam
