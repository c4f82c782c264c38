#include "flam/typecheck.hpp"

#include "flam/error.hpp"

namespace flam {

namespace {

class Checker {
 public:
  Checker(const Context& ctx, const std::optional<Field>& field) : field_(field) {
    for (const auto& b : ctx) scope_.push_back(b.type);
  }

  TypePtr check(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        if (t.index() >= scope_.size()) {
          throw TypeError("unbound variable (de Bruijn index " + std::to_string(t.index()) + ")");
        }
        return scope_[scope_.size() - 1 - t.index()];
      case TermKind::Lam: {
        scope_.push_back(t.annotation());
        TypePtr body = check(*t.child(0));
        scope_.pop_back();
        return Type::arrow(t.annotation(), body);
      }
      case TermKind::App: {
        TypePtr f = check(*t.child(0));
        TypePtr a = check(*t.child(1));
        if (!f->is(TypeKind::Arrow)) {
          throw TypeError("application of a non-function of type " + to_string(f));
        }
        if (!type_equal(f->domain(), a)) {
          throw TypeError("argument of type " + to_string(a) + " given to a function expecting " +
                          to_string(f->domain()));
        }
        return f->codomain();
      }
      case TermKind::Pair:
        return Type::prod(check(*t.child(0)), check(*t.child(1)));
      case TermKind::ProjL:
      case TermKind::ProjR: {
        TypePtr p = check(*t.child(0));
        if (!p->is(TypeKind::Prod)) throw TypeError("projection from non-pair type " + to_string(p));
        return t.is(TermKind::ProjL) ? p->left() : p->right();
      }
      case TermKind::Star:
        return Type::unit();
      case TermKind::True:
      case TermKind::False:
        return Type::boolean();
      case TermKind::If: {
        TypePtr c = check(*t.child(0));
        if (!c->is(TypeKind::Bool)) throw TypeError("if scrutinee has type " + to_string(c) + ", not Bool");
        TypePtr a = check(*t.child(1));
        TypePtr b = check(*t.child(2));
        if (!type_equal(a, b)) {
          throw TypeError("if branches disagree: " + to_string(a) + " vs " + to_string(b));
        }
        return a;
      }
      case TermKind::LetStar: {
        TypePtr m = check(*t.child(0));
        if (!m->is(TypeKind::Unit)) throw TypeError("let * binds a term of type " + to_string(m) + ", not 1");
        return check(*t.child(1));
      }
      case TermKind::Zero:
        return t.annotation();
      case TermKind::Sum: {
        TypePtr a = check(*t.child(0));
        TypePtr b = check(*t.child(1));
        if (!type_equal(a, b)) throw TypeError("sum of unequal types " + to_string(a) + " and " + to_string(b));
        return a;
      }
      case TermKind::Scale:
        if (field_ && t.coeff() >= field_->modulus()) {
          throw TypeError("scalar " + std::to_string(t.coeff()) + " is not a residue mod " +
                          std::to_string(field_->modulus()));
        }
        return check(*t.child(0));
    }
    throw TypeError("unknown term constructor");
  }

 private:
  const std::optional<Field>& field_;
  std::vector<TypePtr> scope_;
};

}  // namespace

TypePtr typecheck(const Context& ctx, const TermPtr& t, const std::optional<Field>& field) {
  return Checker(ctx, field).check(*t);
}

Judgment make_judgment(Context ctx, TermPtr t, const std::optional<Field>& field) {
  TypePtr type = typecheck(ctx, t, field);
  return Judgment{std::move(ctx), std::move(t), std::move(type)};
}

std::string context_to_string(const Context& ctx) {
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + ":" + to_string(ctx[i].type);
  }
  return out;
}

}  // namespace flam
