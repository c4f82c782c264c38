#include "flam/reduce.hpp"

#include "flam/error.hpp"

namespace flam {

namespace {

void collect_into(const TermPtr& t, Residue coeff, const Field& field, LinearCombo& out) {
  switch (t->kind()) {
    case TermKind::Zero:
      return;
    case TermKind::Sum:
      collect_into(t->child(0), coeff, field, out);
      collect_into(t->child(1), coeff, field, out);
      return;
    case TermKind::Scale:
      collect_into(t->child(0), field.mul(coeff, field.reduce(t->coeff())), field, out);
      return;
    default:
      out.add(t, coeff, field);
  }
}

TermPtr item(const TermPtr& atom, Residue c) { return c == 1 ? atom : scale(c, atom); }

TermPtr join(const std::vector<std::pair<TermPtr, Residue>>& items, const TypePtr& type) {
  if (items.empty()) return zero(type);
  TermPtr t = item(items[0].first, items[0].second);
  for (std::size_t i = 1; i < items.size(); ++i) t = sum(t, item(items[i].first, items[i].second));
  return t;
}

// Each distributive construct c(-) sends M + N to c(M) + c(N), a.M to a.c(M)
// and 0 to 0. `wrap` rebuilds c around a new operand.
template <class Wrap, class TypeOf>
std::optional<Step> distribute(const TermPtr& operand, Wrap wrap, TypeOf result_type, const char* name) {
  switch (operand->kind()) {
    case TermKind::Sum:
      return Step{sum(wrap(operand->child(0)), wrap(operand->child(1))), std::string(name) + "-sum"};
    case TermKind::Scale:
      return Step{scale(operand->coeff(), wrap(operand->child(0))), std::string(name) + "-scale"};
    case TermKind::Zero:
      return Step{zero(result_type()), std::string(name) + "-zero"};
    default:
      return std::nullopt;
  }
}

TypePtr closed_type(const TermPtr& t) { return typecheck({}, t); }

std::optional<Step> step_algebraic(const TermPtr& t, const Field& field) {
  if (t->is(TermKind::Zero)) {
    const TypePtr& a = t->annotation();
    if (a->is(TypeKind::Prod)) return Step{pair(zero(a->left()), zero(a->right())), "zero-pair"};
    return std::nullopt;
  }
  LinearCombo combo = LinearCombo::collect(t, field);
  std::vector<std::pair<TermPtr, Residue>> items(combo.terms().begin(), combo.terms().end());

  // Congruence: reduce the first atom that is not yet a value.
  for (auto& [atom, c] : items) {
    if (is_value(atom)) continue;
    auto inner = step_cbn(atom, field);
    if (!inner) throw InternalError("closed non-value is stuck inside a sum");
    atom = inner->term;
    TypePtr type = closed_type(t);
    return Step{join(items, type), "congruence/" + inner->rule};
  }

  TypePtr type = closed_type(t);
  if (type->is(TypeKind::Prod)) {
    bool single_pair = items.size() == 1 && items[0].second == 1;
    if (!single_pair) {
      // <M,N> + <M',N'> -> <M+M', N+N'>, a.<M,N> -> <a.M, a.N>
      std::vector<std::pair<TermPtr, Residue>> lefts, rights;
      for (const auto& [atom, c] : items) {
        if (!atom->is(TermKind::Pair)) throw InternalError("closed value of product type is not a pair");
        lefts.emplace_back(atom->child(0), c);
        rights.emplace_back(atom->child(1), c);
      }
      return Step{pair(join(lefts, type->left()), join(rights, type->right())), "pair-factor"};
    }
  }
  TermPtr canon = join(items, type);
  if (term_equal(canon, t)) return std::nullopt;
  return Step{canon, "ac-canonical"};
}

}  // namespace

LinearCombo LinearCombo::collect(const TermPtr& t, const Field& field) {
  LinearCombo out;
  collect_into(t, 1, field, out);
  return out;
}

void LinearCombo::add(const TermPtr& atom, Residue coeff, const Field& field) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(atom, coeff);
  if (inserted) return;
  it->second = field.add(it->second, coeff);
  if (it->second == 0) terms_.erase(it);
}

TermPtr LinearCombo::emit(const TypePtr& type) const {
  std::vector<std::pair<TermPtr, Residue>> items(terms_.begin(), terms_.end());
  return join(items, type);
}

TermPtr algebraic_canonical(const TermPtr& t, const Field& field, const Context& ctx) {
  LinearCombo combo = LinearCombo::collect(t, field);
  if (!combo.empty()) return combo.emit(nullptr);
  return zero(typecheck(ctx, t));
}

bool is_value(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Var:
    case TermKind::Lam:
    case TermKind::Pair:
    case TermKind::Star:
    case TermKind::True:
    case TermKind::False:
    case TermKind::Zero:
      return true;
    case TermKind::Sum:
      return is_value(t->child(0)) && is_value(t->child(1));
    case TermKind::Scale:
      return is_value(t->child(0));
    default:
      return false;
  }
}

std::optional<Step> step_cbn(const TermPtr& t, const Field& field) {
  switch (t->kind()) {
    case TermKind::Var:
    case TermKind::Lam:
    case TermKind::Pair:
    case TermKind::Star:
    case TermKind::True:
    case TermKind::False:
      return std::nullopt;

    case TermKind::Zero:
    case TermKind::Sum:
    case TermKind::Scale:
      return step_algebraic(t, field);

    case TermKind::App: {
      const TermPtr& f = t->child(0);
      const TermPtr& a = t->child(1);
      if (f->is(TermKind::Lam)) return Step{substitute(f->child(0), a), "beta"};
      auto wrap = [&](const TermPtr& g) { return app(g, a); };
      auto cod = [&] { return f->annotation()->codomain(); };
      if (auto s = distribute(f, wrap, cod, "app")) return s;
      if (auto s = step_cbn(f, field)) return Step{app(s->term, a), s->rule};
      return std::nullopt;
    }

    case TermKind::ProjL:
    case TermKind::ProjR: {
      bool left = t->is(TermKind::ProjL);
      const TermPtr& p = t->child(0);
      if (p->is(TermKind::Pair)) return Step{p->child(left ? 0 : 1), left ? "fst" : "snd"};
      auto wrap = [&](const TermPtr& q) { return left ? proj_l(q) : proj_r(q); };
      auto component = [&] { return left ? p->annotation()->left() : p->annotation()->right(); };
      if (auto s = distribute(p, wrap, component, left ? "fst" : "snd")) return s;
      if (auto s = step_cbn(p, field)) return Step{wrap(s->term), s->rule};
      return std::nullopt;
    }

    case TermKind::If: {
      const TermPtr& c = t->child(0);
      if (c->is(TermKind::True)) return Step{t->child(1), "if-tt"};
      if (c->is(TermKind::False)) return Step{t->child(2), "if-ff"};
      auto wrap = [&](const TermPtr& d) { return ite(d, t->child(1), t->child(2)); };
      auto branch = [&] { return closed_type(t->child(1)); };
      if (auto s = distribute(c, wrap, branch, "if")) return s;
      if (auto s = step_cbn(c, field)) return Step{wrap(s->term), s->rule};
      return std::nullopt;
    }

    case TermKind::LetStar: {
      const TermPtr& m = t->child(0);
      if (m->is(TermKind::Star)) return Step{t->child(1), "let-star"};
      auto wrap = [&](const TermPtr& d) { return let_star(d, t->child(1)); };
      auto body = [&] { return closed_type(t->child(1)); };
      if (auto s = distribute(m, wrap, body, "let")) return s;
      if (auto s = step_cbn(m, field)) return Step{wrap(s->term), s->rule};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::size_t default_fuel(const TermPtr& t) { return 10 * t->size() * t->size(); }

TermPtr normalize(const TermPtr& t, const Field& field, std::optional<std::size_t> fuel, const TraceFn& trace) {
  std::size_t budget = fuel ? *fuel : default_fuel(t);
  TermPtr cur = t;
  for (std::size_t used = 0;; ++used) {
    auto s = step_cbn(cur, field);
    if (!s) break;
    if (used == budget) {
      throw InternalError("normalization did not finish within fuel " + std::to_string(budget));
    }
    if (trace) trace(*s);
    cur = std::move(s->term);
  }
  if (!is_value(cur)) throw InternalError("closed term is stuck but not a value");
  return cur;
}

UnitForm ac_normal_form_unit(const TermPtr& t, const Field& field) {
  if (t->free_bound() != 0 || !is_value(t)) throw TypeError("expected a closed value of type 1");
  if (!typecheck({}, t)->is(TypeKind::Unit)) throw TypeError("expected a value of type 1");
  LinearCombo combo = LinearCombo::collect(t, field);
  if (combo.empty()) return {UnitClass::Zero, 0};
  if (combo.terms().size() != 1 || !combo.terms().begin()->first->is(TermKind::Star)) {
    throw TypeError("value of type 1 has atoms other than *");
  }
  Residue a = combo.terms().begin()->second;
  return a == 1 ? UnitForm{UnitClass::Star, 1} : UnitForm{UnitClass::Scaled, a};
}

}  // namespace flam
