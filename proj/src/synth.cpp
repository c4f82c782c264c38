#include "flam/synth.hpp"

#include <map>

#include "flam/error.hpp"

namespace flam {

namespace {

TermPtr times(Residue c, TermPtr t) { return c == 1 ? t : scale(c, std::move(t)); }

TermPtr add_all(const std::vector<TermPtr>& items, const TypePtr& type) {
  if (items.empty()) return zero(type);
  TermPtr t = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) t = sum(t, items[i]);
  return t;
}

SemVec slice(const SemVec& v, const TypePtr& type, std::size_t from, std::size_t dim) {
  auto begin = v.coeffs.begin() + static_cast<std::ptrdiff_t>(from);
  return {type, std::vector<Residue>(begin, begin + static_cast<std::ptrdiff_t>(dim))};
}

void require_f2(const Field& field) {
  if (field.modulus() != 2) throw FieldError("the vec-to-set coding is only defined over F_2");
}

TermPtr phi_term(const TypePtr& a, const Field& field);
TermPtr phibar_term(const TypePtr& a, const Field& field);

TermPtr delta_at(const TypePtr& type, std::vector<Residue> coeffs, const Field& field) {
  return synth_delta({type, {type, std::move(coeffs)}, field});
}

// let * = delta_v x in result
TermPtr when(const TypePtr& type, std::vector<Residue> v, TermPtr result, const Field& field) {
  return let_star(app(delta_at(type, std::move(v), field), var(0)), std::move(result));
}

TermPtr phi_term(const TypePtr& a, const Field& field) {
  switch (a->kind()) {
    case TypeKind::Unit:
      return sum(when(a, {0}, tt(), field), when(a, {1}, ff(), field));
    case TypeKind::Bool:
      return sum(sum(sum(when(a, {0, 0}, pair(tt(), tt()), field), when(a, {1, 0}, pair(tt(), ff()), field)),
                     when(a, {0, 1}, pair(ff(), tt()), field)),
                 when(a, {1, 1}, pair(ff(), ff()), field));
    case TypeKind::Prod:
      return pair(substitute(phi_term(a->left(), field), proj_l(var(0))),
                  substitute(phi_term(a->right(), field), proj_r(var(0))));
    case TypeKind::Arrow: {
      // \y. phi_C (x (phibar_B y)), with x one binder up
      TermPtr inner = app(var(1), phibar_term(a->domain(), field));
      return lam(vts_type(a->domain()), substitute(phi_term(a->codomain(), field), inner), "y");
    }
  }
  return nullptr;
}

TermPtr phibar_term(const TypePtr& a, const Field& field) {
  switch (a->kind()) {
    case TypeKind::Unit:
      return ite(var(0), zero(a), star());
    case TypeKind::Bool:
      return ite(proj_l(var(0)), ite(proj_r(var(0)), zero(a), tt()), ite(proj_r(var(0)), ff(), sum(tt(), ff())));
    case TypeKind::Prod:
      return pair(substitute(phibar_term(a->left(), field), proj_l(var(0))),
                  substitute(phibar_term(a->right(), field), proj_r(var(0))));
    case TypeKind::Arrow: {
      TermPtr inner = app(var(1), phi_term(a->domain(), field));
      return lam(a->domain(), substitute(phibar_term(a->codomain(), field), inner), "y");
    }
  }
  return nullptr;
}

}  // namespace

TermPtr exp_term(std::size_t i) {
  TermPtr t = lam(Type::unit(), star(), "x");
  for (std::size_t k = 0; k < i; ++k) t = lam(Type::unit(), let_star(var(0), app(t, var(0))), "x");
  return t;
}

TermPtr iszero_term(const Field& field) { return exp_term(field.modulus() - 1); }

TermPtr synth_vector(const SynthRequest& req) {
  const TypePtr& a = req.type;
  const Field& field = req.field;
  const auto& c = req.vector.coeffs;
  VecSpace space(a, field);
  if (!type_equal(req.vector.type, a) || c.size() != space.dim()) {
    throw TypeError("vector does not belong to " + to_string(a));
  }
  switch (a->kind()) {
    case TypeKind::Unit:
      return c[0] == 0 ? zero(a) : times(c[0], star());
    case TypeKind::Bool: {
      std::vector<TermPtr> items;
      if (c[0] != 0) items.push_back(times(c[0], tt()));
      if (c[1] != 0) items.push_back(times(c[1], ff()));
      return add_all(items, a);
    }
    case TypeKind::Prod: {
      std::size_t dl = VecSpace(a->left(), field).dim();
      return pair(synth_vector({a->left(), slice(req.vector, a->left(), 0, dl), field}),
                  synth_vector({a->right(), slice(req.vector, a->right(), dl, c.size() - dl), field}));
    }
    case TypeKind::Arrow: {
      // sum over the basis b_u of \x. let * = delta_u x in M_{f(b_u)}
      VecSpace dom(a->domain(), field);
      std::size_t m = VecSpace(a->codomain(), field).dim();
      std::vector<TermPtr> items;
      for (std::uint64_t r = 0; r < dom.vcount(); ++r) {
        SemVec w = slice(req.vector, a->codomain(), r * m, m);
        bool nonzero = false;
        for (Residue x : w.coeffs) nonzero = nonzero || x != 0;
        if (!nonzero) continue;
        TermPtr body = when(a->domain(), dom.unrank(r), synth_vector({a->codomain(), w, field}), field);
        items.push_back(lam(a->domain(), body, "x"));
      }
      return add_all(items, a);
    }
  }
  return nullptr;
}

TermPtr synth_delta(const SynthRequest& req) {
  const TypePtr& a = req.type;
  const Field& field = req.field;
  const auto& c = req.vector.coeffs;
  VecSpace space(a, field);
  if (!type_equal(req.vector.type, a) || c.size() != space.dim()) {
    throw TypeError("vector does not belong to " + to_string(a));
  }
  TypePtr unit = Type::unit();
  switch (a->kind()) {
    case TypeKind::Unit: {
      // * - iszero(x - a.*)
      TermPtr diff = c[0] == 0 ? var(0) : sum(var(0), times(field.neg(c[0]), star()));
      TermPtr body = sum(star(), times(field.neg(1), app(iszero_term(field), diff)));
      return lam(a, body, "x");
    }
    case TypeKind::Bool: {
      TermPtr on_tt = app(delta_at(unit, {c[0]}, field), ite(var(0), star(), zero(unit)));
      TermPtr on_ff = app(delta_at(unit, {c[1]}, field), ite(var(0), zero(unit), star()));
      return lam(a, let_star(on_tt, on_ff), "x");
    }
    case TypeKind::Prod: {
      std::size_t dl = VecSpace(a->left(), field).dim();
      std::vector<Residue> l(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(dl));
      std::vector<Residue> r(c.begin() + static_cast<std::ptrdiff_t>(dl), c.end());
      TermPtr first = app(delta_at(a->left(), l, field), proj_l(var(0)));
      TermPtr second = app(delta_at(a->right(), r, field), proj_r(var(0)));
      return lam(a, let_star(first, second), "x");
    }
    case TypeKind::Arrow: {
      // \f. delta_<w_1..w_n> <f M_{u_1}, ..., f M_{u_n}>; the coordinates of
      // v are those of the tuple <w_1, ..., w_n>.
      VecSpace dom(a->domain(), field);
      std::uint64_t n = dom.vcount();
      std::vector<TermPtr> probes;
      for (std::uint64_t r = 0; r < n; ++r) {
        TermPtr point = synth_vector({a->domain(), {a->domain(), dom.unrank(r)}, field});
        probes.push_back(app(var(0), point));
      }
      TypePtr tuple_type = power_type(a->codomain(), n);
      return lam(a, app(delta_at(tuple_type, c, field), tuple(probes)), "f");
    }
  }
  return nullptr;
}

TypePtr vts_type(const TypePtr& type) {
  switch (type->kind()) {
    case TypeKind::Unit:
      return Type::boolean();
    case TypeKind::Bool:
      return Type::prod(Type::boolean(), Type::boolean());
    case TypeKind::Prod:
      return Type::prod(vts_type(type->left()), vts_type(type->right()));
    case TypeKind::Arrow:
      return Type::arrow(vts_type(type->domain()), vts_type(type->codomain()));
  }
  return nullptr;
}

Judgment phi_judgment(const TypePtr& type, const Field& field) {
  require_f2(field);
  return make_judgment({{"x", type}}, phi_term(type, field), field);
}

Judgment phibar_judgment(const TypePtr& type, const Field& field) {
  require_f2(field);
  return make_judgment({{"x", vts_type(type)}}, phibar_term(type, field), field);
}

SemVec set_code(const SetElem& a, const TypePtr& type, const Field& field) {
  return vec_denote_closed(set_synth_point(a, type), field);
}

std::optional<SetElem> set_decode(const TermPtr& closed, const TypePtr& type, const Field& field) {
  switch (type->kind()) {
    case TypeKind::Unit:
    case TypeKind::Bool: {
      SemVec v = vec_denote_closed(closed, field);
      SetSpace s(type);
      for (std::uint64_t r = 0; r < s.size(); ++r)
        if (set_code(s.unrank(r), type, field) == v) return s.unrank(r);
      return std::nullopt;
    }
    case TypeKind::Prod: {
      auto l = set_decode(proj_l(closed), type->left(), field);
      auto r = set_decode(proj_r(closed), type->right(), field);
      if (!l || !r) return std::nullopt;
      return SetElem::pair(*l, *r);
    }
    case TypeKind::Arrow: {
      SetSpace dom(type->domain());
      std::vector<SetElem> table;
      for (std::uint64_t r = 0; r < dom.size(); ++r) {
        auto e = set_decode(app(closed, set_synth_point(dom.unrank(r), type->domain())), type->codomain(), field);
        if (!e) return std::nullopt;
        table.push_back(*e);
      }
      return SetElem::function(std::move(table));
    }
  }
  return std::nullopt;
}

Judgment compose(const Judgment& first, const Judgment& second) {
  if (second.context.size() != 1 || !type_equal(second.context[0].type, first.type)) {
    throw TypeError("judgments do not compose");
  }
  return make_judgment(first.context, substitute(second.term, first.term));
}

Factoring factor_through_set(const Judgment& j, const Field& field) {
  require_f2(field);
  if (j.context.size() != 1) throw TypeError("factoring needs a judgment with exactly one variable");
  const TypePtr& a = j.context[0].type;
  const TypePtr& b = j.type;
  TypePtr va = vts_type(a), vb = vts_type(b);

  Judgment composite = compose(compose(phibar_judgment(a, field), j), phi_judgment(b, field));

  SetSpace in(va), out(vb);
  std::vector<std::uint64_t> table(in.size());
  for (std::uint64_t r = 0; r < in.size(); ++r) {
    TermPtr probe = substitute(composite.term, set_synth_point(in.unrank(r), va));
    auto e = set_decode(probe, vb, field);
    if (!e) throw InternalError("the coded composite leaves the coded vectors");
    table[r] = out.rank(*e);
  }

  Context ctx{{"y", va}};
  Judgment tilde = make_judgment(ctx, set_synth_table(ctx, vb, table));
  Judgment reassembled = compose(compose(phi_judgment(a, field), tilde), phibar_judgment(b, field));
  return {std::move(tilde), std::move(reassembled)};
}

}  // namespace flam
