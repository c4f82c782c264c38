#include "flam/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace flam {

Term::Term(TermKind kind, std::size_t index, TypePtr annotation, Residue coeff, std::string hint,
           TermPtr c0, TermPtr c1, TermPtr c2)
    : kind_(kind),
      index_(index),
      annotation_(std::move(annotation)),
      coeff_(coeff),
      hint_(std::move(hint)),
      children_{std::move(c0), std::move(c1), std::move(c2)} {
  for (const auto& c : children_) {
    if (!c) break;
    ++arity_;
    size_ += c->size();
    free_bound_ = std::max(free_bound_, c->free_bound());
  }
  if (kind_ == TermKind::Var) free_bound_ = index_ + 1;
  if (kind_ == TermKind::Lam) free_bound_ = free_bound_ > 0 ? free_bound_ - 1 : 0;
}

namespace {

TermPtr make(TermKind k, TermPtr a = nullptr, TermPtr b = nullptr, TermPtr c = nullptr) {
  return std::make_shared<const Term>(k, 0, nullptr, 0, std::string(), std::move(a), std::move(b),
                                      std::move(c));
}

void require(const TermPtr& t, const char* what) {
  if (!t) throw std::invalid_argument(std::string("null subterm in ") + what);
}

}  // namespace

TermPtr var(std::size_t index) {
  return std::make_shared<const Term>(TermKind::Var, index, nullptr, 0, std::string(), nullptr,
                                      nullptr, nullptr);
}

TermPtr lam(TypePtr binder, TermPtr body, std::string hint) {
  require(body, "lambda");
  if (!binder) throw std::invalid_argument("lambda without binder type");
  return std::make_shared<const Term>(TermKind::Lam, 0, std::move(binder), 0, std::move(hint),
                                      std::move(body), nullptr, nullptr);
}

TermPtr app(TermPtr fun, TermPtr arg) {
  require(fun, "application");
  require(arg, "application");
  return make(TermKind::App, std::move(fun), std::move(arg));
}

TermPtr pair(TermPtr left, TermPtr right) {
  require(left, "pair");
  require(right, "pair");
  return make(TermKind::Pair, std::move(left), std::move(right));
}

TermPtr proj_l(TermPtr t) {
  require(t, "fst");
  return make(TermKind::ProjL, std::move(t));
}

TermPtr proj_r(TermPtr t) {
  require(t, "snd");
  return make(TermKind::ProjR, std::move(t));
}

TermPtr star() {
  static const TermPtr t = make(TermKind::Star);
  return t;
}

TermPtr tt() {
  static const TermPtr t = make(TermKind::True);
  return t;
}

TermPtr ff() {
  static const TermPtr t = make(TermKind::False);
  return t;
}

TermPtr ite(TermPtr cond, TermPtr then_branch, TermPtr else_branch) {
  require(cond, "if");
  require(then_branch, "if");
  require(else_branch, "if");
  return make(TermKind::If, std::move(cond), std::move(then_branch), std::move(else_branch));
}

TermPtr let_star(TermPtr bound, TermPtr body) {
  require(bound, "let");
  require(body, "let");
  return make(TermKind::LetStar, std::move(bound), std::move(body));
}

TermPtr zero(TypePtr type) {
  if (!type) throw std::invalid_argument("zero without type");
  return std::make_shared<const Term>(TermKind::Zero, 0, std::move(type), 0, std::string(), nullptr,
                                      nullptr, nullptr);
}

TermPtr sum(TermPtr left, TermPtr right) {
  require(left, "sum");
  require(right, "sum");
  return make(TermKind::Sum, std::move(left), std::move(right));
}

TermPtr scale(Residue coeff, TermPtr t) {
  require(t, "scale");
  return std::make_shared<const Term>(TermKind::Scale, 0, nullptr, coeff, std::string(),
                                      std::move(t), nullptr, nullptr);
}

TermPtr app_n(TermPtr fun, const std::vector<TermPtr>& args) {
  for (const auto& a : args) fun = app(std::move(fun), a);
  return fun;
}

TermPtr tuple(const std::vector<TermPtr>& items) {
  if (items.empty()) throw std::invalid_argument("empty tuple");
  TermPtr t = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) t = pair(items[i], std::move(t));
  return t;
}

int term_compare(const Term& x, const Term& y) {
  if (&x == &y) return 0;
  if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
  switch (x.kind()) {
    case TermKind::Var:
      if (x.index() != y.index()) return x.index() < y.index() ? -1 : 1;
      return 0;
    case TermKind::Lam:
    case TermKind::Zero:
      if (int c = type_compare(*x.annotation(), *y.annotation()); c != 0) return c;
      break;
    case TermKind::Scale:
      if (x.coeff() != y.coeff()) return x.coeff() < y.coeff() ? -1 : 1;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < x.arity(); ++i) {
    if (int c = term_compare(*x.child(i), *y.child(i)); c != 0) return c;
  }
  return 0;
}

namespace {

TermPtr rebuild(const TermPtr& t, const TermPtr& c0, const TermPtr& c1, const TermPtr& c2) {
  bool same = (t->arity() < 1 || c0 == t->child(0)) && (t->arity() < 2 || c1 == t->child(1)) &&
              (t->arity() < 3 || c2 == t->child(2));
  if (same) return t;
  return std::make_shared<const Term>(t->kind(), t->index(), t->annotation(), t->coeff(),
                                      t->name_hint(), c0, c1, c2);
}

// Replaces index `depth` by `arg` shifted by `depth`, and lowers the indices
// above it; `arg` is given relative to the outer scope.
TermPtr subst_at(const TermPtr& t, std::size_t depth, const TermPtr& arg) {
  if (t->free_bound() <= depth) return t;
  if (t->is(TermKind::Var)) {
    if (t->index() == depth) return shift(arg, static_cast<std::ptrdiff_t>(depth), 0);
    return var(t->index() - 1);  // index > depth here
  }
  std::size_t inner = t->is(TermKind::Lam) ? depth + 1 : depth;
  TermPtr c[3];
  for (std::size_t i = 0; i < t->arity(); ++i) c[i] = subst_at(t->child(i), inner, arg);
  return rebuild(t, c[0], c[1], c[2]);
}

}  // namespace

TermPtr shift(const TermPtr& t, std::ptrdiff_t by, std::size_t cutoff) {
  if (by == 0 || t->free_bound() <= cutoff) return t;
  if (t->is(TermKind::Var)) {
    if (t->index() < cutoff) return t;
    auto moved = static_cast<std::ptrdiff_t>(t->index()) + by;
    if (moved < 0) throw std::logic_error("shift produced a negative index");
    return var(static_cast<std::size_t>(moved));
  }
  std::size_t inner = t->is(TermKind::Lam) ? cutoff + 1 : cutoff;
  TermPtr c[3];
  for (std::size_t i = 0; i < t->arity(); ++i) c[i] = shift(t->child(i), by, inner);
  return rebuild(t, c[0], c[1], c[2]);
}

TermPtr substitute(const TermPtr& body, const TermPtr& arg) { return subst_at(body, 0, arg); }

bool is_pure(const Term& t) {
  if (t.is_algebraic()) return false;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (!is_pure(*t.child(i))) return false;
  }
  return true;
}

TermPtr church_numeral(std::size_t n, const TypePtr& tau) {
  // \(f : tau -> tau). \(x : tau). f (f ... (f x))
  TermPtr body = var(0);
  for (std::size_t i = 0; i < n; ++i) body = app(var(1), body);
  return lam(Type::arrow(tau, tau), lam(tau, body, "x"), "f");
}

}  // namespace flam
