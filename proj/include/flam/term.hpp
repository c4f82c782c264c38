#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flam/field.hpp"
#include "flam/type.hpp"

namespace flam {

// Constructor tags. The declaration order is the atom order used by
// algebraic canonical forms, so do not reorder.
enum class TermKind : std::uint8_t {
  Var,
  Lam,
  App,
  Pair,
  ProjL,
  ProjR,
  Star,
  True,
  False,
  If,
  LetStar,
  Zero,
  Sum,
  Scale,
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Intrinsically typed terms with de Bruijn indices. Lambda binders and
// zeros carry their type. Nodes are immutable and freely shared.
class Term {
 public:
  TermKind kind() const { return kind_; }
  bool is(TermKind k) const { return kind_ == k; }

  std::size_t index() const { return index_; }              // Var
  const TypePtr& annotation() const { return annotation_; }  // Lam binder, Zero
  Residue coeff() const { return coeff_; }                   // Scale
  const std::string& name_hint() const { return hint_; }     // Lam, printing only

  // Children, by constructor:
  //   Lam: body | App: fun, arg | Pair: left, right | ProjL/ProjR: inner
  //   If: cond, then, else | LetStar: bound, body | Sum: left, right | Scale: inner
  const TermPtr& child(std::size_t i) const { return children_[i]; }
  std::size_t arity() const { return arity_; }

  // Node count.
  std::size_t size() const { return size_; }
  // Every free index is below this bound; 0 means closed.
  std::size_t free_bound() const { return free_bound_; }

  // True for 0, M + N and a.M.
  bool is_algebraic() const {
    return kind_ == TermKind::Zero || kind_ == TermKind::Sum || kind_ == TermKind::Scale;
  }

  Term(TermKind kind, std::size_t index, TypePtr annotation, Residue coeff, std::string hint,
       TermPtr c0, TermPtr c1, TermPtr c2);

 private:
  TermKind kind_;
  std::uint8_t arity_ = 0;
  std::size_t index_;
  TypePtr annotation_;
  Residue coeff_;
  std::string hint_;
  TermPtr children_[3];
  std::size_t size_ = 1;
  std::size_t free_bound_ = 0;
};

// Constructors.
TermPtr var(std::size_t index);
TermPtr lam(TypePtr binder, TermPtr body, std::string hint = "x");
TermPtr app(TermPtr fun, TermPtr arg);
TermPtr pair(TermPtr left, TermPtr right);
TermPtr proj_l(TermPtr t);
TermPtr proj_r(TermPtr t);
TermPtr star();
TermPtr tt();
TermPtr ff();
TermPtr ite(TermPtr cond, TermPtr then_branch, TermPtr else_branch);
TermPtr let_star(TermPtr bound, TermPtr body);
TermPtr zero(TypePtr type);
TermPtr sum(TermPtr left, TermPtr right);
TermPtr scale(Residue coeff, TermPtr t);

// Application spine f a1 ... an.
TermPtr app_n(TermPtr fun, const std::vector<TermPtr>& args);
// Right-nested tuple <t1, <t2, ...>>; needs at least one component.
TermPtr tuple(const std::vector<TermPtr>& items);

// Total structural order: constructor tag first, then payload and children.
// Name hints are ignored.
int term_compare(const Term& x, const Term& y);
inline bool term_equal(const Term& x, const Term& y) { return term_compare(x, y) == 0; }
inline bool term_equal(const TermPtr& x, const TermPtr& y) { return term_compare(*x, *y) == 0; }

struct TermLess {
  bool operator()(const TermPtr& x, const TermPtr& y) const { return term_compare(*x, *y) < 0; }
};

// Adds `by` to every free index >= cutoff.
TermPtr shift(const TermPtr& t, std::ptrdiff_t by, std::size_t cutoff = 0);

// Beta substitution: `body` is the body of a lambda; replaces index 0 with
// `arg` and lowers the other free indices by one.
TermPtr substitute(const TermPtr& body, const TermPtr& arg);

// True for terms without 0, + or scalar multiples anywhere.
bool is_pure(const Term& t);

// Church numeral of type (tau -> tau) -> (tau -> tau).
TermPtr church_numeral(std::size_t n, const TypePtr& tau);

}  // namespace flam
