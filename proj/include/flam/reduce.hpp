#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flam/field.hpp"
#include "flam/term.hpp"
#include "flam/typecheck.hpp"

namespace flam {

// Top-level linear combination of atoms, i.e. the AC class of a term seen
// through +, scalar multiples and 0. Atoms are non-algebraic terms, ordered
// structurally; coefficients are never zero.
class LinearCombo {
 public:
  static LinearCombo collect(const TermPtr& t, const Field& field);

  void add(const TermPtr& atom, Residue coeff, const Field& field);

  const std::map<TermPtr, Residue, TermLess>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Atoms in order joined by left-nested sums, coefficient 1 printed bare,
  // and `0 : type` for the empty combination.
  TermPtr emit(const TypePtr& type) const;

 private:
  std::map<TermPtr, Residue, TermLess> terms_;
};

// Canonical representative of the AC class of a term: collect, merge
// coefficients in F_p, drop zeros, emit in order. Idempotent. The context is
// only consulted to type an expression whose combination cancels to 0.
TermPtr algebraic_canonical(const TermPtr& t, const Field& field, const Context& ctx = {});

// Value grammar: x | \x.M | <M,N> | * | tt | ff | 0 | U + V | a.U. For pure
// terms this coincides with the values of the non-algebraic calculus.
bool is_value(const TermPtr& t);

struct Step {
  TermPtr term;
  std::string rule;
};

// One call-by-name step on a closed well-typed term. Algebraic rewriting
// is realised through canonical forms: a term whose top-level combination
// is already canonical and made of values is normal. Returns nullopt on
// normal forms.
std::optional<Step> step_cbn(const TermPtr& t, const Field& field);

// 10 * size^2.
std::size_t default_fuel(const TermPtr& t);

using TraceFn = std::function<void(const Step&)>;

// Iterates step_cbn. Throws InternalError when fuel runs out or a closed
// non-value gets stuck.
TermPtr normalize(const TermPtr& t, const Field& field, std::optional<std::size_t> fuel = {},
                  const TraceFn& trace = {});

enum class UnitClass { Zero, Star, Scaled };

struct UnitForm {
  UnitClass cls;
  Residue alpha;  // 0, 1, or the scalar when Scaled
};

// AC-normal form of a closed value of type 1: 0, *, or a.* with a not in
// {0, 1}. Throws TypeError on anything else.
UnitForm ac_normal_form_unit(const TermPtr& t, const Field& field);

}  // namespace flam
