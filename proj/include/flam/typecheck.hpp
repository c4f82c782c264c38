#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flam/field.hpp"
#include "flam/term.hpp"
#include "flam/type.hpp"

namespace flam {

struct Binding {
  std::string name;
  TypePtr type;
};

// Ordered typing context x1:A1, ..., xn:An. The last binding is de Bruijn
// index 0.
using Context = std::vector<Binding>;

// Delta |- M : A, always well typed once constructed through make_judgment.
struct Judgment {
  Context context;
  TermPtr term;
  TypePtr type;
};

// Returns the unique type of `t` under `ctx`, or throws TypeError. When a
// field is supplied, scalar coefficients must be residues of it.
TypePtr typecheck(const Context& ctx, const TermPtr& t, const std::optional<Field>& field = {});

// Typechecks and packages; throws TypeError.
Judgment make_judgment(Context ctx, TermPtr t, const std::optional<Field>& field = {});

// Closed judgment |- M : A.
inline Judgment closed_judgment(TermPtr t, const std::optional<Field>& field = {}) {
  return make_judgment({}, std::move(t), field);
}

std::string context_to_string(const Context& ctx);

}  // namespace flam
