#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "flam/field.hpp"
#include "flam/term.hpp"
#include "flam/typecheck.hpp"

namespace flam {

// Concrete ASCII grammar.
//
//   types  T ::= 1 | Bool | T * T | T -> T | (T)      -> and * associate right,
//                                                     * binds tighter
//   terms  M ::= x | \(x:T). M | M M | <M, M> | fst M | snd M | * | tt | ff
//              | if M then M else M | let * = M in M
//              | 0 : T | M + M | k . M | M - M | (M)
//
// Application is left associative and binds tighter than `k.`, which binds
// tighter than `+` and `-`. Binder forms (lambda, if, let) extend as far
// right as possible. `--` starts a comment that runs to the end of the line.
// Scalar literals are reduced modulo the field; `M - N` is M + (p-1).N.

TypePtr parse_type(std::string_view text);

// Free variables of the text resolve against `ctx`. Scalars (`k.M`, `M - N`)
// require a field and raise ParseError without one.
TermPtr parse_term(std::string_view text, const std::optional<Field>& field, const Context& ctx = {});

// "x:Bool, f:1 -> 1"; the empty string is the empty context.
Context parse_context(std::string_view text);

// One term per file, optionally preceded by a header line `ctx: x:A, ...`.
struct Program {
  Context context;
  TermPtr term;
};
Program parse_program(std::string_view text, const std::optional<Field>& field);

// Prints with binder names taken from name hints, renamed where they would
// capture. The output reparses to a structurally equal term.
std::string print_term(const TermPtr& t, const Context& ctx = {});

std::string print_judgment(const Judgment& j);

}  // namespace flam
