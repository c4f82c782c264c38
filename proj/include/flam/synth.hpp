#pragma once

#include <cstdint>
#include <optional>

#include "flam/field.hpp"
#include "flam/set_model.hpp"
#include "flam/term.hpp"
#include "flam/typecheck.hpp"
#include "flam/vec_model.hpp"

namespace flam {

// exp^0 = \x.*, exp^{i+1} = \x. let * = x in exp^i x; sends a.* to a^i.*.
TermPtr exp_term(std::size_t i);

// exp^{p-1}: 0 to 0, every nonzero scalar multiple of * to *.
TermPtr iszero_term(const Field& field);

struct SynthRequest {
  TypePtr type;
  SemVec vector;
  Field field;
};

// M_v : A with denotation v.
TermPtr synth_vector(const SynthRequest& req);
// delta_v : A -> 1 sending b_v to * and every other b_u to 0.
TermPtr synth_delta(const SynthRequest& req);

// 1 -> Bool, Bool -> Bool * Bool, homomorphic on * and ->.
TypePtr vts_type(const TypePtr& type);

// x:A |- phi_A : VtoS(A) and x:VtoS(A) |- phibar_A : A. Only over F_2;
// throws FieldError otherwise.
Judgment phi_judgment(const TypePtr& type, const Field& field);
Judgment phibar_judgment(const TypePtr& type, const Field& field);

// The vector coding an element a of the set denotation of a type: the
// FinVec value of the pure term M_a.
SemVec set_code(const SetElem& a, const TypePtr& type, const Field& field);

// Reads a closed term of a pure type back as a set element: ground values
// must be codes, functions are probed on the code of every argument. Returns
// nullopt when some probe lands outside the codes.
std::optional<SetElem> set_decode(const TermPtr& closed, const TypePtr& type, const Field& field);

struct Factoring {
  Judgment tilde;        // y:VtoS(A) |- M~ : VtoS(B), a pure term
  Judgment reassembled;  // x:A |- phibar_B[M~[phi_A]] : B
};

// Factors x:A |- M : B through the pure term M~ read off from the composite
// phi_B . M . phibar_A on coded inputs.
Factoring factor_through_set(const Judgment& j, const Field& field);

// N[M/x] for judgments x:A |- M : B and x:B |- N : C.
Judgment compose(const Judgment& first, const Judgment& second);

}  // namespace flam
