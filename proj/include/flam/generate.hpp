#pragma once

#include <cstdint>
#include <vector>

#include "flam/field.hpp"
#include "flam/term.hpp"
#include "flam/typecheck.hpp"

namespace flam {

struct GenOptions {
  bool algebraic = false;
  // Scalars are drawn from this field when `algebraic` is set.
  std::uint32_t field = 2;
  // Free variables the generated term may mention.
  Context context;
  // Candidate types for lambda binders introduced by eliminations
  // (application arguments, projection partners). Empty means the default
  // pool {1, Bool, 1 * Bool, 1 -> Bool, Bool -> 1}.
  std::vector<TypePtr> pool;
};

// Random well-typed term of type `target`, deterministic in `seed`. `size`
// bounds the node count of the random part; canonical inhabitants are used
// when the budget runs out, so compound targets may slightly exceed it.
TermPtr gen_term(std::uint64_t seed, const TypePtr& target, std::size_t size, const GenOptions& opts = {});

// Convenience overload matching the closed-term generator contract.
inline TermPtr gen_term(std::uint64_t seed, const TypePtr& target, std::size_t size, bool algebraic,
                        std::uint32_t field = 2) {
  GenOptions opts;
  opts.algebraic = algebraic;
  opts.field = field;
  return gen_term(seed, target, size, opts);
}

// Random type built from 1, Bool, * and -> with at most `depth` nested
// constructors.
TypePtr gen_type(std::uint64_t seed, std::size_t depth);

}  // namespace flam
