#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flam/field.hpp"
#include "flam/term.hpp"
#include "flam/typecheck.hpp"

namespace flam {

// Largest vector count a space may have before enumeration is refused.
inline constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

// The vector space denoting a type over F_p.
//
// Coordinates: 1 has one (the coefficient of *); Bool has two, tt then ff;
// A * B lists the coordinates of A then those of B; A -> B is a linear map
// out of !A, stored as its values on the basis b_u for every vector u of A,
// in rank order of u.
//
// Vectors are ranked lexicographically on their coordinates, the first
// coordinate most significant. The basis of !Bool thus reads b_0, b_ff,
// b_tt, b_{tt+ff}.
class VecSpace {
 public:
  VecSpace(const TypePtr& type, const Field& field);

  const TypePtr& type() const { return type_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  bool enumerable() const { return vcount_ != 0; }
  // Number of vectors p^dim; throws GuardError beyond kEnumerationGuard.
  std::uint64_t vcount() const;

  std::uint64_t rank(std::span<const Residue> coords) const;
  std::vector<Residue> unrank(std::uint64_t r) const;
  void unrank_into(std::uint64_t r, std::span<Residue> out) const;

 private:
  TypePtr type_;
  Field field_;
  std::size_t dim_;
  std::uint64_t vcount_;  // 0 when beyond the guard
};

// A vector of the denotation of a type. Structured access goes through the
// helpers below; the coordinates follow VecSpace's layout.
struct SemVec {
  TypePtr type;
  std::vector<Residue> coeffs;

  bool operator==(const SemVec& o) const { return type_equal(type, o.type) && coeffs == o.coeffs; }
};

VecSpace vec_denote_type(const TypePtr& type, const Field& field);

SemVec scalar_vec(Residue alpha);                   // a.*
SemVec bool_vec(Residue alpha, Residue beta);       // a.tt + b.ff
SemVec pair_vec(const SemVec& l, const SemVec& r);  // <u, w>
// Linear map !A -> B from its values on the basis, in rank order.
SemVec fun_vec(const TypePtr& domain, const std::vector<SemVec>& table, const Field& field);

SemVec vec_left(const SemVec& v, const Field& field);
SemVec vec_right(const SemVec& v, const Field& field);
// coKleisli application: the value of f on the basis element b_u.
SemVec vec_apply(const SemVec& f, const SemVec& u, const Field& field);

SemVec vec_add(const SemVec& u, const SemVec& v, const Field& field);
SemVec vec_scale(Residue alpha, const SemVec& v, const Field& field);
SemVec vec_zero(const TypePtr& type, const Field& field);

std::string vec_to_string(const SemVec& v);

// Denotation of a judgment x1:A1, ..., xn:An |- M : B: the linear map
// !A1 (x) ... (x) !An -> B tabulated on basis tuples b_u1 (x) ... (x) b_un.
// Tuples are ranked with x1 the most significant digit.
class KFun {
 public:
  KFun(Judgment judgment, Field field, std::vector<VecSpace> inputs, VecSpace output,
       std::vector<Residue> table);

  const Judgment& judgment() const { return judgment_; }
  const Field& field() const { return field_; }
  const std::vector<VecSpace>& inputs() const { return inputs_; }
  const VecSpace& output() const { return output_; }

  std::uint64_t entries() const { return output_.dim() == 0 ? 0 : table_.size() / output_.dim(); }
  std::span<const Residue> entry(std::uint64_t tuple_rank) const {
    return std::span<const Residue>(table_).subspan(tuple_rank * output_.dim(), output_.dim());
  }
  SemVec at(std::uint64_t tuple_rank) const;
  // Rank of a tuple of context-vector ranks.
  std::uint64_t tuple_rank(std::span<const std::uint64_t> ranks) const;

  const std::vector<Residue>& table() const { return table_; }

 private:
  Judgment judgment_;
  Field field_;
  std::vector<VecSpace> inputs_;
  VecSpace output_;
  std::vector<Residue> table_;
};

KFun vec_denote(const Judgment& j, const Field& field);

// Value of a closed term.
SemVec vec_denote_closed(const TermPtr& t, const Field& field);

// Throws TypeError when the judgments have different contexts or types.
bool vec_equiv(const Judgment& a, const Judgment& b, const Field& field);

// Matrix of a closed arrow-typed judgment A -> B: one column per vector of A
// in rank order, one row per coordinate of B.
using Matrix = std::vector<std::vector<Residue>>;
Matrix to_matrix(const KFun& den);
Matrix function_matrix(const SemVec& f, const Field& field);

// Rows on separate lines, digits separated by single spaces.
std::string matrix_to_text(const Matrix& m);

// The set function v |-> f(b_v) underlying a judgment denotation: result
// vector ranks indexed by tuple rank.
struct VecSetMap {
  std::vector<VecSpace> inputs;
  VecSpace output;
  std::vector<std::uint64_t> table;
};
VecSetMap embed_to_set(const KFun& den);

}  // namespace flam
