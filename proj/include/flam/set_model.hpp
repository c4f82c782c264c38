#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "flam/term.hpp"
#include "flam/typecheck.hpp"

namespace flam {

// An element of the finite-set denotation of a type.
struct SetElem {
  TypeKind kind = TypeKind::Unit;
  bool value = false;           // Bool
  std::vector<SetElem> parts;   // Prod: {left, right}; Arrow: image of each domain rank

  static SetElem unit() { return {}; }
  static SetElem boolean(bool b) { return {TypeKind::Bool, b, {}}; }
  static SetElem pair(SetElem l, SetElem r);
  static SetElem function(std::vector<SetElem> table);

  bool operator==(const SetElem&) const = default;
};

// The finite set denoting a type, with a rank bijection onto [0, size).
// Ranks: tt = 0, ff = 1; pairs left-major; a function is the number whose
// base-|B| digits are its outputs, the image of domain rank 0 being the
// most significant digit.
class SetSpace {
 public:
  // Throws GuardError beyond kEnumerationGuard elements.
  explicit SetSpace(const TypePtr& type);

  const TypePtr& type() const { return type_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t rank(const SetElem& e) const;
  SetElem unrank(std::uint64_t r) const;

  // Rank arithmetic without materialising elements.
  std::uint64_t pair_rank(std::uint64_t l, std::uint64_t r) const { return l * right_->size_ + r; }
  std::uint64_t left_of(std::uint64_t r) const { return r / right_->size_; }
  std::uint64_t right_of(std::uint64_t r) const { return r % right_->size_; }
  std::uint64_t apply(std::uint64_t f, std::uint64_t a) const;
  std::uint64_t function_rank(std::span<const std::uint64_t> table) const;

  const SetSpace& left() const { return *left_; }
  const SetSpace& right() const { return *right_; }
  const SetSpace& domain() const { return *left_; }
  const SetSpace& codomain() const { return *right_; }

 private:
  TypePtr type_;
  std::uint64_t size_ = 1;
  std::shared_ptr<const SetSpace> left_, right_;
  std::vector<std::uint64_t> powers_;  // Arrow: |B|^k for k < |A|, when |B| > 1
};

SetSpace set_denote_type(const TypePtr& type);

std::string set_elem_to_string(const SetElem& e);
// Tuple notation: booleans as t/f, a function into a base type as the word
// of its outputs, other functions as (o1,o2,...). The numeral 2 at Bool
// reads (tt,tf,tf,ff).
std::string set_elem_compact(const SetElem& e);

// Denotation of a pure judgment: result ranks for every tuple of context
// ranks, x1 the most significant digit.
class SetFun {
 public:
  SetFun(Judgment judgment, std::vector<SetSpace> inputs, SetSpace output, std::vector<std::uint64_t> table);

  const Judgment& judgment() const { return judgment_; }
  const std::vector<SetSpace>& inputs() const { return inputs_; }
  const SetSpace& output() const { return output_; }
  const std::vector<std::uint64_t>& table() const { return table_; }

  std::uint64_t tuple_rank(std::span<const std::uint64_t> ranks) const;
  SetElem at(std::uint64_t tuple_rank) const { return output_.unrank(table_[tuple_rank]); }

 private:
  Judgment judgment_;
  std::vector<SetSpace> inputs_;
  SetSpace output_;
  std::vector<std::uint64_t> table_;
};

// Throws TypeError on terms using 0, + or scalars.
SetFun set_denote(const Judgment& j);
std::uint64_t set_denote_closed(const TermPtr& t);

bool set_equiv(const Judgment& a, const Judgment& b);

// M_a : A with denotation a.
TermPtr set_synth_point(const SetElem& a, const TypePtr& type);
// delta_a : A -> Bool, sending a to tt and the rest to ff.
TermPtr set_synth_delta(const SetElem& a, const TypePtr& type);
// A term M with x1:A1, ..., xn:An |- M : B denoting f, built as M_g x1 ... xn
// for the curried table g.
TermPtr set_synth_function(const SetFun& f);
// The same from a bare table of output ranks indexed by context tuples.
TermPtr set_synth_table(const Context& ctx, const TypePtr& output, std::span<const std::uint64_t> table);

}  // namespace flam
