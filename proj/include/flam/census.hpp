#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flam/field.hpp"
#include "flam/type.hpp"
#include "flam/vec_model.hpp"

namespace flam {

enum class Model { Set, Vec };

struct CensusOptions {
  Model model = Model::Vec;
  std::size_t max = 20;
  // Hash denotations instead of storing them; hash-equal numerals are then
  // compared in full in a second pass.
  bool fingerprint = false;
  // Allow runs above the default work budget.
  bool slow = false;
};

struct CensusReport {
  TypePtr base;
  std::uint32_t p = 2;
  CensusOptions options;
  std::vector<std::size_t> class_of;            // numeral -> class id, ids by first member
  std::vector<std::vector<std::size_t>> classes;

  std::size_t distinct() const { return classes.size(); }
};

// Partitions 0..max by equality of the denotations of the Church numerals
// at (tau -> tau) -> (tau -> tau). Throws GuardError when the base space is
// too large or the work exceeds the budget without `slow`.
CensusReport church_census(const TypePtr& tau, const Field& field, const CensusOptions& opts);

// lcm(1..p) + p - 1.
std::uint64_t census_formula(std::uint32_t p);

// "n,class" lines under a header.
std::string census_csv(const CensusReport& r);
std::string census_text(const CensusReport& r);

// Matrix of n at tau in the vector model.
Matrix numeral_matrix(std::size_t n, const TypePtr& tau, const Field& field);

}  // namespace flam
