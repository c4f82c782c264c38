#include <doctest.h>

#include <map>

#include "flam/census.hpp"
#include "flam/error.hpp"
#include "flam/set_model.hpp"
#include "flam/syntax.hpp"

using namespace flam;

namespace {

const Field F2(2), F3(3);

TypePtr T(const char* s) { return parse_type(s); }

// Classes computed from full denotations, ids by first member.
template <class Key, class Den>
std::vector<std::size_t> partition(std::size_t max, Den den) {
  std::map<Key, std::size_t> ids;
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= max; ++n) out.push_back(ids.try_emplace(den(n), ids.size()).first->second);
  return out;
}

std::vector<std::string> rows(const Matrix& m) {
  std::vector<std::string> out;
  for (const auto& row : m) {
    std::string s;
    for (Residue x : row) s += static_cast<char>('0' + x);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("formula") {
  CHECK(census_formula(2) == 3);
  CHECK(census_formula(3) == 8);
  CHECK(census_formula(5) == 64);
  CHECK(census_formula(7) == 426);
}

TEST_CASE("set model over Bool") {
  CensusReport r = church_census(T("Bool"), F2, {Model::Set, 20});
  CHECK(r.distinct() == 3);
  CHECK(r.classes[0] == std::vector<std::size_t>{0});
  for (std::size_t n = 1; n <= 18; ++n) CHECK(r.class_of[n] == r.class_of[n + 2]);
  auto oracle = partition<std::uint64_t>(20, [](std::size_t n) { return set_denote_closed(church_numeral(n, T("Bool"))); });
  CHECK(r.class_of == oracle);
}

TEST_CASE("vector model over 1 agrees with the closed formula") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field f(p);
    CensusReport r = church_census(T("1"), f, {Model::Vec, p == 5 ? 70u : 20u});
    CHECK(r.distinct() == census_formula(p));
  }
}

TEST_CASE("census classes match the model's denotations") {
  auto den = [](const char* tau, const Field& f) {
    return [=](std::size_t n) { return vec_denote_closed(church_numeral(n, T(tau)), f).coeffs; };
  };
  CHECK(church_census(T("1"), F3, {Model::Vec, 20}).class_of == partition<std::vector<Residue>>(20, den("1", F3)));
  CHECK(church_census(T("Bool"), F2, {Model::Vec, 30}).class_of ==
        partition<std::vector<Residue>>(30, den("Bool", F2)));
  CHECK(church_census(T("1 * 1"), F2, {Model::Vec, 16}).class_of ==
        partition<std::vector<Residue>>(16, den("1 * 1", F2)));
}

TEST_CASE("vector model over Bool at p = 2") {
  CensusReport r = church_census(T("Bool"), F2, {Model::Vec, 40});
  CHECK(r.distinct() == 15);
  for (std::size_t n : {0, 1, 2}) CHECK(r.classes[r.class_of[n]] == std::vector<std::size_t>{n});
  for (std::size_t n = 3; n + 12 <= 40; ++n) CHECK(r.class_of[n] == r.class_of[n + 12]);
  for (std::size_t i = 3; i <= 14; ++i)
    for (std::size_t j = i + 1; j <= 14; ++j) CHECK(r.class_of[i] != r.class_of[j]);
}

TEST_CASE("fingerprints agree with full comparison") {
  std::pair<const char*, std::uint32_t> cases[] = {{"1", 2}, {"1", 3}, {"1", 5}, {"Bool", 2}, {"1 * 1", 2}};
  for (auto [tau, p] : cases) {
    Field f(p);
    CensusOptions full{Model::Vec, 25};
    CensusOptions hashed = full;
    hashed.fingerprint = true;
    CHECK(church_census(T(tau), f, full).class_of == church_census(T(tau), f, hashed).class_of);
  }
}

TEST_CASE("large censuses need the slow flag") {
  CHECK_THROWS_AS(church_census(T("1"), Field(7), {Model::Vec, 430}), GuardError);
  CHECK_THROWS_AS(church_census(T("Bool"), F3, {Model::Vec, 20}), GuardError);
}

TEST_CASE("numeral matrices over 1 at p = 3") {
  // Golden rows for 0, 2, ..., 7; 1 follows the digit law.
  const std::vector<std::vector<std::string>> golden = {
      {"000000000000000000000000000", "111111111111111111111111111", "222222222222222222222222222"},
      {"000000000111111111222222222", "000111222000111222000111222", "012012012012012012012012012"},
      {"000000000000111222012012012", "000111012111111012222111012", "002012022102112122202212222"},
      {"000000000111111012202212222", "000111022000111122012111222", "002012012012112212022012012"},
      {"000000000000111122022012012", "000111012111111212202111012", "002012022102112022212212222"},
      {"000000000111111212212212222", "000111022000111022022111222", "002012012012112112002012012"},
      {"000000000000111022002012012", "000111012111111112212111012", "002012022102112222222212222"},
      {"000000000111111112222212222", "000111022000111222002111222", "002012012012112012012012012"},
  };
  for (std::size_t n = 0; n < golden.size(); ++n) CHECK(rows(numeral_matrix(n, T("1"), F3)) == golden[n]);
  for (std::size_t n = 2; n < 8; ++n) CHECK(numeral_matrix(n, T("1"), F3) == numeral_matrix(n + 6, T("1"), F3));
}

TEST_CASE("report formats") {
  CensusReport r = church_census(T("1"), F2, {Model::Vec, 4});
  CHECK(census_csv(r) == "n,class\n0,0\n1,1\n2,2\n3,1\n4,2\n");
  CHECK(census_text(r) ==
        "type: 1\nmodel: vec\nfield: 2\nnumerals: 0..4\nclass 0: 0\nclass 1: 1 3\nclass 2: 2 4\ndistinct: 3\n");
}
