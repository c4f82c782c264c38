// End-to-end checks, one line per criterion. Exit status is the number of
// failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "flam/census.hpp"
#include "flam/error.hpp"
#include "flam/generate.hpp"
#include "flam/reduce.hpp"
#include "flam/set_model.hpp"
#include "flam/syntax.hpp"
#include "flam/synth.hpp"
#include "flam/vec_model.hpp"

using namespace flam;

namespace {

const Field F2(2), F3(3);

TypePtr T(const char* s) { return parse_type(s); }

const char* const kFamily[] = {"1", "Bool", "1 * Bool", "1 -> 1", "Bool -> 1", "Bool -> Bool", "(1 -> 1) -> 1"};

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string rows_text(const Matrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ";";
    for (Residue x : m[i]) s += static_cast<char>('0' + x);
  }
  return s;
}

// Matrix of a closed function with its columns taken at the given domain
// vectors, in the given order.
Matrix matrix_at(const SemVec& f, const std::vector<std::vector<Residue>>& columns, const Field& field) {
  Matrix m;
  for (const auto& u : columns) {
    SemVec col = vec_apply(f, {f.type->domain(), u}, field);
    if (m.empty()) m.resize(col.coeffs.size());
    for (std::size_t i = 0; i < col.coeffs.size(); ++i) m[i].push_back(col.coeffs[i]);
  }
  return m;
}

SemVec numeral(std::size_t n, const char* tau, const Field& f) { return vec_denote_closed(church_numeral(n, T(tau)), f); }

Outcome c1() {
  Outcome o;
  CensusReport r = church_census(T("Bool"), F2, {Model::Set, 20});
  SetSpace num(T("(Bool -> Bool) -> Bool -> Bool"));
  auto tuple = [&](std::size_t n) { return set_elem_compact(num.unrank(set_denote_closed(church_numeral(n, T("Bool"))))); };
  o.require(r.distinct() == 3, "distinct = " + std::to_string(r.distinct()));
  o.require(tuple(0) == "(tf,tf,tf,tf)", "0 = " + tuple(0));
  o.require(tuple(1) == "(tt,tf,ft,ff)", "1 = " + tuple(1));
  o.require(tuple(2) == "(tt,tf,tf,ff)", "2 = " + tuple(2));
  for (std::size_t n = 1; n + 2 <= 20; ++n) o.require(r.class_of[n] == r.class_of[n + 2], "n vs n+2 at " + std::to_string(n));
  if (o.ok) o.detail = "3 classes: " + tuple(0) + " " + tuple(1) + " " + tuple(2);
  return o;
}

Outcome c2() {
  Outcome o;
  // Columns b_0, b_{f_0}, b_{f_*}, b_{f_0+f_*}; rows f_0, f_*.
  std::vector<std::vector<Residue>> cols = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  std::string m0 = rows_text(matrix_at(numeral(0, "1", F2), cols, F2));
  std::string m1 = rows_text(matrix_at(numeral(1, "1", F2), cols, F2));
  std::string m2 = rows_text(matrix_at(numeral(2, "1", F2), cols, F2));
  o.require(m0 == "0000;1111", "0 = " + m0);
  o.require(m1 == "0101;0011", "1 = " + m1);
  o.require(m2 == "0001;0111", "2 = " + m2);
  o.require(numeral(3, "1", F2) == numeral(1, "1", F2), "3 differs from 1");
  std::size_t d = church_census(T("1"), F2, {Model::Vec, 10}).distinct();
  o.require(d == 3, "census = " + std::to_string(d));
  if (o.ok) o.detail = "0=(" + m0 + ") 1=(" + m1 + ") 2=(" + m2 + "), 3=1, census 3";
  return o;
}

Outcome c3() {
  Outcome o;
  std::size_t d = church_census(T("1"), F3, {Model::Vec, 20}).distinct();
  o.require(d == 8, "census = " + std::to_string(d));
  Matrix zero = numeral_matrix(0, T("1"), F3), one = numeral_matrix(1, T("1"), F3);
  for (std::size_t j = 0; j < 27; ++j) {
    for (std::size_t i = 0; i < 3; ++i) o.require(zero[i][j] == i, "0 column " + std::to_string(j));
    std::size_t digits[] = {j / 9, j / 3 % 3, j % 3};
    for (std::size_t i = 0; i < 3; ++i) o.require(one[i][j] == digits[i], "1 column " + std::to_string(j));
  }
  // The printed table reads 2 at row 2, column 24 (1-based) where the
  // digit law gives 1.
  o.require(one[1][23] == 1, "digit law at row 2, column 24");
  if (o.ok) o.detail = "census 8, 0 columns (0,1,2), 1 columns = base-3 digits of j (printed table slips at row 2 col 24)";
  return o;
}

Outcome c4() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t d5 = church_census(T("1"), Field(5), {Model::Vec, 70}).distinct();
  double s5 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(d5 == 64 && d5 == census_formula(5), "F_5 census = " + std::to_string(d5));
  o.require(s5 < 30, "F_5 took " + std::to_string(s5) + " s");
  CensusOptions slow{Model::Vec, 430, true, true};
  auto t1 = std::chrono::steady_clock::now();
  std::size_t d7 = church_census(T("1"), Field(7), slow).distinct();
  double s7 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  o.require(d7 == 426 && d7 == census_formula(7), "F_7 census = " + std::to_string(d7));
  o.require(s7 < 600, "F_7 took " + std::to_string(s7) + " s");
  std::ostringstream os;
  os.precision(3);
  os << "F_5: 64 in " << s5 << " s, F_7: 426 in " << s7 << " s";
  if (o.ok) o.detail = os.str();
  return o;
}

Outcome c5() {
  Outcome o;
  CensusReport r = church_census(T("Bool"), F2, {Model::Vec, 40});
  o.require(r.distinct() == 15, "census = " + std::to_string(r.distinct()));
  for (std::size_t n : {0, 1, 2}) o.require(r.classes[r.class_of[n]].size() == 1, std::to_string(n) + " not a singleton");
  for (std::size_t i = 3; i <= 14; ++i) {
    for (std::size_t n = i; n <= 40; n += 12) {
      o.require(r.classes[r.class_of[n]] == r.classes[r.class_of[i]], "class of " + std::to_string(n));
    }
    for (std::size_t j = i + 1; j <= 14; ++j) o.require(r.class_of[i] != r.class_of[j], "classes merge");
  }
  SemVec neg{T("Bool -> Bool"), {0, 0, 1, 0, 0, 1, 1, 1}};
  SemVec out = vec_apply(numeral(2, "Bool", F2), neg, F2);
  o.require(out.coeffs == std::vector<Residue>{0, 0, 0, 1, 1, 0, 1, 1}, "2 sends the tuple to " + vec_to_string(out));
  SemVec id = vec_denote_closed(parse_term("\\(x:Bool). x", F2), F2);
  o.require(out == id, "image is not the identity");
  if (o.ok) o.detail = "15 classes, {0},{1},{2},{i+12n}; 2 maps (0,0,1,0,0,1,1,1) to (0,0,0,1,1,0,1,1)";
  return o;
}

Outcome c6() {
  Outcome o;
  auto judge = [](const char* s) {
    Program p = parse_program(s, F2);
    return make_judgment(p.context, p.term, F2);
  };
  Judgment a = judge("ctx: x:Bool\ntt"), b = judge("ctx: x:Bool\nif x then tt else tt");
  o.require(!vec_equiv(a, b, F2), "vec_equiv holds");
  o.require(set_equiv(a, b), "set_equiv fails");
  KFun da = vec_denote(a, F2), db = vec_denote(b, F2);
  std::vector<std::uint64_t> diff;
  for (std::uint64_t t = 0; t < da.entries(); ++t)
    if (!(da.at(t) == db.at(t))) diff.push_back(t);
  o.require(!diff.empty() && diff[0] == 0, "first difference is not at b_0");
  o.require(da.at(0) == bool_vec(1, 0) && db.at(0) == bool_vec(0, 0), "values at b_0");
  // Over F_2 the scalars also cancel at b_{tt+ff}.
  o.require(diff == std::vector<std::uint64_t>{0, 3}, "unexpected difference set");
  if (o.ok) o.detail = "vec: differ at b_0 (tt vs 0) and b_{tt+ff}; set: equal";
  return o;
}

Outcome c7() {
  Outcome o;
  auto den = [](const char* y, const char* z) {
    return vec_denote_closed(parse_term((std::string("\\(x:Bool). if x then ") + y + " else " + z).c_str(), F2), F2);
  };
  SemVec tt_tt = den("tt", "tt"), ff_ff = den("ff", "ff"), tt_ff = den("tt", "ff"), ff_tt = den("ff", "tt");
  o.require(tt_tt == vec_add(ff_ff, vec_add(tt_ff, ff_tt, F2), F2), "sum does not collapse");
  // Columns b_0, b_tt, b_ff, b_{tt+ff}.
  std::vector<std::vector<Residue>> cols = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const char* want[] = {"0110;0000", "0000;0110", "0101;0011", "0011;0101"};
  const SemVec* got[] = {&tt_tt, &ff_ff, &tt_ff, &ff_tt};
  std::string all;
  for (int i = 0; i < 4; ++i) {
    std::string m = rows_text(matrix_at(*got[i], cols, F2));
    o.require(m == want[i], "matrix " + std::to_string(i) + " = " + m);
    all += (i ? " " : "") + ("(" + m + ")");
  }
  if (o.ok) o.detail = "T_tt,tt = T_ff,ff + T_tt,ff + T_ff,tt; " + all;
  return o;
}

// Sampled vectors of a space: all of them when few, else random ones plus 0.
std::vector<SemVec> vectors(const VecSpace& s, std::size_t limit, std::uint64_t seed) {
  std::vector<SemVec> out;
  if (s.enumerable() && s.vcount() <= limit) {
    for (std::uint64_t r = 0; r < s.vcount(); ++r) out.push_back({s.type(), s.unrank(r)});
    return out;
  }
  std::mt19937_64 rng(seed);
  out.push_back(vec_zero(s.type(), s.field()));
  while (out.size() < limit) {
    std::vector<Residue> c(s.dim());
    for (auto& x : c) x = static_cast<Residue>(rng() % s.field().modulus());
    out.push_back({s.type(), c});
  }
  return out;
}

Outcome c8() {
  Outcome o;
  std::size_t exhaustive = 0, sampled = 0;
  for (const char* s : kFamily) {
    TypePtr a = T(s);
    SetSpace set(a);
    SetSpace ind(Type::arrow(a, Type::boolean()));
    for (std::uint64_t r = 0; r < set.size(); ++r) {
      o.require(set_denote_closed(set_synth_point(set.unrank(r), a)) == r, std::string("set point at ") + s);
      SetElem table = ind.unrank(set_denote_closed(set_synth_delta(set.unrank(r), a)));
      for (std::uint64_t u = 0; u < set.size(); ++u)
        o.require(table.parts[u].value == (u == r), std::string("set delta at ") + s);
    }
    for (std::uint32_t p : {2u, 3u}) {
      Field f(p);
      VecSpace space(a, f);
      bool all = space.enumerable() && space.vcount() <= 4096;
      (all ? exhaustive : sampled)++;
      for (const auto& v : vectors(space, 4096, p)) {
        o.require(vec_denote_closed(synth_vector({a, v, f}), f) == v, std::string("vector at ") + s);
      }
      auto probes = vectors(space, 40, p + 100);
      std::vector<TermPtr> points;
      for (const auto& u : probes) points.push_back(synth_vector({a, u, f}));
      for (const auto& v : probes) {
        TermPtr d = synth_delta({a, v, f});
        for (std::size_t k = 0; k < probes.size(); ++k) {
          SemVec got = vec_denote_closed(app(d, points[k]), f);
          o.require(got == scalar_vec(probes[k] == v ? 1 : 0), std::string("delta at ") + s);
        }
      }
    }
  }
  if (o.ok) {
    o.detail = "7 types, p in {2,3}: " + std::to_string(exhaustive) + " spaces exhaustive, " + std::to_string(sampled) +
               " sampled (4096 vectors, 40x40 delta probes)";
  }
  return o;
}

Outcome c9() {
  Outcome o;
  std::size_t steps = 0, units = 0;
  for (bool algebraic : {false, true}) {
    std::size_t done = 0;
    for (std::uint64_t seed = 0; done < 500; ++seed) {
      std::uint32_t p = algebraic ? (seed % 2 ? 3 : 2) : 2;
      Field f(p);
      TypePtr a = seed % 5 == 0 ? Type::unit() : gen_type(seed + 5000, 2);
      try {
        if (VecSpace(a, f).dim() > 256) continue;
      } catch (const GuardError&) {
        continue;
      }
      ++done;
      TermPtr t = gen_term(seed, a, 4 + seed % 24, algebraic, p);
      SemVec v = vec_denote_closed(t, f);
      std::optional<std::uint64_t> s;
      if (!algebraic) s = set_denote_closed(t);
      std::size_t fuel = default_fuel(t);
      TermPtr cur = t;
      while (auto st = step_cbn(cur, f)) {
        if (fuel-- == 0) {
          o.require(false, "fuel exhausted on " + print_term(t));
          return o;
        }
        ++steps;
        cur = st->term;
        o.require(type_equal(typecheck({}, cur, f), a), "type changed by " + st->rule);
        o.require(vec_denote_closed(cur, f) == v, "denotation changed by " + st->rule);
        if (s) o.require(set_denote_closed(cur) == *s, "set denotation changed by " + st->rule);
      }
      o.require(is_value(cur), "stuck on " + print_term(cur));
      if (a->kind() == TypeKind::Unit) {
        ++units;
        UnitForm u = ac_normal_form_unit(cur, f);
        Residue want = v.coeffs[0];
        bool agrees = (u.cls == UnitClass::Zero && want == 0) || (u.cls == UnitClass::Star && want == 1) ||
                      (u.cls == UnitClass::Scaled && u.alpha == want && want > 1);
        o.require(agrees, "unit value " + print_term(cur) + " misclassified");
        if (!algebraic) o.require(u.cls == UnitClass::Star, "pure unit value is not *");
      }
    }
  }
  if (o.ok) {
    o.detail = "1000 terms, " + std::to_string(steps) + " steps checked, " + std::to_string(units) + " unit values classified";
  }
  return o;
}

Outcome c10() {
  Outcome o;
  for (const char* s : kFamily) {
    TypePtr a = T(s), va = vts_type(a);
    KFun there = vec_denote(compose(phi_judgment(a, F2), phibar_judgment(a, F2)), F2);
    VecSpace space(a, F2);
    for (std::uint64_t r = 0; r < space.vcount(); ++r)
      o.require(there.at(r).coeffs == space.unrank(r), std::string("phibar.phi at ") + s);
    Judgment back = compose(phibar_judgment(a, F2), phi_judgment(a, F2));
    SetSpace codes(va);
    for (std::uint64_t r = 0; r < codes.size(); ++r) {
      auto e = set_decode(substitute(back.term, set_synth_point(codes.unrank(r), va)), va, F2);
      o.require(e && *e == codes.unrank(r), std::string("phi.phibar at ") + s);
    }
  }
  GenOptions opts;
  opts.algebraic = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    TypePtr a = T(kFamily[seed % 6]), b = T(kFamily[(seed / 6) % 6]);
    opts.context = {{"x", a}};
    Judgment j = make_judgment(opts.context, gen_term(seed, b, 5 + seed % 15, opts), F2);
    Factoring fz = factor_through_set(j, F2);
    o.require(is_pure(*fz.tilde.term), "tilde is not pure");
    o.require(vec_equiv(fz.reassembled, j, F2), "reassembled differs for " + print_judgment(j));
  }
  if (o.ok) o.detail = "phibar.phi = id on all vectors, phi.phibar = id on codes, 50 judgments factored";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, 1, c1}, {2, 1, c2}, {3, 2, c3}, {4, 630, c4}, {5, 60, c5},
      {6, 5, c6}, {7, 5, c7}, {8, 30, c8}, {9, 120, c9}, {10, 60, c10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit) o = {false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit)};
    failures += !o.ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
