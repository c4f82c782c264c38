#include <doctest.h>

#include <algorithm>
#include <random>

#include "flam/error.hpp"
#include "flam/generate.hpp"
#include "flam/reduce.hpp"
#include "flam/set_model.hpp"
#include "flam/syntax.hpp"
#include "flam/vec_model.hpp"

using namespace flam;

namespace {

const Field F2(2), F3(3);

TermPtr P(const char* s, const Field& f = F3) { return parse_term(s, f); }

}  // namespace

TEST_CASE("values") {
  CHECK(is_value(P("\\(x:Bool). x")));
  CHECK_FALSE(is_value(P("fst <tt, ff>")));
  CHECK(is_value(P("tt + ff")));
  CHECK(is_value(P("2.(tt + ff)")));
  CHECK(is_value(P("0 : Bool")));
  CHECK(is_value(P("<fst <tt, tt>, ff>")));
  CHECK_FALSE(is_value(P("tt + fst <tt, tt>")));
}

TEST_CASE("single steps") {
  auto step = [](const char* s) { return step_cbn(P(s), F3); };
  CHECK(term_equal(step("fst <tt, ff>")->term, tt()));
  CHECK(term_equal(step("snd <tt, ff>")->term, ff()));
  CHECK(term_equal(step("if tt then * else 0 : 1")->term, star()));
  CHECK(term_equal(step("if ff then * else 0 : 1")->term, zero(Type::unit())));
  CHECK(term_equal(step("let * = * in tt")->term, tt()));
  auto d = step("((\\(x:1). tt) + (\\(x:1). ff)) *");
  CHECK(d->rule == "app-sum");
  CHECK(term_equal(d->term, P("(\\(x:1). tt) * + (\\(x:1). ff) *")));
  CHECK(step("if 2.tt then ff else tt")->rule == "if-scale");
  CHECK(step("fst (0 : Bool * 1)")->rule == "fst-zero");
  CHECK(term_equal(step("let * = 0 : 1 in tt")->term, zero(Type::boolean())));
  CHECK(term_equal(step("0 : Bool * 1")->term, P("<0 : Bool, 0 : 1>")));
  CHECK_FALSE(step("tt"));
  CHECK_FALSE(step("\\(x:Bool). fst <x, x>"));
  CHECK_FALSE(step("tt + ff"));
}

TEST_CASE("pairs factor and sums reach canonical form") {
  auto step = [](const char* s) { return step_cbn(P(s), F3); };
  CHECK(term_equal(step("<tt, *> + <ff, *>")->term, P("<tt + ff, * + *>")));
  CHECK(term_equal(step("2.<tt, *>")->term, P("<2.tt, 2.*>")));
  CHECK(step("ff + tt")->rule == "ac-canonical");
  CHECK(term_equal(step("ff + tt")->term, P("tt + ff")));
  // Pairs are lazy: components are not reduced further.
  CHECK(term_equal(normalize(P("<tt, *> + <ff, *>"), F3), P("<tt + ff, * + *>")));
}

TEST_CASE("canonical forms") {
  CHECK(term_equal(algebraic_canonical(P("tt + tt", F2), F2), zero(Type::boolean())));
  CHECK(term_equal(algebraic_canonical(P("2.(tt + ff)"), F3), P("2.tt + 2.ff")));
  CHECK(term_equal(algebraic_canonical(P("(tt + ff) + tt"), F3), P("2.tt + ff")));
  CHECK(term_equal(algebraic_canonical(P("0 : Bool + 0.ff"), F3), zero(Type::boolean())));
}

TEST_CASE("canonical form is idempotent and ignores operand order") {
  GenOptions opts;
  opts.algebraic = true;
  opts.field = 3;
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    TypePtr a = gen_type(seed, 1);
    std::vector<TermPtr> parts;
    for (int i = 0; i < 4; ++i) parts.push_back(gen_term(seed * 4 + i, a, 6, opts));
    auto build = [&](const std::vector<TermPtr>& xs) {
      TermPtr t = xs[0];
      for (std::size_t i = 1; i < xs.size(); ++i) t = sum(t, xs[i]);
      return t;
    };
    TermPtr c = algebraic_canonical(build(parts), F3);
    CHECK(term_equal(algebraic_canonical(c, F3), c));
    std::shuffle(parts.begin(), parts.end(), rng);
    CHECK(term_equal(algebraic_canonical(build(parts), F3), c));
  }
}

TEST_CASE("normalization examples") {
  CHECK(term_equal(normalize(P("(\\(x:Bool). x) tt"), F3), tt()));
  CHECK(term_equal(normalize(P("(\\(x:Bool). <x, x>) (tt + ff)"), F2), P("<tt + ff, tt + ff>", F2)));
  TermPtr two = church_numeral(2, Type::unit());
  std::vector<std::string> rules;
  TermPtr v = normalize(app_n(two, {P("\\(x:1). x"), star()}), F2, {}, [&](const Step& s) { rules.push_back(s.rule); });
  CHECK(term_equal(v, star()));
  CHECK(std::count(rules.begin(), rules.end(), "beta") == 4);
  CHECK_THROWS_AS(normalize(P("fst <tt, ff>"), F3, 0), InternalError);
}

TEST_CASE("unit values classify") {
  CHECK(ac_normal_form_unit(zero(Type::unit()), F3).cls == UnitClass::Zero);
  CHECK(ac_normal_form_unit(star(), F3).cls == UnitClass::Star);
  UnitForm s = ac_normal_form_unit(P("2.*"), F3);
  CHECK(s.cls == UnitClass::Scaled);
  CHECK(s.alpha == 2);
  CHECK(ac_normal_form_unit(P("* + *", F2), F2).cls == UnitClass::Zero);
  CHECK(ac_normal_form_unit(P("2.* + 2.*"), F3).cls == UnitClass::Star);
  CHECK_THROWS_AS(ac_normal_form_unit(tt(), F3), TypeError);
}

// Subject reduction, progress and denotation invariance on random terms.
TEST_CASE("reduction preserves types and denotations") {
  for (bool algebraic : {false, true}) {
    for (std::uint32_t p : {2u, 3u}) {
      Field field(p);
      for (std::uint64_t seed = 0; seed < 120; ++seed) {
        TypePtr a = gen_type(seed + 1000, 2);
        try {
          if (VecSpace(a, field).dim() > 256) continue;
        } catch (const GuardError&) {
          continue;
        }
        TermPtr t = gen_term(seed, a, 4 + seed % 20, algebraic, p);
        SemVec v = vec_denote_closed(t, field);
        std::optional<std::uint64_t> s;
        if (!algebraic) s = set_denote_closed(t);
        std::size_t fuel = default_fuel(t);
        TermPtr cur = t;
        for (;;) {
          auto st = step_cbn(cur, field);
          if (!st) break;
          REQUIRE(fuel-- > 0);
          cur = st->term;
          REQUIRE(type_equal(typecheck({}, cur, field), a));
          REQUIRE_MESSAGE(vec_denote_closed(cur, field) == v, st->rule);
          if (s) REQUIRE(set_denote_closed(cur) == *s);
        }
        CHECK(is_value(cur));
      }
    }
  }
}
