#include "doctest.h"

#include "depcalc/gen.hpp"
#include "depcalc/oracle.hpp"
#include "depcalc/staged.hpp"

using namespace depcalc;

namespace {
GradeAlgebra l2 = GradeAlgebra::l2();
GradeAlgebra dia = GradeAlgebra::diamond();
Grade pub() { return *l2.grade_by_name("Public"); }
Grade sec() { return *l2.grade_by_name("Secret"); }
}  // namespace

TEST_CASE("the minimum rule is found at depth one") {
  CHECK(protection_search(l2, protection_mode::extended_dcce, pub(), t_bool(), 1));
}

TEST_CASE("no derivation protects Bool at Secret, even at depth eight") {
  CHECK_FALSE(protection_search(l2, protection_mode::extended_dcce, sec(), t_bool(), 8));
  CHECK_FALSE(protection_search(l2, protection_mode::plain_dcc, sec(), t_bool(), 8));
}

TEST_CASE("search agrees with the optimized procedure on small instances") {
  for (const GradeAlgebra& alg : {l2, dia}) {
    auto types = enumerate_types(alg, 3);
    for (const TypePtr& a : types)
      for (Grade l : alg.elements()) {
        for (protection_mode mode :
             {protection_mode::plain_dcc, protection_mode::extended_dcce}) {
          bool fast = protected_at(alg, mode, l, a);
          bool slow = protection_search(alg, mode, l, a, 8);
          CHECK_MESSAGE(fast == slow, "disagreement in mode ", (int)mode);
        }
      }
  }
}

TEST_CASE("the typing oracle confirms the unit of ret") {
  auto types = typing_search(l2, calculus::gmc, Context(), mk::ret(mk::unit()), 6);
  REQUIRE(types.size() == 1);
  CHECK(type_equal(types[0], t_modal(l2.unit(), t_unit())));
}

TEST_CASE("ill-typed terms derive nothing") {
  Context ctx;
  ctx.push("a", t_bool());
  auto types = typing_search(l2, calculus::gmc, ctx, mk::extr(mk::var(0)), 6);
  CHECK(types.empty());
}

TEST_CASE("the graded oracle derives a coerced variable at every higher grade") {
  Context ctx;
  ctx.push("x", *dia.grade_by_name("l11"), t_unit());
  auto judgements = typing_search_gmcce(dia, ctx, mk::var(0), 6);
  // subsumption: all grades above l11
  std::size_t expected = 0;
  for (Grade g : dia.elements())
    if (dia.leq(*dia.grade_by_name("l11"), g)) expected++;
  CHECK(judgements.size() == expected);
}

TEST_CASE("the declarative up rule covers the explicit coercion term") {
  Context ctx;
  ctx.push("x", *dia.grade_by_name("l11"), t_unit());
  TermPtr t = mk::up(*dia.grade_by_name("l11"), *dia.grade_by_name("l21"), mk::var(0));
  auto judgements = typing_search_gmcce(dia, ctx, t, 6);
  bool found = false;
  for (auto& [g, ty] : judgements)
    if (g == *dia.grade_by_name("l21") && type_equal(ty, t_unit())) found = true;
  CHECK(found);
}

TEST_CASE("the algorithmic graded checker agrees with the oracle on generated terms") {
  TermGen gen(l2, 4004);
  Context ctx;
  ctx.push("x", l2.bottom(), t_bool());
  for (int i = 0; i < 40; i++) {
    GenItem item = gen.random_term(calculus::gmcce, ctx, 14);
    if (term_size(item.term) > 8) continue;  // keep the search tractable
    auto judgements = typing_search_gmcce(l2, ctx, item.term, 8);
    bool found = false;
    for (auto& [g, ty] : judgements)
      if (g == *item.grade && type_equal(ty, item.type)) found = true;
    CHECK_MESSAGE(found, "oracle missed a judgement the checker accepts");
  }
}

TEST_CASE("type enumeration counts match the closed formula") {
  // depth <= 3 over leaves {Unit}: 1 + 4 + 56 for the two-point lattice
  CHECK(enumerate_types(l2, 1).size() == 1);
  CHECK(enumerate_types(l2, 2).size() == 5);
  CHECK(enumerate_types(l2, 3).size() == 61);
}
