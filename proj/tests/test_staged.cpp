#include "doctest.h"

#include "depcalc/gen.hpp"
#include "depcalc/staged.hpp"
#include "depcalc/syntax.hpp"

using namespace depcalc;

namespace {
GradeAlgebra nat = GradeAlgebra::naturals();
GradeAlgebra l2 = GradeAlgebra::l2();
Grade n0() { return Grade{0}; }
Grade n1() { return Grade{1}; }
}  // namespace

TEST_CASE("next moves a value one stage earlier under the circle") {
  Context ctx;
  ctx.push("x", n1(), t_base("A"));
  TypePtr ty = infer_lcirc(ctx, parse_term("next x", nat, ctx), n0());
  CHECK(type_equal(ty, t_modal(n1(), t_base("A"))));
}

TEST_CASE("prev eliminates the circle one stage later") {
  Context ctx;
  ctx.push("x", n0(), t_modal(n1(), t_base("A")));
  TypePtr ty = infer_lcirc(ctx, parse_term("prev x", nat, ctx), n1());
  CHECK(type_equal(ty, t_base("A")));
}

TEST_CASE("the identity at stage zero over a circle type") {
  TypePtr circ = t_modal(n1(), t_base("A"));
  TypePtr ty = infer_lcirc(Context(), parse_term("\\x:O A. x", nat), n0());
  CHECK(type_equal(ty, t_fun(circ, circ)));
}

TEST_CASE("variables are usable only at their own time") {
  Context ctx;
  ctx.push("x", n1(), t_base("A"));
  try {
    infer_lcirc(ctx, parse_term("x", nat, ctx), n0());
    FAIL("expected TimeMismatch");
  } catch (const error& e) {
    CHECK(e.code() == errc::time_mismatch);
  }
  try {
    infer_lcirc(Context(), parse_term("prev next unit", nat), n0());
    FAIL("prev is unavailable at time 0");
  } catch (const error& e) {
    CHECK(e.code() == errc::time_mismatch);
  }
}

TEST_CASE("prev next and next prev round-trips check at the source judgement") {
  Context ctx;
  ctx.push("a", n1(), t_bool());
  TypePtr direct = infer_lcirc(ctx, parse_term("a", nat, ctx), n1());
  TypePtr around = infer_lcirc(ctx, parse_term("prev (next a)", nat, ctx), n1());
  CHECK(type_equal(direct, around));

  Context ctx2;
  ctx2.push("b", n0(), t_modal(n1(), t_bool()));
  TypePtr direct2 = infer_lcirc(ctx2, parse_term("b", nat, ctx2), n0());
  TypePtr around2 = infer_lcirc(ctx2, parse_term("next (prev b)", nat, ctx2), n0());
  CHECK(type_equal(direct2, around2));
}

TEST_CASE("time-translation invariance: shifting every time by k preserves judgements") {
  TermGen gen(nat, 2025);
  Context ctx;
  ctx.push("x", n0(), t_bool());
  ctx.push("y", n1(), t_fun(t_bool(), t_bool()));
  for (int i = 0; i < 60; i++) {
    GenItem item = gen.random_term(calculus::lcirc, ctx, 20);
    REQUIRE(item.grade.has_value());
    for (std::uint32_t k : {1u, 3u}) {
      Context shifted;
      for (const auto& e : ctx.entries()) shifted.push(e.name, Grade{e.grade->v + k}, e.type);
      CHECK_NOTHROW(check_lcirc(shifted, item.term, Grade{item.grade->v + k}, item.type));
    }
  }
}

TEST_CASE("lambdas must carry annotations in the staging calculus") {
  try {
    infer_lcirc(Context(), parse_term("\\x. x", nat), n0());
    FAIL("expected MissingAnnotation");
  } catch (const error& e) {
    CHECK(e.code() == errc::missing_annotation);
  }
}

TEST_CASE("only circle-graded modal types exist in the staging calculus") {
  Context ctx;
  ctx.push("x", n0(), t_modal(Grade{2}, t_bool()));
  CHECK_THROWS_AS(infer_lcirc(ctx, parse_term("x", nat, ctx), n0()), error);
}

// ---------------------------------------------------------------------------
// Graded judgements.
// ---------------------------------------------------------------------------

TEST_CASE("merge lowers a modal layer into the judgement grade") {
  Grade pub = *l2.grade_by_name("Public");
  Grade sec = *l2.grade_by_name("Secret");
  Context ctx;
  ctx.push("x", pub, t_modal(sec, t_base("A")));
  TypePtr ty = infer_gmcce(l2, ctx, parse_term("merge[Secret] x", l2, ctx),
                           l2.op(pub, sec));
  CHECK(type_equal(ty, t_base("A")));
}

TEST_CASE("the function-space witness of the isomorphism proposition") {
  Grade sec = *l2.grade_by_name("Secret");
  TermPtr f3 = parse_term("\\x. \\z. split[Secret] ((merge[Secret] x) (merge[Secret] z))", l2);
  TypePtr ty = t_fun(t_modal(sec, t_fun(t_base("A"), t_base("B"))),
                     t_fun(t_modal(sec, t_base("A")), t_modal(sec, t_base("B"))));
  for (Grade m : l2.elements()) CHECK_NOTHROW(check_gmcce(l2, Context(), f3, m, ty));
}

TEST_CASE("leaf subsumption relaxes variable grades") {
  Grade pub = *l2.grade_by_name("Public");
  Grade sec = *l2.grade_by_name("Secret");
  Context ctx;
  ctx.push("x", pub, t_base("A"));
  TypePtr ty = infer_gmcce(l2, ctx, parse_term("x", l2, ctx), sec);
  CHECK(type_equal(ty, t_base("A")));
  Context ctx2;
  ctx2.push("x", sec, t_base("A"));
  try {
    infer_gmcce(l2, ctx2, parse_term("x", l2, ctx2), pub);
    FAIL("a secret variable is not observable publicly");
  } catch (const error& e) {
    CHECK(e.code() == errc::grade_not_leq);
  }
}

TEST_CASE("the explicit coercion re-checks at the lower grade") {
  Grade pub = *l2.grade_by_name("Public");
  Grade sec = *l2.grade_by_name("Secret");
  Context ctx;
  ctx.push("x", pub, t_modal(sec, t_base("A")));
  // split[Secret] x at Public requires x at Public*Secret = Secret: fine by
  // subsumption; the coercion then relaxes the judgement grade
  TermPtr t = parse_term("up[Public,Secret] split[Secret] merge[Secret] x", l2, ctx);
  TypePtr ty = infer_gmcce(l2, ctx, t, sec);
  CHECK(type_equal(ty, t_modal(sec, t_base("A"))));
}

TEST_CASE("merge factors uniquely over the naturals") {
  Context ctx;
  ctx.push("x", Grade{0}, t_modal(Grade{1}, t_bool()));
  TypePtr ty = infer_gmcce(nat, ctx, parse_term("merge[1] x", nat, ctx), Grade{1});
  CHECK(type_equal(ty, t_bool()));
  // no factor exists below the annotation
  CHECK_THROWS_AS(infer_gmcce(nat, ctx, parse_term("merge[2] x", nat, ctx), Grade{1}), error);
}

TEST_CASE("generated graded terms re-check at their judgement") {
  for (auto algname : {"l2", "diamond"}) {
    GradeAlgebra alg = GradeAlgebra::builtin(algname);
    TermGen gen(alg, 555);
    Context ctx;
    ctx.push("x", alg.bottom(), t_bool());
    for (int i = 0; i < 80; i++) {
      GenItem item = gen.random_term(calculus::gmcce, ctx, 25);
      REQUIRE(item.grade.has_value());
      CHECK_NOTHROW(check_gmcce(alg, ctx, item.term, *item.grade, item.type));
    }
  }
}
