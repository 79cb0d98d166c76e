#include "doctest.h"

#include "depcalc/gen.hpp"
#include "depcalc/rewrite.hpp"
#include "depcalc/staged.hpp"
#include "depcalc/syntax.hpp"
#include "depcalc/translate.hpp"

using namespace depcalc;

namespace {
GradeAlgebra l2 = GradeAlgebra::l2();
GradeAlgebra nat = GradeAlgebra::naturals();
Grade pub() { return *l2.grade_by_name("Public"); }
Grade sec() { return *l2.grade_by_name("Secret"); }
}  // namespace

TEST_CASE("the monadic unit maps to eta at bottom") {
  Context ctx;
  ctx.push("a", t_bool());
  TermPtr out = overline(l2, ctx, parse_term("ret a", l2, ctx));
  CHECK(alpha_equal_mod_annot(out, parse_term("eta[Public] a", l2, ctx)));
}

TEST_CASE("the counit maps to a bind at bottom") {
  Context ctx;
  ctx.push("a", t_modal(pub(), t_bool()));
  TermPtr out = overline(l2, ctx, parse_term("extr a", l2, ctx));
  CHECK(alpha_equal_mod_annot(out, parse_term("bind[Public] x = a in x", l2, ctx)));
}

TEST_CASE("fork maps to a bind at the join with nested etas") {
  Context ctx;
  ctx.push("a", t_modal(sec(), t_bool()));
  TermPtr out = overline(l2, ctx, parse_term("fork[Public,Secret] a", l2, ctx));
  CHECK(alpha_equal_mod_annot(
      out, parse_term("bind[Secret] x = a in eta[Public] eta[Secret] x", l2, ctx)));
}

TEST_CASE("eta maps back to a coerced unit") {
  Context ctx;
  ctx.push("a", t_bool());
  TermPtr out = underline(l2, ctx, parse_term("eta[Secret] a", l2, ctx));
  CHECK(alpha_equal_mod_annot(out, parse_term("up[Public,Secret] ret a", l2, ctx)));
}

TEST_CASE("a bind at bottom becomes extraction composed with a lift") {
  Context ctx;
  ctx.push("a", t_modal(pub(), t_base("A")));
  TermPtr out = underline(l2, ctx, parse_term("bind[Public] x = a in x", l2, ctx));
  TermPtr expected =
      parse_term("(\\x. extr x) ((lift[Public] (\\x. x)) a)", l2, ctx);
  CHECK(alpha_equal_mod_annot(out, expected));
}

TEST_CASE("tilde clauses") {
  Context ctx;
  ctx.push("a", t_bool());
  CHECK(alpha_equal_mod_annot(tilde(l2, ctx, parse_term("ret a", l2, ctx)),
                              parse_term("split[Public] a", l2, ctx)));
  ctx.pop();
  ctx.push("a", t_modal(pub(), t_base("A")));
  CHECK(alpha_equal_mod_annot(tilde(l2, ctx, parse_term("up[Public,Secret] a", l2, ctx)),
                              parse_term("split[Secret] merge[Public] a", l2, ctx)));
  ctx.pop();
  ctx.push("a", t_modal(sec(), t_base("A")));
  CHECK(alpha_equal_mod_annot(
      tilde(l2, ctx, parse_term("fork[Public,Secret] a", l2, ctx)),
      parse_term("split[Public] split[Secret] merge[Secret] a", l2, ctx)));
}

TEST_CASE("hat clauses and a staged identity") {
  Context ctx;
  ctx.push("a", Grade{1}, t_base("A"));
  CHECK(alpha_equal_mod_annot(hat(ctx, parse_term("next a", nat, ctx), Grade{0}),
                              parse_term("split[1] a", nat, ctx)));
  Context ctx2;
  ctx2.push("b", Grade{0}, t_modal(Grade{1}, t_base("A")));
  CHECK(alpha_equal_mod_annot(hat(ctx2, parse_term("prev b", nat, ctx2), Grade{1}),
                              parse_term("merge[1] b", nat, ctx2)));

  TermPtr id_circ = parse_term("\\x:O A. x", nat);
  TermPtr out = hat(Context(), id_circ, Grade{0});
  TypePtr circ = t_modal(Grade{1}, t_base("A"));
  CHECK_NOTHROW(check_gmcce(nat, Context(), out, Grade{0}, t_fun(circ, circ)));
}

TEST_CASE("ill-typed sources are rejected before translation") {
  Context ctx;
  ctx.push("a", t_bool());
  CHECK_THROWS_AS(overline(l2, ctx, parse_term("extr a", l2, ctx)), error);
  CHECK_THROWS_AS(underline(l2, ctx, parse_term("bind[Secret] x = a in x", l2, ctx)), error);
}

TEST_CASE("type preservation on generated terms, all four translations") {
  for (auto algname : {"l2", "diamond"}) {
    GradeAlgebra alg = GradeAlgebra::builtin(algname);
    TermGen gen(alg, 10101);
    Context ctx;
    ctx.push("m", t_modal(alg.bottom(), t_bool()));

    for (int i = 0; i < 50; i++) {
      GenItem item = gen.random_term(calculus::gmcc, ctx, 25);
      TermPtr over = overline(alg, ctx, item.term);
      CHECK_NOTHROW(check_dcc(alg, protection_mode::extended_dcce, ctx, over, item.type));
      TermPtr til = tilde(alg, ctx, item.term);
      CHECK_NOTHROW(
          check_gmcce(alg, grade_context(ctx, alg.bottom()), til, alg.bottom(), item.type));
    }
    for (int i = 0; i < 50; i++) {
      GenItem item = gen.random_term(calculus::dcce, ctx, 25);
      TermPtr under = underline(alg, ctx, item.term);
      CHECK_NOTHROW(check_core(alg, calculus::gmcc, ctx, under, item.type));
    }
  }
  TermGen lgen(nat, 20202);
  Context lctx;
  lctx.push("x", Grade{1}, t_bool());
  for (int i = 0; i < 50; i++) {
    GenItem item = lgen.random_term(calculus::lcirc, lctx, 20);
    REQUIRE(item.grade.has_value());
    TermPtr out = hat(lctx, item.term, *item.grade);
    CHECK_NOTHROW(check_gmcce(nat, lctx, out, *item.grade, item.type));
  }
}

TEST_CASE("translations preserve meaning at the erasure level") {
  TermGen gen(l2, 777);
  Context ctx;
  ctx.push("m", t_modal(l2.bottom(), t_bool()));
  for (int i = 0; i < 40; i++) {
    GenItem item = gen.random_term(calculus::gmcc, ctx, 25);
    TermPtr over = overline(l2, ctx, item.term);
    CHECK(alpha_equal_mod_annot(normalize_lambda(erase(over)),
                                normalize_lambda(erase(item.term))));
    TermPtr back = underline(l2, ctx, over);
    CHECK(alpha_equal_mod_annot(normalize_lambda(erase(back)),
                                normalize_lambda(erase(item.term))));
  }
}
