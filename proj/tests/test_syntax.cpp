#include "doctest.h"

#include "depcalc/gen.hpp"
#include "depcalc/syntax.hpp"

using namespace depcalc;

namespace {
GradeAlgebra l2 = GradeAlgebra::l2();
Grade pub() { return *l2.grade_by_name("Public"); }
Grade sec() { return *l2.grade_by_name("Secret"); }
}  // namespace

TEST_CASE("parsing the identity lambda") {
  TermPtr t = parse_term("\\x:Unit. x", l2);
  CHECK(t->kind == term_kind::lam);
  REQUIRE(t->annot.has_value());
  CHECK((*t->annot)->kind == type_kind::unit);
  CHECK(t->a->kind == term_kind::var);
  CHECK(t->a->index == 0);
}

TEST_CASE("parsing bind against a declared context variable") {
  Context ctx;
  ctx.push("x", t_modal(sec(), t_bool()));
  TermPtr t = parse_term("bind[Secret] y = x in y", l2, ctx);
  CHECK(t->kind == term_kind::bind);
  CHECK(t->g1 == sec());
  CHECK(t->a->kind == term_kind::var);
  CHECK(t->a->index == 0);  // x
  CHECK(t->b->kind == term_kind::var);
  CHECK(t->b->index == 0);  // y, under the binder
}

TEST_CASE("parsing the graded constructors") {
  Context ctx;
  ctx.push("x", t_modal(pub(), t_modal(sec(), t_unit())));
  TermPtr t = parse_term("join[Public,Secret] x", l2, ctx);
  CHECK(t->kind == term_kind::join);
  CHECK(t->g1 == pub());
  CHECK(t->g2 == sec());

  TermPtr s = parse_term("split[Secret] unit", l2);
  CHECK(s->kind == term_kind::split);
  CHECK(s->a->kind == term_kind::unit);
}

TEST_CASE("unknown grades and unbound variables are rejected with positions") {
  CHECK_THROWS_AS(parse_term("eta[TopSecret] unit", l2), error);
  try {
    parse_term("eta[TopSecret] unit", l2);
  } catch (const error& e) {
    CHECK(e.code() == errc::unknown_grade);
  }
  try {
    parse_term("\\x:Unit. y", l2);
  } catch (const error& e) {
    CHECK(e.code() == errc::unbound_variable);
  }
}

TEST_CASE("alpha equality ignores names but not structure or grades") {
  CHECK(alpha_equal(parse_term("\\x:Unit. x", l2), parse_term("\\y:Unit. y", l2)));
  CHECK_FALSE(alpha_equal(parse_term("\\x:Unit. \\y:Unit. x", l2),
                          parse_term("\\x:Unit. \\y:Unit. y", l2)));
  CHECK_FALSE(alpha_equal(parse_term("eta[Public] unit", l2),
                          parse_term("eta[Secret] unit", l2)));
}

TEST_CASE("print then parse is the identity, on hand-picked terms") {
  const char* sources[] = {
      "\\x:S[Secret] Bool. bind[Secret] y = x in eta[Secret] y",
      "fork[Public,Secret] up[Public,Secret] ret unit",
      "case inj1 unit of (\\a:Unit. true) ; (\\b:Unit. false)",
      "(\\f:Bool -> Bool. f true) (\\b:Bool. case b of (\\a:Unit. false) ; (\\a:Unit. true))",
      "split[Secret] merge[Secret] (proj1 (unit, unit), unit)",
  };
  for (const char* src : sources) {
    TermPtr t = parse_term(src, l2);
    TermPtr again = parse_term(print_term(t, l2), l2);
    CHECK(alpha_equal(t, again));
  }
}

TEST_CASE("print then parse is the identity, property-tested over generated terms") {
  for (auto algname : {"l2", "diamond"}) {
    GradeAlgebra alg = GradeAlgebra::builtin(algname);
    TermGen gen(alg, 99);
    Context ctx;
    ctx.push("u", t_modal(alg.bottom(), t_bool()));
    ctx.push("v", t_fun(t_bool(), t_bool()));
    for (calculus c : {calculus::gmcc, calculus::dcce}) {
      for (int i = 0; i < 60; i++) {
        GenItem item = gen.random_term(c, ctx, 25);
        std::string printed = print_term(item.term, alg, ctx);
        TermPtr again = parse_term(printed, alg, ctx);
        CHECK_MESSAGE(alpha_equal(item.term, again), "failed on: ", printed);
      }
    }
  }
  GradeAlgebra nat = GradeAlgebra::naturals();
  TermGen gen(nat, 7);
  Context empty;
  for (int i = 0; i < 60; i++) {
    GenItem item = gen.random_term(calculus::lcirc, empty, 20);
    TermPtr again = parse_term(print_term(item.term, nat), nat);
    CHECK(alpha_equal(item.term, again));
  }
  GradeAlgebra dia = GradeAlgebra::diamond();
  TermGen dgen(dia, 8);
  Context gctx;
  gctx.push("s", dia.bottom(), t_modal(*dia.grade_by_name("l3"), t_bool()));
  for (int i = 0; i < 60; i++) {
    GenItem item = dgen.random_term(calculus::gmcce, gctx, 20);
    TermPtr again = parse_term(print_term(item.term, dia, gctx), dia, gctx);
    CHECK(alpha_equal(item.term, again));
  }
}

TEST_CASE("round trip survives the function-space isomorphism witness") {
  TermPtr f3 = parse_term("\\x. \\z. split[Secret] ((merge[Secret] x) (merge[Secret] z))", l2);
  TermPtr again = parse_term(print_term(f3, l2), l2);
  CHECK(alpha_equal(f3, again));
}

TEST_CASE("erasure drops modal constructors") {
  Context ctx;
  ctx.push("a", t_bool());
  TermPtr t = parse_term("eta[Secret] a", l2, ctx);
  CHECK(alpha_equal(erase(t), parse_term("a", l2, ctx)));

  ctx.pop();
  ctx.push("a", t_modal(pub(), t_modal(sec(), t_bool())));
  TermPtr j = parse_term("join[Public,Secret] a", l2, ctx);
  CHECK(alpha_equal(erase(j), parse_term("a", l2, ctx)));
}

TEST_CASE("erasing a bind substitutes the erased bound term") {
  Context ctx;
  ctx.push("x", t_modal(sec(), t_bool()));
  TermPtr t = parse_term("bind[Secret] y = x in (y, y)", l2, ctx);
  TermPtr expected = parse_term("(x, x)", l2, ctx);
  CHECK(alpha_equal(erase(t), expected));
}

TEST_CASE("erasure is idempotent and commutes with substitution") {
  GradeAlgebra alg = GradeAlgebra::l2();
  TermGen gen(alg, 1234);
  Context ctx;
  ctx.push("w", t_bool());
  for (int i = 0; i < 80; i++) {
    GenItem item = gen.random_term(calculus::dcce, ctx, 25);
    TermPtr e = erase(item.term);
    CHECK(is_erased_fragment(e));
    CHECK(alpha_equal(erase(e), e));

    GenItem arg = gen.random_term(calculus::dcce, Context(), 10);
    TermPtr lhs = erase(subst(item.term, 0, arg.term));
    TermPtr rhs = subst(erase(item.term), 0, erase(arg.term));
    CHECK(alpha_equal(lhs, rhs));
  }
}

TEST_CASE("term files declare contexts") {
  TermFile f = parse_term_file(
      "-- a graded declaration and a plain one\n"
      "var x :^1 Bool ;\n"
      "var f : Bool -> Bool ;\n"
      "next (f x)",
      GradeAlgebra::naturals());
  CHECK(f.ctx.size() == 2);
  CHECK(f.ctx.lookup(1)->grade.has_value());
  CHECK(f.term->kind == term_kind::next);
}
