#include "doctest.h"

#include "depcalc/dcc.hpp"
#include "depcalc/gen.hpp"
#include "depcalc/rewrite.hpp"
#include "depcalc/syntax.hpp"

using namespace depcalc;

namespace {
GradeAlgebra l2 = GradeAlgebra::l2();
GradeAlgebra nat = GradeAlgebra::naturals();

TermPtr nf(const char* src, const Context& ctx = Context()) {
  return normalize_lambda(parse_term(src, l2, ctx));
}
}  // namespace

TEST_CASE("beta") {
  Context ctx;
  ctx.push("y", t_bool());
  CHECK(alpha_equal_mod_annot(nf("(\\x:Bool. x) y", ctx), parse_term("y", l2, ctx)));
}

TEST_CASE("eta contraction for functions and pairs") {
  Context ctx;
  ctx.push("f", t_fun(t_bool(), t_bool()));
  CHECK(alpha_equal_mod_annot(nf("\\x:Bool. f x", ctx), parse_term("f", l2, ctx)));
  ctx.pop();
  ctx.push("p", t_prod(t_bool(), t_bool()));
  CHECK(alpha_equal_mod_annot(nf("(proj1 p, proj2 p)", ctx), parse_term("p", l2, ctx)));
}

TEST_CASE("case of an injection selects and applies the branch") {
  TermPtr t = nf("case inj1 unit of (\\a:Unit. false) ; (\\b:Unit. true)");
  CHECK(alpha_equal(t, mk::fls()));
}

TEST_CASE("an erased bind normalizes as a substitution") {
  Context ctx;
  ctx.push("b", t_fun(t_bool(), t_bool()));
  TermPtr whole = parse_term("bind[Secret] x = eta[Secret] true in b x", l2, ctx);
  TermPtr lhs = normalize_lambda(erase(whole));
  TermPtr rhs = normalize_lambda(parse_term("b true", l2, ctx));
  CHECK(alpha_equal_mod_annot(lhs, rhs));
}

TEST_CASE("call-by-value: bind beta and stepping under eta") {
  TermPtr v = cbv_eval(l2, parse_term("bind[Secret] x = eta[Secret] true in x", l2));
  CHECK(alpha_equal(v, mk::tru()));

  // reductions proceed underneath eta
  TermPtr v2 = cbv_eval(l2, parse_term("eta[Secret] ((\\x:Bool. x) false)", l2));
  CHECK(alpha_equal(v2, mk::eta(*l2.grade_by_name("Secret"), mk::fls())));

  TermPtr v3 = cbv_eval(l2, parse_term("(\\x:Bool. x) false", l2));
  CHECK(alpha_equal(v3, mk::fls()));
}

TEST_CASE("call-by-value steps the bound term first") {
  TermPtr t = parse_term("bind[Secret] x = eta[Secret] ((\\y:Bool. y) true) in x", l2);
  TermPtr one = cbv_step(l2, t);
  REQUIRE(one);
  CHECK(one->kind == term_kind::bind);  // the bound term stepped, bind still there
  CHECK(alpha_equal(cbv_eval(l2, t), mk::tru()));
}

TEST_CASE("subject reduction along call-by-value runs, sampled") {
  TermGen gen(l2, 909);
  Context empty;
  for (int i = 0; i < 40; i++) {
    GenItem item = gen.random_term(calculus::dcce, empty, 22);
    if (!is_closed(item.term)) continue;
    TermPtr cur = item.term;
    for (int steps = 0; steps < 50; steps++) {
      CHECK_NOTHROW(check_dcc(l2, protection_mode::extended_dcce, empty, cur, item.type));
      TermPtr next = cbv_step(l2, cur);
      if (!next) break;
      cur = next;
    }
  }
}

TEST_CASE("modal cancellations") {
  Context ctx;
  ctx.push("a", t_modal(*l2.grade_by_name("Secret"), t_bool()));
  CHECK(alpha_equal_mod_annot(modal_normalize(l2, parse_term("merge[Secret] split[Secret] a", l2, ctx)),
                              parse_term("a", l2, ctx)));
  CHECK(alpha_equal_mod_annot(modal_normalize(l2, parse_term("split[Secret] merge[Secret] a", l2, ctx)),
                              parse_term("a", l2, ctx)));
  CHECK(alpha_equal_mod_annot(modal_normalize(l2, parse_term("up[Secret,Secret] a", l2, ctx)),
                              parse_term("a", l2, ctx)));
  Context ctx2;
  ctx2.push("a", t_modal(*l2.grade_by_name("Public"), t_bool()));
  CHECK(alpha_equal_mod_annot(
      modal_normalize(l2, parse_term("up[Secret,Secret] up[Public,Secret] a", l2, ctx2)),
      parse_term("up[Public,Secret] a", l2, ctx2)));
  CHECK(alpha_equal_mod_annot(modal_normalize(l2, parse_term("extr ret a", l2, ctx2)),
                              parse_term("a", l2, ctx2)));
  CHECK(alpha_equal_mod_annot(
      modal_normalize(l2, parse_term("join[Secret,Secret] fork[Secret,Secret] a", l2, ctx)),
      parse_term("a", l2, ctx)));
}

TEST_CASE("every applied rewrite erases to a beta-eta identity") {
  for (auto algname : {"l2", "diamond"}) {
    GradeAlgebra alg = GradeAlgebra::builtin(algname);
    TermGen gen(alg, 640);
    Context ctx;
    ctx.push("a", t_modal(alg.bottom(), t_bool()));
    for (int i = 0; i < 50; i++) {
      GenItem item = gen.random_term(calculus::gmcc, ctx, 25);
      std::vector<RewriteStep> steps;
      modal_normalize_traced(alg, item.term, steps);
      for (const auto& step : steps) {
        TermPtr before = normalize_lambda(erase(step.before));
        TermPtr after = normalize_lambda(erase(step.after));
        CHECK_MESSAGE(alpha_equal_mod_annot(before, after), "rule ", step.rule,
                      " is not erasure-sound");
      }
    }
  }
}

TEST_CASE("equality verdicts distinguish the modal theory from erasure") {
  Grade sec = *l2.grade_by_name("Secret");
  Context ctx;
  ctx.push("a", t_bool());

  // eta[l] a vs a: equal only after erasure
  EqualityResult r1 =
      decide_equal(l2, calculus::dcce, parse_term("eta[Secret] a", l2, ctx),
                   parse_term("a", l2, ctx));
  CHECK(r1.verdict == equality_verdict::equal_up_to_erasure);

  // up[bot,l](ret a) vs a in the union calculus: likewise not provably equal
  EqualityResult r2 =
      decide_equal(l2, calculus::gmcc, parse_term("up[Public,Secret] ret a", l2, ctx),
                   parse_term("a", l2, ctx));
  CHECK(r2.verdict == equality_verdict::equal_up_to_erasure);

  // split/merge cancellation is a full equality
  Context ctx2;
  ctx2.push("a", t_modal(sec, t_bool()));
  EqualityResult r3 =
      decide_equal(l2, calculus::gmcce, parse_term("split[Secret] merge[Secret] a", l2, ctx2),
                   parse_term("a", l2, ctx2));
  CHECK(r3.verdict == equality_verdict::equal_full);

  // plainly different booleans
  EqualityResult r4 = decide_equal(l2, calculus::dcce, mk::tru(), mk::fls());
  CHECK(r4.verdict == equality_verdict::not_equal);
}

TEST_CASE("full equality implies erasure equality on generated pairs") {
  TermGen gen(l2, 321);
  Context ctx;
  ctx.push("a", t_modal(l2.bottom(), t_bool()));
  for (int i = 0; i < 60; i++) {
    GenItem item = gen.random_term(calculus::gmcc, ctx, 25);
    TermPtr n = modal_normalize(l2, item.term);
    EqualityResult r = decide_equal(l2, calculus::gmcc, item.term, n);
    CHECK(r.verdict == equality_verdict::equal_full);
    TermPtr e1 = normalize_lambda(erase(item.term));
    TermPtr e2 = normalize_lambda(erase(n));
    CHECK(alpha_equal_mod_annot(e1, e2));
  }
}

TEST_CASE("fuel exhaustion is reported, not looped") {
  // omega is untypeable; the normalizer must give up by fuel
  TermPtr omega = mk::app(mk::lam("x", std::nullopt, mk::app(mk::var(0), mk::var(0))),
                          mk::lam("x", std::nullopt, mk::app(mk::var(0), mk::var(0))));
  try {
    normalize_lambda(omega, 1000);
    FAIL("expected FuelExhausted");
  } catch (const error& e) {
    CHECK(e.code() == errc::fuel_exhausted);
  }
  EqualityResult r = decide_equal(nat, calculus::gmcc, omega, omega, nullptr, std::nullopt, 500);
  CHECK(r.verdict == equality_verdict::undecided);
}

TEST_CASE("corpus terms normalize within the default budget") {
  TermGen gen(l2, 2718);
  Context ctx;
  ctx.push("a", t_modal(l2.bottom(), t_bool()));
  for (int i = 0; i < 100; i++) {
    GenItem item = gen.random_term(calculus::gmcc, ctx, 30);
    CHECK_NOTHROW(modal_normalize(l2, item.term));
  }
}
