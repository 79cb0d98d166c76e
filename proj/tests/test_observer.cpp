#include "doctest.h"

#include "depcalc/gen.hpp"
#include "depcalc/observer.hpp"
#include "depcalc/rewrite.hpp"
#include "depcalc/syntax.hpp"

using namespace depcalc;

namespace {
GradeAlgebra l2 = GradeAlgebra::l2();
Grade pub() { return *l2.grade_by_name("Public"); }
Grade sec() { return *l2.grade_by_name("Secret"); }
}  // namespace

TEST_CASE("a public observer sees a blank behind a secret eta") {
  OValuePtr v = interpret_dcce(l2, pub(), Context(), {}, parse_term("eta[Secret] true", l2));
  CHECK(v->kind == ovalue_kind::blank);
}

TEST_CASE("a secret observer sees through a secret eta") {
  OValuePtr v = interpret_dcce(l2, sec(), Context(), {}, parse_term("eta[Secret] true", l2));
  CHECK(ovalue_equal(v, ov_inj(1, ov_unit())));
}

TEST_CASE("a blacked-out bind yields the canonical inhabitant of its type") {
  // result type S[Secret] Bool collapses for the public observer
  TermPtr t = parse_term("bind[Secret] x = eta[Secret] true in eta[Secret] x", l2);
  OValuePtr v = interpret_dcce(l2, pub(), Context(), {}, t);
  CHECK(v->kind == ovalue_kind::blank);
  // visible levels proceed normally
  OValuePtr w = interpret_dcce(l2, sec(), Context(), {}, t);
  CHECK(ovalue_equal(w, ov_inj(1, ov_unit())));
}

TEST_CASE("canonical inhabitants follow the collapse structure") {
  CHECK(ovalue_equal(canonical(l2, pub(), t_unit()), ov_unit()));
  CHECK(canonical(l2, pub(), t_modal(sec(), t_bool()))->kind == ovalue_kind::blank);
  OValuePtr p = canonical(l2, pub(), t_prod(t_unit(), t_modal(sec(), t_bool())));
  CHECK(p->kind == ovalue_kind::pair);
  CHECK(p->b->kind == ovalue_kind::blank);
  // sums have no canonical inhabitant: reaching one is a protection bug
  try {
    canonical(l2, pub(), t_bool());
    FAIL("expected NoCanonical");
  } catch (const error& e) {
    CHECK(e.code() == errc::no_canonical);
  }
}

TEST_CASE("collapsed types have one observable view, fuzzed") {
  for (auto algname : {"l2", "diamond"}) {
    GradeAlgebra alg = GradeAlgebra::builtin(algname);
    TermGen gen(alg, 13);
    Context empty;
    int ran = 0;
    for (int i = 0; i < 300; i++) {
      Grade guard = alg.elements()[i % alg.size()];
      Grade obs = alg.elements()[(i / 2) % alg.size()];
      if (alg.leq(guard, obs)) continue;       // the guard must be invisible
      if (guard == alg.bottom()) continue;
      TypePtr a = t_modal(guard, gen.random_type(2));
      if (!protected_at(alg, protection_mode::extended_dcce, guard, a)) continue;
      TermPtr t = gen.term_of_type(calculus::dcce, empty, a, 14);
      OValuePtr v = interpret_dcce(alg, obs, empty, {}, t, a);
      CHECK(ovalue_equal(v, canonical(alg, obs, a)));
      ran++;
    }
    CHECK(ran > 50);
  }
}

TEST_CASE("observer interpretation is adequate at Bool for every level") {
  TermGen gen(l2, 37);
  Context empty;
  for (int i = 0; i < 150; i++) {
    TermPtr b = gen.term_of_type(calculus::dcce, empty, t_bool(), 20);
    TermPtr v = cbv_eval(l2, b);
    for (Grade obs : l2.elements()) {
      OValuePtr o = interpret_dcce(l2, obs, empty, {}, b, t_bool());
      OValuePtr vo = interpret_dcce(l2, obs, empty, {}, v, t_bool());
      CHECK(ovalue_equal(o, vo));
    }
  }
}

TEST_CASE("a constant probe passes the noninterference check") {
  TermPtr f = parse_term("\\x:S[Secret] Bool. true", l2);
  NiOutcome r = ni_check_dcce(l2, f, parse_term("eta[Secret] true", l2),
                              parse_term("eta[Secret] false", l2), sec());
  CHECK(r.pass);
  CHECK(r.observer_agrees);
  CHECK(r.adequacy_agrees);
}

TEST_CASE("an ill-scoped probe is rejected by the checker before the run") {
  // bind[Secret] y = x in y needs Secret <= Bool, which is underivable
  TermPtr f = parse_term("\\x:S[Secret] Bool. bind[Secret] y = x in y", l2);
  try {
    ni_check_dcce(l2, f, parse_term("eta[Secret] true", l2), parse_term("eta[Secret] false", l2),
                  sec());
    FAIL("expected ProtectionFailure");
  } catch (const error& e) {
    CHECK(e.code() == errc::protection_failure);
  }
}

TEST_CASE("precondition violations are reported") {
  // Secret flows into Secret: not a valid noninterference configuration
  TermPtr f = parse_term("\\x:S[Secret] Bool. eta[Secret] true", l2);
  try {
    ni_check_dcce(l2, f, parse_term("eta[Secret] true", l2), parse_term("eta[Secret] false", l2),
                  sec());
    FAIL("expected PreconditionFailure");
  } catch (const error& e) {
    CHECK(e.code() == errc::precondition_failure);
  }
}

TEST_CASE("generated probes pass noninterference, both result forms") {
  TermGen gen(l2, 555);
  for (int i = 0; i < 300; i++) {
    auto tr = gen.ni_dcce_triple(i % 2 == 0);
    NiOutcome r = ni_check_dcce(l2, tr.f, tr.a1, tr.a2, tr.l);
    CHECK(r.pass);
    CHECK(r.observer_agrees);
    CHECK(r.adequacy_agrees);
  }
}

TEST_CASE("stage zero blanks everything under next") {
  OValuePtr v = interpret_stage0({}, parse_term("next true", GradeAlgebra::naturals()));
  CHECK(v->kind == ovalue_kind::blank);
}

TEST_CASE("a constant staging probe passes") {
  GradeAlgebra nat = GradeAlgebra::naturals();
  TermPtr f = parse_term("\\x:O Bool. true", nat);
  NiOutcome r = ni_check_lcirc(f, parse_term("next true", nat), parse_term("next false", nat));
  CHECK(r.pass);
  CHECK(r.observer_agrees);
  CHECK(r.adequacy_agrees);
}

TEST_CASE("generated staging probes pass noninterference") {
  GradeAlgebra nat = GradeAlgebra::naturals();
  TermGen gen(nat, 808);
  for (int i = 0; i < 300; i++) {
    auto tr = gen.ni_lcirc_triple();
    NiOutcome r = ni_check_lcirc(tr.f, tr.b1, tr.b2);
    CHECK(r.pass);
    CHECK(r.observer_agrees);
    CHECK(r.adequacy_agrees);
  }
}

TEST_CASE("stage-zero interpretation agrees with the normalizer at Bool") {
  GradeAlgebra nat = GradeAlgebra::naturals();
  TermGen gen(nat, 101);
  Context empty;
  for (int i = 0; i < 150; i++) {
    TermPtr b = gen.term_of_type(calculus::lcirc, empty, t_bool(), 18, Grade{0});
    TermPtr n = normalize_lambda(erase(b));
    OValuePtr o = interpret_stage0({}, b);
    REQUIRE(o->kind == ovalue_kind::inj);
    CHECK(o->inj_index == n->index);
  }
}

TEST_CASE("the shrinker reduces a failing term while keeping the failure") {
  // synthetic predicate: "contains a secret eta"
  std::function<bool(const TermPtr&)> has_secret_eta = [&](const TermPtr& t) -> bool {
    if (!t) return false;
    if (t->kind == term_kind::eta && t->g1 == sec()) return true;
    return has_secret_eta(t->a) || has_secret_eta(t->b) || has_secret_eta(t->c);
  };
  TermPtr big = parse_term("((eta[Secret] true, unit), (\\x:Bool. x) false)", l2);
  TermPtr small = shrink_term(big, has_secret_eta);
  CHECK(has_secret_eta(small));
  CHECK(term_size(small) < term_size(big));
}
