#include "doctest.h"

#include "depcalc/algebra.hpp"

using namespace depcalc;

TEST_CASE("two-point lattice is valid and orders Public below Secret") {
  GradeAlgebra l2 = GradeAlgebra::l2();
  CHECK(l2.validate().empty());
  Grade pub = *l2.grade_by_name("Public");
  Grade sec = *l2.grade_by_name("Secret");
  CHECK(l2.op(pub, sec) == sec);
  CHECK(l2.leq(pub, sec));
  CHECK_FALSE(l2.leq(sec, pub));
  CHECK(l2.bottom() == pub);
}

TEST_CASE("unit law: bottom joined with anything is that thing") {
  for (auto name : {"l2", "diamond"}) {
    GradeAlgebra a = GradeAlgebra::builtin(name);
    for (Grade g : a.elements()) {
      CHECK(a.op(a.bottom(), g) == g);
      CHECK(a.op(g, a.bottom()) == g);
      CHECK(a.leq(g, g));
    }
  }
}

TEST_CASE("a wrong leq row is reported as a semilattice-order violation") {
  GradeAlgebra bad = GradeAlgebra::finite_join_semilattice(
      {"Public", "Secret"},
      {{0, 1}, {1, 1}},
      0,
      {{true, true}, {true, true}});  // claims Secret <= Public
  auto violations = bad.validate();
  REQUIRE_FALSE(violations.empty());
  bool found = false;
  for (auto& v : violations)
    if (v.law == "semilattice-order") found = true;
  CHECK(found);
}

TEST_CASE("naturals: built-in addition and the discrete order") {
  GradeAlgebra nat = GradeAlgebra::naturals();
  CHECK(nat.validate().empty());
  CHECK(nat.op(Grade{2}, Grade{3}) == Grade{5});
  CHECK(nat.leq(Grade{2}, Grade{2}));
  CHECK_FALSE(nat.leq(Grade{1}, Grade{2}));
  CHECK(nat.unit() == Grade{0});
}

TEST_CASE("semilattice order coincides with the join everywhere") {
  for (auto name : {"l2", "diamond"}) {
    GradeAlgebra a = GradeAlgebra::builtin(name);
    for (Grade x : a.elements())
      for (Grade y : a.elements()) CHECK(a.leq(x, y) == (a.op(x, y) == y));
  }
}

TEST_CASE("monotonicity holds for all element quadruples of the built-ins") {
  for (auto name : {"l2", "diamond"}) {
    GradeAlgebra a = GradeAlgebra::builtin(name);
    for (Grade m1 : a.elements())
      for (Grade m1p : a.elements()) {
        if (!a.leq(m1, m1p)) continue;
        for (Grade m2 : a.elements())
          for (Grade m2p : a.elements()) {
            if (!a.leq(m2, m2p)) continue;
            CHECK(a.leq(a.op(m1, m2), a.op(m1p, m2p)));
          }
      }
  }
}

TEST_CASE("diamond: the two incomparable low levels join to l3") {
  GradeAlgebra d = GradeAlgebra::diamond();
  CHECK(d.validate().empty());
  Grade l11 = *d.grade_by_name("l11");
  Grade l12 = *d.grade_by_name("l12");
  Grade l3 = *d.grade_by_name("l3");
  CHECK(d.op(l11, l12) == l3);
  CHECK_FALSE(d.leq(l11, l12));
  CHECK_FALSE(d.leq(l12, l11));
}

TEST_CASE("algebra files parse, validate, and resolve grades by name") {
  const char* text =
      "kind semilattice\n"
      "elements Public Secret\n"
      "unit Public\n"
      "op Public Public Public\n"
      "op Public Secret Secret\n"
      "op Secret Public Secret\n"
      "op Secret Secret Secret\n"
      "leq Public Secret\n";
  GradeAlgebra a = GradeAlgebra::from_text(text, "inline");
  CHECK(a.validate().empty());
  CHECK(a.grade_by_name("Secret").has_value());
  CHECK_THROWS_AS(a.parse_grade("Topsecret"), error);
}

TEST_CASE("foreign grades are rejected") {
  GradeAlgebra l2 = GradeAlgebra::l2();
  CHECK_THROWS_AS(l2.op(Grade{0}, Grade{7}), error);
  try {
    l2.leq(Grade{9}, Grade{0});
    FAIL("expected a ForeignGrade error");
  } catch (const error& e) {
    CHECK(e.code() == errc::foreign_grade);
  }
}
