#include "depcalc/staged.hpp"

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

std::string at(const TermPtr& t) {
  if (t->line == 0) return {};
  return std::to_string(t->line) + ":" + std::to_string(t->col);
}

// ---------------------------------------------------------------------------
// The staging calculus.
// ---------------------------------------------------------------------------

void check_lcirc_type(const GradeAlgebra& alg, const TypePtr& ty) {
  switch (ty->kind) {
    case type_kind::unit:
    case type_kind::base:
      return;
    case type_kind::modal:
      if (ty->grade != Grade{1})
        fail(errc::type_mismatch,
             "only the circle (grade 1) modal type exists here, found grade " +
                 alg.grade_name(ty->grade));
      check_lcirc_type(alg, ty->right);
      return;
    case type_kind::fun:
    case type_kind::sum:
      check_lcirc_type(alg, ty->left);
      check_lcirc_type(alg, ty->right);
      return;
    default:
      fail(errc::constructor_not_in_calculus, "type form not available in lcirc");
  }
}

struct LcircChecker {
  const GradeAlgebra& alg;  // always the naturals

  TypePtr infer(Context& ctx, const TermPtr& t, Grade n) const {
    switch (t->kind) {
      case term_kind::var: {
        const CtxEntry* e = ctx.lookup(t->index);
        if (!e) fail(errc::unbound_variable, "variable index out of scope", at(t));
        if (!e->grade) fail(errc::ill_typed, "context entry lacks a time instant", at(t));
        if (*e->grade != n)
          fail(errc::time_mismatch,
               "variable lives at time " + alg.grade_name(*e->grade) + ", used at time " +
                   alg.grade_name(n),
               at(t));
        return e->type;
      }
      case term_kind::unit:
        return t_unit();
      case term_kind::lam: {
        if (!t->annot) fail(errc::missing_annotation, "lambdas must be annotated here", at(t));
        check_lcirc_type(alg, *t->annot);
        ctx.push(t->hint, n, *t->annot);
        TypePtr body = infer(ctx, t->a, n);
        ctx.pop();
        return t_fun(*t->annot, body);
      }
      case term_kind::app: {
        TypePtr fn = infer(ctx, t->a, n);
        if (fn->kind != type_kind::fun)
          fail(errc::type_mismatch, "applied term is not a function", at(t));
        check(ctx, t->b, n, fn->left);
        return fn->right;
      }
      case term_kind::inj:
        if (infer(ctx, t->a, n)->kind == type_kind::unit) return t_bool();
        fail(errc::missing_annotation, "cannot infer the sum type of an injection", at(t));
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a, n);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum", at(t));
        TypePtr f1 = infer(ctx, t->b, n);
        if (f1->kind != type_kind::fun || !type_equal(f1->left, s->left))
          fail(errc::type_mismatch, "first case branch must map the left summand", at(t));
        check(ctx, t->c, n, t_fun(s->right, f1->right));
        return f1->right;
      }
      case term_kind::next: {
        TypePtr a = infer(ctx, t->a, Grade{n.v + 1});
        return t_modal(Grade{1}, a);
      }
      case term_kind::prev: {
        if (n.v == 0)
          fail(errc::time_mismatch, "prev cannot be used at time 0", at(t));
        TypePtr a = infer(ctx, t->a, Grade{n.v - 1});
        if (a->kind != type_kind::modal || a->grade != Grade{1})
          fail(errc::type_mismatch, "prev needs a circle type", at(t));
        return a->right;
      }
      default:
        fail(errc::constructor_not_in_calculus, "constructor not available in lcirc", at(t));
    }
  }

  void check(Context& ctx, const TermPtr& t, Grade n, const TypePtr& expected) const {
    switch (t->kind) {
      case term_kind::inj: {
        if (expected->kind != type_kind::sum)
          fail(errc::type_mismatch, "injection checked against non-sum", at(t));
        check(ctx, t->a, n, t->index == 1 ? expected->left : expected->right);
        return;
      }
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a, n);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum", at(t));
        check(ctx, t->b, n, t_fun(s->left, expected));
        check(ctx, t->c, n, t_fun(s->right, expected));
        return;
      }
      case term_kind::next: {
        if (expected->kind == type_kind::modal && expected->grade == Grade{1}) {
          check(ctx, t->a, Grade{n.v + 1}, expected->right);
          return;
        }
        break;
      }
      default:
        break;
    }
    TypePtr found = infer(ctx, t, n);
    if (!type_equal(found, expected))
      fail(errc::type_mismatch,
           "expected " + print_type(expected, alg) + ", found " + print_type(found, alg), at(t));
  }
};

// ---------------------------------------------------------------------------
// The graded-judgement calculus.
// ---------------------------------------------------------------------------

struct GmcceChecker {
  const GradeAlgebra& alg;

  std::vector<Grade> factor_candidates(Grade target, Grade m2) const {
    std::vector<Grade> out;
    if (alg.kind() == algebra_kind::naturals) {
      if (target.v >= m2.v) out.push_back(Grade{target.v - m2.v});
      return out;
    }
    for (Grade m1 : alg.elements())
      if (alg.op(m1, m2) == target) out.push_back(m1);
    return out;
  }

  TypePtr infer(Context ctx, const TermPtr& t, Grade m) const {
    switch (t->kind) {
      case term_kind::var: {
        const CtxEntry* e = ctx.lookup(t->index);
        if (!e) fail(errc::unbound_variable, "variable index out of scope", at(t));
        if (!e->grade) fail(errc::ill_typed, "context entry lacks a grade", at(t));
        if (!alg.leq(*e->grade, m))
          fail(errc::grade_not_leq,
               "variable at grade " + alg.grade_name(*e->grade) + " cannot be observed at " +
                   alg.grade_name(m),
               at(t));
        return e->type;
      }
      case term_kind::unit:
        return t_unit();
      case term_kind::lam: {
        if (!t->annot)
          fail(errc::missing_annotation, "cannot infer the domain of an unannotated lambda", at(t));
        ctx.push(t->hint, m, *t->annot);
        TypePtr body = infer(ctx, t->a, m);
        ctx.pop();
        return t_fun(*t->annot, body);
      }
      case term_kind::app: {
        TypePtr fn = infer(ctx, t->a, m);
        if (fn->kind != type_kind::fun)
          fail(errc::type_mismatch, "applied term is not a function", at(t));
        check(ctx, t->b, m, fn->left);
        return fn->right;
      }
      case term_kind::pair:
        return t_prod(infer(ctx, t->a, m), infer(ctx, t->b, m));
      case term_kind::proj: {
        TypePtr p = infer(ctx, t->a, m);
        if (p->kind != type_kind::prod)
          fail(errc::type_mismatch, "projection from non-product", at(t));
        return t->index == 1 ? p->left : p->right;
      }
      case term_kind::inj:
        if (infer(ctx, t->a, m)->kind == type_kind::unit) return t_bool();
        fail(errc::missing_annotation, "cannot infer the sum type of an injection", at(t));
      case term_kind::abort:
        fail(errc::missing_annotation, "cannot infer the target type of abort", at(t));
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a, m);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum", at(t));
        TypePtr f1 = infer(ctx, t->b, m);
        if (f1->kind != type_kind::fun || !type_equal(f1->left, s->left))
          fail(errc::type_mismatch, "first case branch must map the left summand", at(t));
        check(ctx, t->c, m, t_fun(s->right, f1->right));
        return f1->right;
      }
      case term_kind::split: {
        TypePtr a = infer(ctx, t->a, alg.op(m, t->g1));
        return t_modal(t->g1, a);
      }
      case term_kind::merge: {
        auto cands = factor_candidates(m, t->g1);
        if (cands.empty())
          fail(errc::grade_not_leq,
               "no grade composes with " + alg.grade_name(t->g1) + " to " + alg.grade_name(m),
               at(t));
        std::string last;
        for (Grade m1 : cands) {
          try {
            TypePtr a = infer(ctx, t->a, m1);
            if (a->kind == type_kind::modal && a->grade == t->g1) return a->right;
            last = "merge[" + alg.grade_name(t->g1) + "] needs a modal type at that grade, found " +
                   print_type(a, alg);
          } catch (const error& e) {
            last = e.what();
          }
        }
        fail(errc::type_mismatch, last, at(t));
      }
      case term_kind::up: {
        if (t->g2 != m)
          fail(errc::grade_not_leq,
               "coercion yields grade " + alg.grade_name(t->g2) + ", judgement is at " +
                   alg.grade_name(m),
               at(t));
        if (!alg.leq(t->g1, t->g2))
          fail(errc::grade_not_leq,
               alg.grade_name(t->g1) + " is not below " + alg.grade_name(t->g2), at(t));
        return infer(ctx, t->a, t->g1);
      }
      default:
        fail(errc::constructor_not_in_calculus, "constructor not available in gmcce", at(t));
    }
  }

  void check(Context ctx, const TermPtr& t, Grade m, const TypePtr& expected) const {
    switch (t->kind) {
      case term_kind::lam: {
        if (expected->kind != type_kind::fun) break;
        if (t->annot && !type_equal(*t->annot, expected->left))
          fail(errc::type_mismatch, "annotation does not match expected domain", at(t));
        ctx.push(t->hint, m, expected->left);
        check(ctx, t->a, m, expected->right);
        ctx.pop();
        return;
      }
      case term_kind::pair: {
        if (expected->kind != type_kind::prod) break;
        check(ctx, t->a, m, expected->left);
        check(ctx, t->b, m, expected->right);
        return;
      }
      case term_kind::inj: {
        if (expected->kind != type_kind::sum)
          fail(errc::type_mismatch, "injection checked against non-sum", at(t));
        check(ctx, t->a, m, t->index == 1 ? expected->left : expected->right);
        return;
      }
      case term_kind::abort:
        check(ctx, t->a, m, t_void());
        return;
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a, m);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum", at(t));
        check(ctx, t->b, m, t_fun(s->left, expected));
        check(ctx, t->c, m, t_fun(s->right, expected));
        return;
      }
      case term_kind::split: {
        if (expected->kind != type_kind::modal || expected->grade != t->g1) break;
        check(ctx, t->a, alg.op(m, t->g1), expected->right);
        return;
      }
      case term_kind::merge: {
        auto cands = factor_candidates(m, t->g1);
        if (cands.empty())
          fail(errc::grade_not_leq,
               "no grade composes with " + alg.grade_name(t->g1) + " to " + alg.grade_name(m),
               at(t));
        std::string last;
        for (Grade m1 : cands) {
          try {
            check(ctx, t->a, m1, t_modal(t->g1, expected));
            return;
          } catch (const error& e) {
            last = e.what();
          }
        }
        fail(errc::type_mismatch, last, at(t));
      }
      case term_kind::up: {
        if (t->g2 != m)
          fail(errc::grade_not_leq,
               "coercion yields grade " + alg.grade_name(t->g2) + ", judgement is at " +
                   alg.grade_name(m),
               at(t));
        if (!alg.leq(t->g1, t->g2))
          fail(errc::grade_not_leq,
               alg.grade_name(t->g1) + " is not below " + alg.grade_name(t->g2), at(t));
        check(ctx, t->a, t->g1, expected);
        return;
      }
      default:
        break;
    }
    TypePtr found = infer(ctx, t, m);
    if (!type_equal(found, expected))
      fail(errc::type_mismatch,
           "expected " + print_type(expected, alg) + ", found " + print_type(found, alg), at(t));
  }
};

}  // namespace

TypePtr infer_lcirc(const Context& ctx, const TermPtr& t, Grade time) {
  GradeAlgebra nat = GradeAlgebra::naturals();
  for (const auto& e : ctx.entries()) check_lcirc_type(nat, e.type);
  Context c = ctx;
  return LcircChecker{nat}.infer(c, t, time);
}

void check_lcirc(const Context& ctx, const TermPtr& t, Grade time, const TypePtr& expected) {
  GradeAlgebra nat = GradeAlgebra::naturals();
  for (const auto& e : ctx.entries()) check_lcirc_type(nat, e.type);
  check_lcirc_type(nat, expected);
  Context c = ctx;
  LcircChecker{nat}.check(c, t, time, expected);
}

TypePtr infer_gmcce(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t, Grade grade) {
  return GmcceChecker{alg}.infer(ctx, t, grade);
}

void check_gmcce(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t, Grade grade,
                 const TypePtr& expected) {
  GmcceChecker{alg}.check(ctx, t, grade, expected);
}

}  // namespace depcalc
