#include "depcalc/typecheck.hpp"

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

std::string at(const TermPtr& t) {
  if (t->line == 0) return {};
  return std::to_string(t->line) + ":" + std::to_string(t->col);
}

[[noreturn]] void mismatch(const GradeAlgebra& alg, const TermPtr& t, const TypePtr& expected,
                           const TypePtr& found) {
  fail(errc::type_mismatch,
       "expected " + print_type(expected, alg) + ", found " + print_type(found, alg), at(t));
}

bool admits(calculus c, term_kind k) {
  switch (k) {
    case term_kind::var:
    case term_kind::lam:
    case term_kind::app:
    case term_kind::pair:
    case term_kind::proj:
    case term_kind::inj:
    case term_kind::case_:
    case term_kind::abort:
    case term_kind::unit:
      return true;
    case term_kind::ret:
    case term_kind::join:
      return c == calculus::gmc || c == calculus::gmcc;
    case term_kind::extr:
    case term_kind::fork:
      return c == calculus::gcc || c == calculus::gmcc;
    case term_kind::lift:
    case term_kind::up:
      return c == calculus::gmc || c == calculus::gcc || c == calculus::gmcc;
    default:
      return false;
  }
}

struct CoreChecker {
  const GradeAlgebra& alg;
  calculus calc;

  void admit(const TermPtr& t) const {
    if (!admits(calc, t->kind))
      fail(errc::constructor_not_in_calculus,
           std::string("constructor not available in ") + calculus_name(calc), at(t));
  }

  TypePtr infer(Context& ctx, const TermPtr& t) const {
    admit(t);
    switch (t->kind) {
      case term_kind::var: {
        const CtxEntry* e = ctx.lookup(t->index);
        if (!e) fail(errc::unbound_variable, "variable index out of scope", at(t));
        return e->type;
      }
      case term_kind::unit:
        return t_unit();
      case term_kind::lam: {
        if (!t->annot)
          fail(errc::missing_annotation, "cannot infer the domain of an unannotated lambda", at(t));
        ctx.push(t->hint, *t->annot);
        TypePtr body = infer(ctx, t->a);
        ctx.pop();
        return t_fun(*t->annot, body);
      }
      case term_kind::app: {
        TypePtr fn = infer(ctx, t->a);
        if (fn->kind != type_kind::fun)
          fail(errc::type_mismatch, "applied term is not a function: " + print_type(fn, alg), at(t));
        check(ctx, t->b, fn->left);
        return fn->right;
      }
      case term_kind::pair:
        return t_prod(infer(ctx, t->a), infer(ctx, t->b));
      case term_kind::proj: {
        TypePtr p = infer(ctx, t->a);
        if (p->kind != type_kind::prod)
          fail(errc::type_mismatch, "projection from non-product: " + print_type(p, alg), at(t));
        return t->index == 1 ? p->left : p->right;
      }
      case term_kind::inj:
        // Bool literals and other unit-payload injections synthesize Bool;
        // any other injection needs a checking context.
        if (infer(ctx, t->a)->kind == type_kind::unit) return t_bool();
        fail(errc::missing_annotation, "cannot infer the sum type of an injection", at(t));
      case term_kind::abort:
        fail(errc::missing_annotation, "cannot infer the target type of abort", at(t));
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum: " + print_type(s, alg), at(t));
        TypePtr f1 = infer(ctx, t->b);
        if (f1->kind != type_kind::fun || !type_equal(f1->left, s->left))
          fail(errc::type_mismatch, "first case branch must map the left summand", at(t));
        check(ctx, t->c, t_fun(s->right, f1->right));
        return f1->right;
      }
      case term_kind::ret:
        return t_modal(alg.unit(), infer(ctx, t->a));
      case term_kind::extr: {
        TypePtr m = infer(ctx, t->a);
        if (m->kind != type_kind::modal || m->grade != alg.unit())
          fail(errc::type_mismatch,
               "extr needs a modal type at the unit grade, found " + print_type(m, alg), at(t));
        return m->right;
      }
      case term_kind::lift: {
        TypePtr f = infer(ctx, t->a);
        if (f->kind != type_kind::fun)
          fail(errc::type_mismatch, "lift needs a function, found " + print_type(f, alg), at(t));
        return t_fun(t_modal(t->g1, f->left), t_modal(t->g1, f->right));
      }
      case term_kind::join: {
        TypePtr m = infer(ctx, t->a);
        if (m->kind != type_kind::modal || m->right->kind != type_kind::modal ||
            m->grade != t->g1 || m->right->grade != t->g2)
          fail(errc::type_mismatch,
               "join[" + alg.grade_name(t->g1) + "," + alg.grade_name(t->g2) +
                   "] needs a doubly modal type at those grades, found " + print_type(m, alg),
               at(t));
        return t_modal(alg.op(t->g1, t->g2), m->right->right);
      }
      case term_kind::fork: {
        TypePtr m = infer(ctx, t->a);
        Grade prod = alg.op(t->g1, t->g2);
        if (m->kind != type_kind::modal || m->grade != prod)
          fail(errc::type_mismatch,
               "fork[" + alg.grade_name(t->g1) + "," + alg.grade_name(t->g2) +
                   "] needs a modal type at grade " + alg.grade_name(prod) + ", found " +
                   print_type(m, alg),
               at(t));
        return t_modal(t->g1, t_modal(t->g2, m->right));
      }
      case term_kind::up: {
        if (!alg.leq(t->g1, t->g2))
          fail(errc::grade_not_leq,
               alg.grade_name(t->g1) + " is not below " + alg.grade_name(t->g2), at(t));
        TypePtr m = infer(ctx, t->a);
        if (m->kind != type_kind::modal || m->grade != t->g1)
          fail(errc::type_mismatch,
               "up needs a modal type at grade " + alg.grade_name(t->g1) + ", found " +
                   print_type(m, alg),
               at(t));
        return t_modal(t->g2, m->right);
      }
      default:
        fail(errc::constructor_not_in_calculus,
             std::string("constructor not available in ") + calculus_name(calc), at(t));
    }
  }

  void check(Context& ctx, const TermPtr& t, const TypePtr& expected) const {
    admit(t);
    switch (t->kind) {
      case term_kind::lam: {
        if (expected->kind != type_kind::fun) break;
        if (t->annot && !type_equal(*t->annot, expected->left))
          mismatch(alg, t, expected->left, *t->annot);
        ctx.push(t->hint, expected->left);
        check(ctx, t->a, expected->right);
        ctx.pop();
        return;
      }
      case term_kind::pair: {
        if (expected->kind != type_kind::prod) break;
        check(ctx, t->a, expected->left);
        check(ctx, t->b, expected->right);
        return;
      }
      case term_kind::inj: {
        if (expected->kind != type_kind::sum)
          fail(errc::type_mismatch,
               "injection checked against non-sum " + print_type(expected, alg), at(t));
        check(ctx, t->a, t->index == 1 ? expected->left : expected->right);
        return;
      }
      case term_kind::abort: {
        check(ctx, t->a, t_void());
        return;
      }
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum: " + print_type(s, alg), at(t));
        check(ctx, t->b, t_fun(s->left, expected));
        check(ctx, t->c, t_fun(s->right, expected));
        return;
      }
      case term_kind::ret: {
        if (expected->kind != type_kind::modal) break;
        if (expected->grade != alg.unit())
          fail(errc::type_mismatch,
               "ret produces grade " + alg.grade_name(alg.unit()) + ", expected " +
                   print_type(expected, alg),
               at(t));
        check(ctx, t->a, expected->right);
        return;
      }
      case term_kind::eta:
        break;
      default:
        break;
    }
    TypePtr found = infer(ctx, t);
    if (!type_equal(found, expected)) mismatch(alg, t, expected, found);
  }
};

}  // namespace

TypePtr infer_core(const GradeAlgebra& alg, calculus calc, const Context& ctx, const TermPtr& t) {
  Context c = ctx;
  return CoreChecker{alg, calc}.infer(c, t);
}

void check_core(const GradeAlgebra& alg, calculus calc, const Context& ctx, const TermPtr& t,
                const TypePtr& expected) {
  Context c = ctx;
  CoreChecker{alg, calc}.check(c, t, expected);
}

}  // namespace depcalc
