#include "depcalc/dcc.hpp"

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

void require_finite_semilattice(const GradeAlgebra& alg, const char* who) {
  if (alg.kind() == algebra_kind::naturals)
    fail(errc::infinite_carrier, std::string(who) + " needs a finite algebra");
  if (!alg.is_semilattice())
    fail(errc::requires_semilattice, std::string(who) + " needs a bounded join-semilattice");
}

bool plain_protected(const GradeAlgebra& alg, Grade l, const TypePtr& a) {
  switch (a->kind) {
    case type_kind::prod:
      return plain_protected(alg, l, a->left) && plain_protected(alg, l, a->right);
    case type_kind::fun:
      return plain_protected(alg, l, a->right);
    case type_kind::modal:
      return alg.leq(l, a->grade) || plain_protected(alg, l, a->right);
    default:
      return false;
  }
}

std::string at(const TermPtr& t) {
  if (t->line == 0) return {};
  return std::to_string(t->line) + ":" + std::to_string(t->col);
}

}  // namespace

Grade principal_level(const GradeAlgebra& alg, const TypePtr& a) {
  require_finite_semilattice(alg, "the extended protection judgement");
  switch (a->kind) {
    case type_kind::unit:
    case type_kind::void_:
    case type_kind::base:
    case type_kind::sum:
      return alg.bottom();
    case type_kind::fun:
      return principal_level(alg, a->right);
    case type_kind::modal:
      return alg.op(a->grade, principal_level(alg, a->right));
    case type_kind::prod: {
      Grade pa = principal_level(alg, a->left);
      Grade pb = principal_level(alg, a->right);
      // join of all common lower bounds; nonempty (bottom) and closed under
      // join, so this is the greatest common lower bound
      Grade acc = alg.bottom();
      for (Grade g : alg.elements())
        if (alg.leq(g, pa) && alg.leq(g, pb)) acc = alg.op(acc, g);
      return acc;
    }
  }
  return alg.bottom();
}

bool protected_at(const GradeAlgebra& alg, protection_mode mode, Grade l, const TypePtr& a) {
  require_finite_semilattice(alg, "the protection judgement");
  if (mode == protection_mode::plain_dcc) return plain_protected(alg, l, a);
  return alg.leq(l, principal_level(alg, a));
}

namespace {

struct DccChecker {
  const GradeAlgebra& alg;
  protection_mode mode;
  std::unordered_map<const Term*, TypePtr>* bind_types = nullptr;

  void record(const TermPtr& t, const TypePtr& ty) const {
    if (bind_types) (*bind_types)[t.get()] = ty;
  }

  void admit(const TermPtr& t) const {
    switch (t->kind) {
      case term_kind::var:
      case term_kind::lam:
      case term_kind::app:
      case term_kind::pair:
      case term_kind::proj:
      case term_kind::inj:
      case term_kind::case_:
      case term_kind::abort:
      case term_kind::unit:
      case term_kind::eta:
      case term_kind::bind:
        return;
      default:
        fail(errc::constructor_not_in_calculus,
             std::string("constructor not available in ") +
                 (mode == protection_mode::plain_dcc ? "dcc" : "dcce"),
             at(t));
    }
  }

  void protection(const TermPtr& t, Grade l, const TypePtr& b) const {
    if (!protected_at(alg, mode, l, b))
      fail(errc::protection_failure,
           alg.grade_name(l) + " does not protect " + print_type(b, alg), at(t));
  }

  TypePtr infer(Context& ctx, const TermPtr& t) const {
    admit(t);
    switch (t->kind) {
      case term_kind::eta:
        return t_modal(t->g1, infer(ctx, t->a));
      case term_kind::bind: {
        TypePtr bound = infer(ctx, t->a);
        if (bound->kind != type_kind::modal || bound->grade != t->g1)
          fail(errc::type_mismatch,
               "bind[" + alg.grade_name(t->g1) + "] needs a modal type at that grade, found " +
                   print_type(bound, alg),
               at(t));
        ctx.push(t->hint, bound->right);
        TypePtr body = infer(ctx, t->b);
        ctx.pop();
        protection(t, t->g1, body);
        record(t, body);
        return body;
      }
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
      case term_kind::inj:
        // Bool literals and other unit-payload injections synthesize Bool;
        // any other injection needs a checking context.
        if (infer(ctx, t->a)->kind == type_kind::unit) return t_bool();
        fail(errc::missing_annotation, "cannot infer the sum type of an injection", at(t));
      case term_kind::abort:
        fail(errc::missing_annotation, "cannot infer the target type of abort", at(t));
      default:
        fail(errc::constructor_not_in_calculus, "unreachable", at(t));
    }
  }

  void check(Context& ctx, const TermPtr& t, const TypePtr& expected) const {
    admit(t);
    switch (t->kind) {
      case term_kind::lam: {
        if (expected->kind != type_kind::fun) break;
        if (t->annot && !type_equal(*t->annot, expected->left))
          fail(errc::type_mismatch,
               "annotation " + print_type(*t->annot, alg) + " does not match expected domain " +
                   print_type(expected->left, alg),
               at(t));
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
      case term_kind::abort:
        check(ctx, t->a, t_void());
        return;
      case term_kind::case_: {
        TypePtr s = infer(ctx, t->a);
        if (s->kind != type_kind::sum)
          fail(errc::type_mismatch, "case scrutinee is not a sum: " + print_type(s, alg), at(t));
        check(ctx, t->b, t_fun(s->left, expected));
        check(ctx, t->c, t_fun(s->right, expected));
        return;
      }
      case term_kind::eta: {
        if (expected->kind != type_kind::modal) break;
        if (expected->grade != t->g1) break;
        check(ctx, t->a, expected->right);
        return;
      }
      case term_kind::bind: {
        TypePtr bound = infer(ctx, t->a);
        if (bound->kind != type_kind::modal || bound->grade != t->g1)
          fail(errc::type_mismatch,
               "bind[" + alg.grade_name(t->g1) + "] needs a modal type at that grade, found " +
                   print_type(bound, alg),
               at(t));
        ctx.push(t->hint, bound->right);
        check(ctx, t->b, expected);
        ctx.pop();
        protection(t, t->g1, expected);
        record(t, expected);
        return;
      }
      default:
        break;
    }
    TypePtr found = infer(ctx, t);
    if (!type_equal(found, expected))
      fail(errc::type_mismatch,
           "expected " + print_type(expected, alg) + ", found " + print_type(found, alg), at(t));
  }
};

// Combine needs a level that protects the body of a modal type and joins
// with the modal's grade above l. Deterministic: first element in
// declaration order that qualifies.
Grade combine_partner(const GradeAlgebra& alg, Grade l, const TypePtr& modal) {
  for (Grade g : alg.elements()) {
    if (alg.leq(l, alg.op(modal->grade, g)) &&
        protected_at(alg, protection_mode::extended_dcce, g, modal->right))
      return g;
  }
  // unreachable when the precondition holds: p(modal) = grade v p(body)
  fail(errc::not_protected, "no combine partner for " + alg.grade_name(l));
}

TermPtr build_j(const GradeAlgebra& alg, Grade l, const TypePtr& b) {
  // bottom protects everything
  if (l == alg.bottom()) return mk::lam("x", t_modal(l, b), mk::extr(mk::var(0)));

  if (b->kind == type_kind::modal) {
    // the modal layer dominates
    if (alg.leq(l, b->grade))
      return mk::lam("x", t_modal(l, b), mk::join(l, b->grade, mk::var(0)));
    // the body is protected on its own
    if (protected_at(alg, protection_mode::extended_dcce, l, b->right)) {
      TermPtr ja = build_j(alg, l, b->right);
      return mk::lam("x", t_modal(l, b),
                     mk::app(mk::lift(b->grade, ja),
                             mk::fork(b->grade, l, mk::join(l, b->grade, mk::var(0)))));
    }
    // combine two protecting levels: the modal grade as one leg and a
    // protecting level for the body as the other
    Grade l1 = b->grade;
    Grade l2 = combine_partner(alg, l, b);
    TermPtr j1 = build_j(alg, l1, b);
    TermPtr j2 = build_j(alg, l2, b);
    return mk::lam("x", t_modal(l, b),
                   mk::app(j1, mk::app(mk::lift(l1, j2),
                                       mk::fork(l1, l2, mk::up(l, alg.op(l1, l2), mk::var(0))))));
  }

  if (b->kind == type_kind::prod) {
    TermPtr ja = build_j(alg, l, b->left);
    TermPtr jb = build_j(alg, l, b->right);
    TermPtr z = mk::var(0, "z");
    TermPtr first =
        mk::app(ja, mk::app(mk::lift(l, mk::lam("y", b, mk::proj(1, mk::var(0)))), z));
    TermPtr second =
        mk::app(jb, mk::app(mk::lift(l, mk::lam("y", b, mk::proj(2, mk::var(0)))), z));
    return mk::lam("z", t_modal(l, b), mk::pair(first, second));
  }

  if (b->kind == type_kind::fun) {
    TermPtr jb = build_j(alg, l, b->right);
    // \z. \y. j_B ((lift[l] (\x. x y)) z)
    TermPtr applied = mk::lam("x", b, mk::app(mk::var(0), mk::var(1, "y")));
    TermPtr body = mk::app(shift(jb, 2), mk::app(mk::lift(l, applied), mk::var(1, "z")));
    return mk::lam("z", t_modal(l, b), mk::lam("y", b->left, body));
  }

  fail(errc::not_protected,
       alg.grade_name(l) + " does not protect " + print_type(b, alg) + " by any base rule");
}

}  // namespace

TypePtr infer_dcc(const GradeAlgebra& alg, protection_mode mode, const Context& ctx,
                  const TermPtr& t) {
  require_finite_semilattice(alg, "the dependency calculus");
  Context c = ctx;
  return DccChecker{alg, mode}.infer(c, t);
}

void check_dcc(const GradeAlgebra& alg, protection_mode mode, const Context& ctx, const TermPtr& t,
               const TypePtr& expected) {
  require_finite_semilattice(alg, "the dependency calculus");
  Context c = ctx;
  DccChecker{alg, mode}.check(c, t, expected);
}

TermPtr synthesize_j(const GradeAlgebra& alg, Grade l, const TypePtr& b) {
  require_finite_semilattice(alg, "coercion synthesis");
  if (!protected_at(alg, protection_mode::extended_dcce, l, b))
    fail(errc::not_protected, alg.grade_name(l) + " does not protect " + print_type(b, alg));
  return build_j(alg, l, b);
}

std::unordered_map<const Term*, TypePtr> annotate_bind_types(const GradeAlgebra& alg,
                                                             protection_mode mode,
                                                             const Context& ctx, const TermPtr& t,
                                                             const TypePtr& expected) {
  require_finite_semilattice(alg, "the dependency calculus");
  std::unordered_map<const Term*, TypePtr> out;
  Context c = ctx;
  DccChecker checker{alg, mode, &out};
  if (expected)
    checker.check(c, t, expected);
  else
    checker.infer(c, t);
  return out;
}

}  // namespace depcalc
