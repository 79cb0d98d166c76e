#include "depcalc/translate.hpp"

#include "depcalc/staged.hpp"

namespace depcalc {

namespace {

// Shared plumbing: rebuild the lambda core homomorphically, keeping track of
// the typing context for the clauses that need types of subterms.
template <typename Self>
TermPtr map_core(Self& self, Context& ctx, const TermPtr& t) {
  switch (t->kind) {
    case term_kind::var:
    case term_kind::unit:
      return t;
    case term_kind::lam: {
      if (!t->annot) fail(errc::missing_annotation, "translation needs annotated lambdas");
      ctx.push(t->hint, *t->annot);
      TermPtr body = self.go(ctx, t->a);
      ctx.pop();
      return mk::lam(t->hint, t->annot, body);
    }
    case term_kind::app:
      return mk::app(self.go(ctx, t->a), self.go(ctx, t->b));
    case term_kind::pair:
      return mk::pair(self.go(ctx, t->a), self.go(ctx, t->b));
    case term_kind::proj:
      return mk::proj(t->index, self.go(ctx, t->a));
    case term_kind::inj:
      return mk::inj(t->index, self.go(ctx, t->a));
    case term_kind::case_:
      return mk::case_(self.go(ctx, t->a), self.go(ctx, t->b), self.go(ctx, t->c));
    case term_kind::abort:
      return mk::abort(self.go(ctx, t->a));
    default:
      fail(errc::constructor_not_in_calculus, "constructor outside the source calculus");
  }
}

struct Overline {
  const GradeAlgebra& alg;

  TermPtr go(Context& ctx, const TermPtr& t) {
    Grade bot = alg.bottom();
    switch (t->kind) {
      case term_kind::ret:
        return mk::eta(bot, go(ctx, t->a));
      case term_kind::extr:
        return mk::bind(bot, "x", go(ctx, t->a), mk::var(0));
      case term_kind::lift: {
        TypePtr fty = infer_core(alg, calculus::gmcc, ctx, t->a);
        if (fty->kind != type_kind::fun)
          fail(errc::type_mismatch, "lift of a non-function");
        TermPtr f = shift(go(ctx, t->a), 2);
        TermPtr body = mk::bind(t->g1, "y", mk::var(0),
                                mk::eta(t->g1, mk::app(f, mk::var(0))));
        return mk::lam("x", t_modal(t->g1, fty->left), body);
      }
      case term_kind::join: {
        TermPtr inner = mk::bind(t->g2, "y", mk::var(0),
                                 mk::eta(alg.op(t->g1, t->g2), mk::var(0)));
        return mk::bind(t->g1, "x", go(ctx, t->a), inner);
      }
      case term_kind::fork:
        return mk::bind(alg.op(t->g1, t->g2), "x", go(ctx, t->a),
                        mk::eta(t->g1, mk::eta(t->g2, mk::var(0))));
      case term_kind::up:
        return mk::bind(t->g1, "x", go(ctx, t->a), mk::eta(t->g2, mk::var(0)));
      default:
        return map_core(*this, ctx, t);
    }
  }
};

struct Underline {
  const GradeAlgebra& alg;

  TermPtr go(Context& ctx, const TermPtr& t) {
    switch (t->kind) {
      case term_kind::eta:
        return mk::up(alg.bottom(), t->g1, mk::ret(go(ctx, t->a)));
      case term_kind::bind: {
        TypePtr bound_ty = infer_dcc(alg, protection_mode::extended_dcce, ctx, t->a);
        if (bound_ty->kind != type_kind::modal || bound_ty->grade != t->g1)
          fail(errc::type_mismatch, "bind of a non-modal term");
        ctx.push(t->hint, bound_ty->right);
        TypePtr body_ty = infer_dcc(alg, protection_mode::extended_dcce, ctx, t->b);
        TermPtr body = go(ctx, t->b);
        ctx.pop();
        TermPtr j = synthesize_j(alg, t->g1, body_ty);
        TermPtr fn = mk::lam(t->hint, bound_ty->right, body);
        return mk::app(j, mk::app(mk::lift(t->g1, fn), go(ctx, t->a)));
      }
      default:
        return map_core(*this, ctx, t);
    }
  }
};

struct Tilde {
  const GradeAlgebra& alg;

  TermPtr go(Context& ctx, const TermPtr& t) {
    Grade bot = alg.bottom();
    switch (t->kind) {
      case term_kind::ret:
        return mk::split(bot, go(ctx, t->a));
      case term_kind::extr:
        return mk::merge(bot, go(ctx, t->a));
      case term_kind::join:
        return mk::split(alg.op(t->g1, t->g2), mk::merge(t->g2, mk::merge(t->g1, go(ctx, t->a))));
      case term_kind::fork:
        return mk::split(t->g1, mk::split(t->g2, mk::merge(alg.op(t->g1, t->g2), go(ctx, t->a))));
      case term_kind::lift: {
        TypePtr fty = infer_core(alg, calculus::gmcc, ctx, t->a);
        if (fty->kind != type_kind::fun)
          fail(errc::type_mismatch, "lift of a non-function");
        TermPtr f = shift(go(ctx, t->a), 1);
        return mk::lam("x", t_modal(t->g1, fty->left),
                       mk::split(t->g1, mk::app(f, mk::merge(t->g1, mk::var(0)))));
      }
      case term_kind::up:
        return mk::split(t->g2, mk::merge(t->g1, go(ctx, t->a)));
      default:
        return map_core(*this, ctx, t);
    }
  }
};

struct Hat {
  TermPtr go(Context& ctx, const TermPtr& t) {
    switch (t->kind) {
      case term_kind::next:
        return mk::split(Grade{1}, go(ctx, t->a));
      case term_kind::prev:
        return mk::merge(Grade{1}, go(ctx, t->a));
      default:
        return map_core(*this, ctx, t);
    }
  }
};

}  // namespace

TermPtr overline(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t) {
  infer_core(alg, calculus::gmcc, ctx, t);  // NotWellTyped surfaces here
  Context c = ctx;
  Overline tr{alg};
  return tr.go(c, t);
}

TermPtr underline(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t) {
  infer_dcc(alg, protection_mode::extended_dcce, ctx, t);
  Context c = ctx;
  Underline tr{alg};
  return tr.go(c, t);
}

TermPtr tilde(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t) {
  infer_core(alg, calculus::gmcc, ctx, t);
  Context c = ctx;
  Tilde tr{alg};
  return tr.go(c, t);
}

TermPtr hat(const Context& ctx, const TermPtr& t, Grade time) {
  infer_lcirc(ctx, t, time);
  Context c = ctx;
  Hat tr;
  return tr.go(c, t);
}

Context grade_context(const Context& ctx, Grade g) {
  Context out;
  for (const auto& e : ctx.entries()) out.push(e.name, g, e.type);
  return out;
}

}  // namespace depcalc
