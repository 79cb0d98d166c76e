#include "depcalc/rewrite.hpp"

#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {

bool is_lam(const TermPtr& t) { return t && t->kind == term_kind::lam; }
bool is_identity_lam(const TermPtr& t) {
  return is_lam(t) && t->a->kind == term_kind::var && t->a->index == 0;
}

// A rewrite applicable at the root, or nullptr.
struct RuleHit {
  const char* rule = nullptr;
  TermPtr result;
  explicit operator bool() const { return rule != nullptr; }
};

RuleHit hit(const char* rule, TermPtr result) { return RuleHit{rule, std::move(result)}; }

RuleHit beta_at_root(const TermPtr& t) {
  switch (t->kind) {
    case term_kind::app:
      if (is_lam(t->a)) return hit("beta", subst(t->a->a, 0, t->b));
      break;
    case term_kind::proj:
      if (t->a->kind == term_kind::pair)
        return hit("beta-proj", t->index == 1 ? t->a->a : t->a->b);
      break;
    case term_kind::case_:
      if (t->a->kind == term_kind::inj)
        return hit("beta-case", mk::app(t->a->index == 1 ? t->b : t->c, t->a->a));
      break;
    default:
      break;
  }
  return {};
}

RuleHit eta_at_root(const TermPtr& t) {
  if (is_lam(t) && t->a->kind == term_kind::app && t->a->b->kind == term_kind::var &&
      t->a->b->index == 0 && !has_free_var(t->a->a, 0))
    return hit("eta-fun", shift(t->a->a, -1));
  if (t->kind == term_kind::pair && t->a->kind == term_kind::proj && t->a->index == 1 &&
      t->b->kind == term_kind::proj && t->b->index == 2 &&
      alpha_equal_mod_annot(t->a->a, t->b->a))
    return hit("eta-pair", t->a->a);
  return {};
}

// Modal rules. Applied at the root, most specific patterns first.
RuleHit modal_at_root(const GradeAlgebra& alg, const TermPtr& t) {
  switch (t->kind) {
    case term_kind::up: {
      if (t->g1 == t->g2) return hit("up-refl", t->a);
      if (t->a->kind == term_kind::up)
        return hit("up-trans", mk::up(t->a->g1, t->g2, t->a->a));
      break;
    }
    case term_kind::extr:
      if (t->a->kind == term_kind::ret) return hit("extr-ret", t->a->a);
      break;
    case term_kind::ret:
      if (t->a->kind == term_kind::extr) return hit("ret-extr", t->a->a);
      break;
    case term_kind::fork:
      if (t->a->kind == term_kind::join && t->a->g1 == t->g1 && t->a->g2 == t->g2)
        return hit("fork-join", t->a->a);
      // at the unit grade the comultiplication is the monad unit
      if (t->g1 == alg.unit()) return hit("fork-unit", mk::ret(t->a));
      // naturality of the comultiplication: fork distributes over lift
      if (t->a->kind == term_kind::app && t->a->a->kind == term_kind::lift &&
          t->a->a->g1 == alg.op(t->g1, t->g2))
        return hit("fork-lift",
                   mk::app(mk::lift(t->g1, mk::lift(t->g2, t->a->a->a)),
                           mk::fork(t->g1, t->g2, t->a->b)));
      // naturality of the comultiplication in its first grade: a coercion
      // below a fork becomes a coercion of the outer layer
      if (t->a->kind == term_kind::up && t->a->g2 == alg.op(t->g1, t->g2) && alg.is_finite()) {
        for (Grade m1 : alg.elements())
          if (alg.op(m1, t->g2) == t->a->g1 && alg.leq(m1, t->g1))
            return hit("fork-up", mk::up(m1, t->g1, mk::fork(m1, t->g2, t->a->a)));
      }
      break;
    case term_kind::split:
      if (t->a->kind == term_kind::merge && t->a->g1 == t->g1) return hit("split-merge", t->a->a);
      break;
    case term_kind::merge:
      if (t->a->kind == term_kind::split && t->a->g1 == t->g1) return hit("merge-split", t->a->a);
      break;
    case term_kind::lift:
      if (is_identity_lam(t->a))
        return hit("lift-id", mk::lam(t->a->hint, std::nullopt, mk::var(0)));
      // a lifted wrap-from-below is the comultiplication after a coercion:
      //   lift[m] (\x. up[1,m2] (ret x))  ==  \x. fork[m,m2] (up[m,m*m2] x)
      if (is_lam(t->a)) {
        const TermPtr& body = t->a->a;
        if (body->kind == term_kind::up && body->g1 == alg.unit() &&
            body->a->kind == term_kind::ret && body->a->a->kind == term_kind::var &&
            body->a->a->index == 0)
          return hit("lift-up-ret",
                     mk::lam(t->a->hint, std::nullopt,
                             mk::fork(t->g1, body->g2,
                                      mk::up(t->g1, alg.op(t->g1, body->g2), mk::var(0)))));
        // the special case without the coercion: lifting the unit is fork
        if (body->kind == term_kind::ret && body->a->kind == term_kind::var &&
            body->a->index == 0)
          return hit("lift-ret",
                     mk::lam(t->a->hint, std::nullopt, mk::fork(t->g1, alg.unit(), mk::var(0))));
      }
      // the unit-grade layer is invertible: its functorial action is
      // conjugation by the unit and counit
      if (t->g1 == alg.unit())
        return hit("lift-unit",
                   mk::lam("x", std::nullopt,
                           mk::ret(mk::app(shift(t->a, 1), mk::extr(mk::var(0))))));
      break;
    case term_kind::join: {
      if (t->a->kind == term_kind::fork && t->a->g1 == t->g1 && t->a->g2 == t->g2)
        return hit("join-fork", t->a->a);
      // at the unit grade the multiplication is the comonad counit
      if (t->g1 == alg.unit()) return hit("join-unit", mk::extr(t->a));
      if (t->a->kind == term_kind::app && t->a->a->kind == term_kind::lift &&
          t->a->a->g1 == t->g1) {
        const TermPtr& fn = t->a->a->a;   // the lifted function
        const TermPtr& arg = t->a->b;     // the lifted function's argument
        // graded bind made of join/lift; the monad laws are phrased on it
        if (is_lam(fn)) {
          const TermPtr& body = fn->a;
          // right unit fused with the functor law:
          //   a >>= (\x. ret b)  ==  (lift (\x. b)) a
          if (body->kind == term_kind::ret && t->g2 == alg.unit())
            return hit("bind-ret",
                       mk::app(mk::lift(t->g1, mk::lam(fn->hint, std::nullopt, body->a)), arg));
          // naturality of up in the bind's second grade, pushing up outward
          if (body->kind == term_kind::up && body->g2 == t->g2)
            return hit("bind-up-right",
                       mk::up(alg.op(t->g1, body->g1), alg.op(t->g1, t->g2),
                              mk::join(t->g1, body->g1,
                                       mk::app(mk::lift(t->g1,
                                                        mk::lam(fn->hint, std::nullopt, body->a)),
                                               arg))));
          // reassociation of a split point: join o lift fork == fork o join
          if (body->kind == term_kind::fork && body->a->kind == term_kind::var &&
              body->a->index == 0 && body->g1 == t->g2)
            return hit("join-lift-fork",
                       mk::fork(alg.op(t->g1, body->g1), body->g2,
                                mk::join(t->g1, alg.op(body->g1, body->g2), arg)));
        }
        // naturality of up in the bind's first grade
        if (arg->kind == term_kind::up && arg->g2 == t->g1)
          return hit("bind-up-left",
                     mk::up(alg.op(arg->g1, t->g2), alg.op(t->g1, t->g2),
                            mk::join(arg->g1, t->g2,
                                     mk::app(mk::lift(arg->g1, fn), arg->a))));
        // naturality of the multiplication: nested lifts fuse through join
        if (fn->kind == term_kind::lift && fn->g1 == t->g2)
          return hit("join-lift-lift",
                     mk::app(mk::lift(alg.op(t->g1, t->g2), fn->a), mk::join(t->g1, t->g2, arg)));
      }
      break;
    }
    case term_kind::app:
      // the grade coercion is a natural transformation, so it commutes with
      // every lifted function
      if (t->a->kind == term_kind::lift && t->b->kind == term_kind::up &&
          t->b->g2 == t->a->g1)
        return hit("lift-up-commute",
                   mk::up(t->b->g1, t->a->g1,
                          mk::app(mk::lift(t->b->g1, t->a->a), t->b->a)));
      // functor fusion: (lift g) ((lift f) a) == (lift (g . f)) a
      if (t->a->kind == term_kind::lift && t->b->kind == term_kind::app &&
          t->b->a->kind == term_kind::lift && t->b->a->g1 == t->a->g1) {
        TermPtr g = shift(t->a->a, 1);
        TermPtr f = shift(t->b->a->a, 1);
        return hit("lift-fuse",
                   mk::app(mk::lift(t->a->g1,
                                    mk::lam("x", std::nullopt,
                                            mk::app(g, mk::app(f, mk::var(0))))),
                           t->b->b));
      }
      break;
    default:
      break;
  }
  return {};
}

using RootRule = RuleHit (*)(const GradeAlgebra&, const TermPtr&);

RuleHit lambda_rules(const GradeAlgebra&, const TermPtr& t) {
  if (auto h = beta_at_root(t)) return h;
  return eta_at_root(t);
}

RuleHit modal_rules(const GradeAlgebra& alg, const TermPtr& t) {
  if (auto h = modal_at_root(alg, t)) return h;
  if (auto h = beta_at_root(t)) return h;
  return eta_at_root(t);
}

// Leftmost-outermost application of `rule` somewhere in `t`.
struct Stepper {
  const GradeAlgebra& alg;
  RootRule rule;
  std::vector<RewriteStep>* trace = nullptr;

  TermPtr step(const TermPtr& t) const {
    if (auto h = rule(alg, t)) {
      if (trace) trace->push_back({h.rule, t, h.result});
      return h.result;
    }
    for (TermPtr Term::*child : {&Term::a, &Term::b, &Term::c}) {
      const TermPtr& c = (*t).*child;
      if (!c) continue;
      if (TermPtr r = step(c)) {
        auto n = std::make_shared<Term>(*t);
        (*n).*child = r;
        return n;
      }
    }
    return nullptr;
  }

  TermPtr run(TermPtr t, std::size_t fuel) const {
    for (std::size_t i = 0; i < fuel; i++) {
      TermPtr n = step(t);
      if (!n) return t;
      t = std::move(n);
    }
    fail(errc::fuel_exhausted, "normalization did not finish within the step budget");
  }
};

}  // namespace

TermPtr normalize_lambda(const TermPtr& t, std::size_t fuel) {
  static GradeAlgebra nat = GradeAlgebra::naturals();
  return Stepper{nat, lambda_rules}.run(t, fuel);
}

TermPtr modal_normalize(const GradeAlgebra& alg, const TermPtr& t, std::size_t fuel) {
  return Stepper{alg, modal_rules}.run(t, fuel);
}

TermPtr modal_normalize_traced(const GradeAlgebra& alg, const TermPtr& t,
                               std::vector<RewriteStep>& steps, std::size_t fuel) {
  return Stepper{alg, modal_rules, &steps}.run(t, fuel);
}

// ---------------------------------------------------------------------------
// Call-by-value evaluation.
// ---------------------------------------------------------------------------

bool is_cbv_value(const TermPtr& t) {
  switch (t->kind) {
    case term_kind::lam:
    case term_kind::unit:
      return true;
    case term_kind::pair:
      return is_cbv_value(t->a) && is_cbv_value(t->b);
    case term_kind::inj:
    case term_kind::eta:
      return is_cbv_value(t->a);
    default:
      return false;
  }
}

TermPtr cbv_step(const GradeAlgebra& alg, const TermPtr& t) {
  if (is_cbv_value(t)) return nullptr;
  auto inner = [&](TermPtr Term::*child) -> TermPtr {
    TermPtr r = cbv_step(alg, (*t).*child);
    if (!r) return nullptr;
    auto n = std::make_shared<Term>(*t);
    (*n).*child = r;
    return n;
  };
  switch (t->kind) {
    case term_kind::app: {
      if (!is_cbv_value(t->a)) return inner(&Term::a);
      if (!is_cbv_value(t->b)) return inner(&Term::b);
      if (is_lam(t->a)) return subst(t->a->a, 0, t->b);
      fail(errc::stuck_term, "application of a non-function value");
    }
    case term_kind::pair:
      return !is_cbv_value(t->a) ? inner(&Term::a) : inner(&Term::b);
    case term_kind::inj:
    case term_kind::eta:
      return inner(&Term::a);
    case term_kind::proj: {
      if (!is_cbv_value(t->a)) return inner(&Term::a);
      if (t->a->kind != term_kind::pair) fail(errc::stuck_term, "projection from a non-pair value");
      return t->index == 1 ? t->a->a : t->a->b;
    }
    case term_kind::case_: {
      if (!is_cbv_value(t->a)) return inner(&Term::a);
      if (t->a->kind != term_kind::inj) fail(errc::stuck_term, "case on a non-injection value");
      return mk::app(t->a->index == 1 ? t->b : t->c, t->a->a);
    }
    case term_kind::bind: {
      if (!is_cbv_value(t->a)) return inner(&Term::a);  // step the bound term first
      if (t->a->kind == term_kind::eta && t->a->g1 == t->g1)
        return subst(t->b, 0, t->a->a);  // bind beta
      fail(errc::stuck_term, "bind of a non-eta value");
    }
    case term_kind::abort:
      if (!is_cbv_value(t->a)) return inner(&Term::a);
      fail(errc::stuck_term, "abort reached a value of the empty type");
    default:
      fail(errc::stuck_term, "no evaluation rule applies");
  }
}

TermPtr cbv_eval(const GradeAlgebra& alg, const TermPtr& t, std::size_t fuel) {
  if (!is_closed(t)) fail(errc::precondition_failure, "cbv_eval needs a closed term");
  TermPtr cur = t;
  for (std::size_t i = 0; i < fuel; i++) {
    TermPtr n = cbv_step(alg, cur);
    if (!n) return cur;
    cur = std::move(n);
  }
  fail(errc::fuel_exhausted, "evaluation did not finish within the step budget");
}

// ---------------------------------------------------------------------------
// Equality.
// ---------------------------------------------------------------------------

const char* verdict_name(equality_verdict v) {
  switch (v) {
    case equality_verdict::equal_full: return "EqualFull";
    case equality_verdict::equal_up_to_erasure: return "EqualUpToErasure";
    case equality_verdict::not_equal: return "NotEqual";
    case equality_verdict::undecided: return "Undecided";
  }
  return "?";
}

namespace {

// Eta-long form at a known type, for graded judgements: the modal type has
// genuine eta (split[m] (merge[m] a) == a) and Unit is terminal, so normal
// forms are compared after type-directed expansion. Input must be in modal
// normal form; neutrals stay beta-normal because expansion only applies
// destructors to non-constructors.
TermPtr eta_expand_graded(const TermPtr& t, const TypePtr& ty) {
  switch (ty->kind) {
    case type_kind::unit:
      return mk::unit();
    case type_kind::fun: {
      TermPtr body = is_lam(t) ? t->a : mk::app(shift(t, 1), mk::var(0));
      std::string hint = is_lam(t) ? t->hint : "x";
      return mk::lam(hint, std::nullopt, eta_expand_graded(body, ty->right));
    }
    case type_kind::prod: {
      TermPtr a = t->kind == term_kind::pair ? t->a : mk::proj(1, t);
      TermPtr b = t->kind == term_kind::pair ? t->b : mk::proj(2, t);
      return mk::pair(eta_expand_graded(a, ty->left), eta_expand_graded(b, ty->right));
    }
    case type_kind::modal: {
      TermPtr body = (t->kind == term_kind::split && t->g1 == ty->grade)
                         ? t->a
                         : mk::merge(ty->grade, t);
      return mk::split(ty->grade, eta_expand_graded(body, ty->right));
    }
    default:
      return t;
  }
}

}  // namespace

EqualityResult decide_equal(const GradeAlgebra& alg, calculus calc, const TermPtr& t1,
                            const TermPtr& t2, const TypePtr& type, std::optional<Grade>,
                            std::size_t fuel) {
  try {
    TermPtr n1 = modal_normalize(alg, t1, fuel);
    TermPtr n2 = modal_normalize(alg, t2, fuel);
    if (alpha_equal_mod_annot(n1, n2)) return {equality_verdict::equal_full, "modal normal forms agree"};
    if (calc == calculus::gmcce && type) {
      TermPtr e1 = eta_expand_graded(n1, type);
      TermPtr e2 = eta_expand_graded(n2, type);
      if (alpha_equal_mod_annot(e1, e2))
        return {equality_verdict::equal_full, "eta-long forms agree"};
    }
    TermPtr l1 = normalize_lambda(erase(t1), fuel);
    TermPtr l2 = normalize_lambda(erase(t2), fuel);
    if (alpha_equal_mod_annot(l1, l2))
      return {equality_verdict::equal_up_to_erasure, "erasures are beta-eta equal"};
    return {equality_verdict::not_equal, "erased normal forms differ"};
  } catch (const error& e) {
    if (e.code() == errc::fuel_exhausted) return {equality_verdict::undecided, e.what()};
    throw;
  }
}

}  // namespace depcalc
