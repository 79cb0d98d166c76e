#include "depcalc/observer.hpp"

#include "depcalc/rewrite.hpp"
#include "depcalc/staged.hpp"
#include "depcalc/syntax.hpp"

namespace depcalc {

namespace {
std::shared_ptr<OValue> make(ovalue_kind k) {
  auto v = std::make_shared<OValue>();
  v->kind = k;
  return v;
}
}  // namespace

OValuePtr ov_unit() {
  static OValuePtr v = make(ovalue_kind::unit);
  return v;
}
OValuePtr ov_blank() {
  static OValuePtr v = make(ovalue_kind::blank);
  return v;
}
OValuePtr ov_inj(int i, OValuePtr p) {
  auto v = make(ovalue_kind::inj);
  v->inj_index = i;
  v->a = std::move(p);
  return v;
}
OValuePtr ov_pair(OValuePtr a, OValuePtr b) {
  auto v = make(ovalue_kind::pair);
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

bool ovalue_equal(const OValuePtr& a, const OValuePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ovalue_kind::unit:
    case ovalue_kind::blank:
      return true;
    case ovalue_kind::inj:
      return a->inj_index == b->inj_index && ovalue_equal(a->a, b->a);
    case ovalue_kind::pair:
      return ovalue_equal(a->a, b->a) && ovalue_equal(a->b, b->b);
    case ovalue_kind::closure:
    case ovalue_kind::constant_fn:
      fail(errc::ill_typed, "closures are only compared through application");
  }
  return false;
}

std::string ovalue_show(const OValuePtr& v) {
  switch (v->kind) {
    case ovalue_kind::unit: return "unit";
    case ovalue_kind::blank: return "*";
    case ovalue_kind::inj:
      return "inj" + std::to_string(v->inj_index) + " " + ovalue_show(v->a);
    case ovalue_kind::pair:
      return "(" + ovalue_show(v->a) + ", " + ovalue_show(v->b) + ")";
    case ovalue_kind::closure: return "<closure>";
    case ovalue_kind::constant_fn: return "<constant>";
  }
  return "?";
}

OValuePtr canonical(const GradeAlgebra& alg, Grade level, const TypePtr& type) {
  switch (type->kind) {
    case type_kind::unit:
      return ov_unit();
    case type_kind::prod:
      return ov_pair(canonical(alg, level, type->left), canonical(alg, level, type->right));
    case type_kind::fun: {
      auto v = make(ovalue_kind::constant_fn);
      v->result_type = type->right;
      return v;
    }
    case type_kind::modal:
      if (alg.leq(type->grade, level)) return canonical(alg, level, type->right);
      return ov_blank();
    default:
      fail(errc::no_canonical,
           "type " + print_type(type, alg) + " has no canonical inhabitant; protection bug");
  }
}

namespace {

struct DcceInterp {
  const GradeAlgebra& alg;
  Grade level;
  const std::unordered_map<const Term*, TypePtr>& bind_types;

  OValuePtr apply(const OValuePtr& f, const OValuePtr& v) const {
    if (f->kind == ovalue_kind::closure) {
      std::vector<OValuePtr> env = f->env;
      env.push_back(v);
      return eval(env, f->fn->a);
    }
    if (f->kind == ovalue_kind::constant_fn) return canonical(alg, level, f->result_type);
    fail(errc::ill_typed, "application of a non-function value");
  }

  OValuePtr eval(const std::vector<OValuePtr>& env, const TermPtr& t) const {
    switch (t->kind) {
      case term_kind::var: {
        if (t->index < 0 || static_cast<std::size_t>(t->index) >= env.size())
          fail(errc::unbound_variable, "environment index out of range");
        return env[env.size() - 1 - static_cast<std::size_t>(t->index)];
      }
      case term_kind::unit:
        return ov_unit();
      case term_kind::lam: {
        auto v = make(ovalue_kind::closure);
        v->env = env;
        v->fn = t;
        return v;
      }
      case term_kind::app:
        return apply(eval(env, t->a), eval(env, t->b));
      case term_kind::pair:
        return ov_pair(eval(env, t->a), eval(env, t->b));
      case term_kind::proj: {
        OValuePtr p = eval(env, t->a);
        if (p->kind != ovalue_kind::pair) fail(errc::ill_typed, "projection from a non-pair");
        return t->index == 1 ? p->a : p->b;
      }
      case term_kind::inj:
        return ov_inj(t->index, eval(env, t->a));
      case term_kind::case_: {
        OValuePtr s = eval(env, t->a);
        if (s->kind != ovalue_kind::inj) fail(errc::ill_typed, "case on a non-injection");
        return apply(eval(env, s->inj_index == 1 ? t->b : t->c), s->a);
      }
      case term_kind::abort:
        fail(errc::ill_typed, "abort evaluated; the empty type has no values");
      case term_kind::eta:
        if (alg.leq(t->g1, level)) return eval(env, t->a);
        return ov_blank();
      case term_kind::bind: {
        if (alg.leq(t->g1, level)) {
          std::vector<OValuePtr> inner = env;
          inner.push_back(eval(env, t->a));
          return eval(inner, t->b);
        }
        auto it = bind_types.find(t.get());
        if (it == bind_types.end())
          fail(errc::ill_typed, "bind node without a recorded result type");
        return canonical(alg, level, it->second);
      }
      default:
        fail(errc::constructor_not_in_calculus, "constructor not available in dcce");
    }
  }
};

struct Stage0Interp {
  OValuePtr apply(const OValuePtr& f, const OValuePtr& v) const {
    if (f->kind != ovalue_kind::closure) fail(errc::ill_typed, "application of a non-function value");
    std::vector<OValuePtr> env = f->env;
    env.push_back(v);
    return eval(env, f->fn->a);
  }

  OValuePtr eval(const std::vector<OValuePtr>& env, const TermPtr& t) const {
    switch (t->kind) {
      case term_kind::var: {
        if (t->index < 0 || static_cast<std::size_t>(t->index) >= env.size())
          fail(errc::unbound_variable, "environment index out of range");
        return env[env.size() - 1 - static_cast<std::size_t>(t->index)];
      }
      case term_kind::unit:
        return ov_unit();
      case term_kind::lam: {
        auto v = make(ovalue_kind::closure);
        v->env = env;
        v->fn = t;
        return v;
      }
      case term_kind::app:
        return apply(eval(env, t->a), eval(env, t->b));
      case term_kind::inj:
        return ov_inj(t->index, eval(env, t->a));
      case term_kind::case_: {
        OValuePtr s = eval(env, t->a);
        if (s->kind != ovalue_kind::inj) fail(errc::ill_typed, "case on a non-injection");
        return apply(eval(env, s->inj_index == 1 ? t->b : t->c), s->a);
      }
      case term_kind::next:
        // everything from the next stage onward is absent at stage zero
        return ov_blank();
      case term_kind::prev:
        fail(errc::ill_typed, "prev reached at stage zero; typing forbids this");
      default:
        fail(errc::constructor_not_in_calculus, "constructor not available in lcirc");
    }
  }
};

OValuePtr value_term_to_ovalue(const GradeAlgebra& alg, Grade level, const TermPtr& v,
                               const std::unordered_map<const Term*, TypePtr>& none) {
  return DcceInterp{alg, level, none}.eval({}, v);
}

TermPtr bool_of_nf(const TermPtr& nf) {
  if (nf->kind == term_kind::inj && nf->a->kind == term_kind::unit) return nf;
  fail(errc::ill_typed, "normal form is not a boolean value");
}

}  // namespace

OValuePtr interpret_dcce(const GradeAlgebra& alg, Grade level, const Context& ctx,
                         const std::vector<OValuePtr>& env, const TermPtr& t,
                         const TypePtr& expected) {
  auto bind_types = annotate_bind_types(alg, protection_mode::extended_dcce, ctx, t, expected);
  return DcceInterp{alg, level, bind_types}.eval(env, t);
}

OValuePtr interpret_stage0(const std::vector<OValuePtr>& env, const TermPtr& t) {
  return Stage0Interp{}.eval(env, t);
}

NiOutcome ni_check_dcce(const GradeAlgebra& alg, const TermPtr& f, const TermPtr& a1,
                        const TermPtr& a2, Grade l) {
  Context empty;
  TypePtr fty = infer_dcc(alg, protection_mode::extended_dcce, empty, f);
  if (fty->kind != type_kind::fun)
    fail(errc::precondition_failure, "probe is not a function");
  const TypePtr& arg_ty = fty->left;
  const TypePtr& res_ty = fty->right;

  Grade observer = alg.bottom();
  if (is_bool(res_ty)) {
    if (alg.leq(l, alg.bottom()))
      fail(errc::precondition_failure, "level " + alg.grade_name(l) + " is below bottom");
  } else if (res_ty->kind == type_kind::modal && is_bool(res_ty->right)) {
    observer = res_ty->grade;
    if (alg.leq(l, observer))
      fail(errc::precondition_failure,
           "level " + alg.grade_name(l) + " flows into the result level " +
               alg.grade_name(observer));
  } else {
    fail(errc::precondition_failure, "probe result must be Bool or S[l'] Bool");
  }
  if (!protected_at(alg, protection_mode::extended_dcce, l, arg_ty))
    fail(errc::precondition_failure,
         alg.grade_name(l) + " does not protect " + print_type(arg_ty, alg));
  check_dcc(alg, protection_mode::extended_dcce, empty, a1, arg_ty);
  check_dcc(alg, protection_mode::extended_dcce, empty, a2, arg_ty);

  NiOutcome out;
  TermPtr r1 = cbv_eval(alg, mk::app(f, a1));
  TermPtr r2 = cbv_eval(alg, mk::app(f, a2));
  out.pass = alpha_equal(r1, r2);

  OValuePtr o1 = interpret_dcce(alg, observer, empty, {}, mk::app(f, a1), res_ty);
  OValuePtr o2 = interpret_dcce(alg, observer, empty, {}, mk::app(f, a2), res_ty);
  out.observer_agrees = ovalue_equal(o1, o2);

  std::unordered_map<const Term*, TypePtr> none;
  OValuePtr c1 = value_term_to_ovalue(alg, observer, r1, none);
  OValuePtr c2 = value_term_to_ovalue(alg, observer, r2, none);
  out.adequacy_agrees = ovalue_equal(o1, c1) && ovalue_equal(o2, c2);

  if (!out.pass)
    out.detail = "values differ: " + print_term(r1, alg) + " vs " + print_term(r2, alg);
  else if (!out.observer_agrees)
    out.detail = "observer views differ: " + ovalue_show(o1) + " vs " + ovalue_show(o2);
  else if (!out.adequacy_agrees)
    out.detail = "observer view disagrees with the evaluated value";
  return out;
}

NiOutcome ni_check_lcirc(const TermPtr& f, const TermPtr& b1, const TermPtr& b2) {
  Context empty;
  TypePtr fty = infer_lcirc(empty, f, Grade{0});
  if (fty->kind != type_kind::fun || fty->left->kind != type_kind::modal ||
      !is_bool(fty->right))
    fail(errc::precondition_failure, "probe must map a circle type to Bool");
  check_lcirc(empty, b1, Grade{0}, fty->left);
  check_lcirc(empty, b2, Grade{0}, fty->left);

  NiOutcome out;
  TermPtr n1 = bool_of_nf(normalize_lambda(erase(mk::app(f, b1))));
  TermPtr n2 = bool_of_nf(normalize_lambda(erase(mk::app(f, b2))));
  out.pass = alpha_equal(n1, n2);

  OValuePtr o1 = interpret_stage0({}, mk::app(f, b1));
  OValuePtr o2 = interpret_stage0({}, mk::app(f, b2));
  out.observer_agrees = ovalue_equal(o1, o2);

  auto matches = [](const TermPtr& nf, const OValuePtr& o) {
    return o->kind == ovalue_kind::inj && o->inj_index == nf->index &&
           o->a->kind == ovalue_kind::unit;
  };
  out.adequacy_agrees = matches(n1, o1) && matches(n2, o2);

  if (!out.pass) {
    GradeAlgebra nat = GradeAlgebra::naturals();
    out.detail = "values differ: " + print_term(n1, nat) + " vs " + print_term(n2, nat);
  } else if (!out.observer_agrees) {
    out.detail = "stage-zero views differ: " + ovalue_show(o1) + " vs " + ovalue_show(o2);
  } else if (!out.adequacy_agrees) {
    out.detail = "stage-zero view disagrees with the normalized value";
  }
  return out;
}

}  // namespace depcalc
