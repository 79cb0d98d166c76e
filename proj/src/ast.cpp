#include "depcalc/ast.hpp"

#include <algorithm>

namespace depcalc {

namespace {
TypePtr make_type(type_kind k, std::string base, Grade g, TypePtr l, TypePtr r) {
  auto t = std::make_shared<Type>();
  t->kind = k;
  t->base_name = std::move(base);
  t->grade = g;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}
}  // namespace

TypePtr t_unit() {
  static TypePtr t = make_type(type_kind::unit, {}, {}, nullptr, nullptr);
  return t;
}
TypePtr t_void() {
  static TypePtr t = make_type(type_kind::void_, {}, {}, nullptr, nullptr);
  return t;
}
TypePtr t_base(std::string name) { return make_type(type_kind::base, std::move(name), {}, nullptr, nullptr); }
TypePtr t_prod(TypePtr a, TypePtr b) { return make_type(type_kind::prod, {}, {}, std::move(a), std::move(b)); }
TypePtr t_sum(TypePtr a, TypePtr b) { return make_type(type_kind::sum, {}, {}, std::move(a), std::move(b)); }
TypePtr t_fun(TypePtr a, TypePtr b) { return make_type(type_kind::fun, {}, {}, std::move(a), std::move(b)); }
TypePtr t_modal(Grade g, TypePtr body) { return make_type(type_kind::modal, {}, g, nullptr, std::move(body)); }
TypePtr t_bool() {
  static TypePtr t = t_sum(t_unit(), t_unit());
  return t;
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case type_kind::unit:
    case type_kind::void_:
      return true;
    case type_kind::base:
      return a->base_name == b->base_name;
    case type_kind::modal:
      return a->grade == b->grade && type_equal(a->right, b->right);
    default:
      return type_equal(a->left, b->left) && type_equal(a->right, b->right);
  }
}

bool is_bool(const TypePtr& t) {
  return t && t->kind == type_kind::sum && t->left->kind == type_kind::unit &&
         t->right->kind == type_kind::unit;
}

std::size_t type_depth(const TypePtr& t) {
  if (!t) return 0;
  switch (t->kind) {
    case type_kind::unit:
    case type_kind::void_:
    case type_kind::base:
      return 1;
    case type_kind::modal:
      return 1 + type_depth(t->right);
    default:
      return 1 + std::max(type_depth(t->left), type_depth(t->right));
  }
}

namespace mk {

namespace {
std::shared_ptr<Term> make(term_kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}
}  // namespace

TermPtr var(int index, std::string hint) {
  auto t = make(term_kind::var);
  t->index = index;
  t->hint = std::move(hint);
  return t;
}
TermPtr lam(std::string hint, std::optional<TypePtr> annot, TermPtr body) {
  auto t = make(term_kind::lam);
  t->hint = std::move(hint);
  t->annot = std::move(annot);
  t->a = std::move(body);
  return t;
}
TermPtr app(TermPtr f, TermPtr arg) {
  auto t = make(term_kind::app);
  t->a = std::move(f);
  t->b = std::move(arg);
  return t;
}
TermPtr pair(TermPtr a, TermPtr b) {
  auto t = make(term_kind::pair);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
TermPtr proj(int i, TermPtr a) {
  auto t = make(term_kind::proj);
  t->index = i;
  t->a = std::move(a);
  return t;
}
TermPtr inj(int i, TermPtr a) {
  auto t = make(term_kind::inj);
  t->index = i;
  t->a = std::move(a);
  return t;
}
TermPtr case_(TermPtr scrut, TermPtr b1, TermPtr b2) {
  auto t = make(term_kind::case_);
  t->a = std::move(scrut);
  t->b = std::move(b1);
  t->c = std::move(b2);
  return t;
}
TermPtr abort(TermPtr a) {
  auto t = make(term_kind::abort);
  t->a = std::move(a);
  return t;
}
TermPtr unit() {
  static TermPtr t = make(term_kind::unit);
  return t;
}
TermPtr tru() {
  static TermPtr t = inj(1, unit());
  return t;
}
TermPtr fls() {
  static TermPtr t = inj(2, unit());
  return t;
}
TermPtr ret(TermPtr a) {
  auto t = make(term_kind::ret);
  t->a = std::move(a);
  return t;
}
TermPtr extr(TermPtr a) {
  auto t = make(term_kind::extr);
  t->a = std::move(a);
  return t;
}
TermPtr lift(Grade m, TermPtr f) {
  auto t = make(term_kind::lift);
  t->g1 = m;
  t->a = std::move(f);
  return t;
}
TermPtr join(Grade m1, Grade m2, TermPtr a) {
  auto t = make(term_kind::join);
  t->g1 = m1;
  t->g2 = m2;
  t->a = std::move(a);
  return t;
}
TermPtr fork(Grade m1, Grade m2, TermPtr a) {
  auto t = make(term_kind::fork);
  t->g1 = m1;
  t->g2 = m2;
  t->a = std::move(a);
  return t;
}
TermPtr up(Grade m1, Grade m2, TermPtr a) {
  auto t = make(term_kind::up);
  t->g1 = m1;
  t->g2 = m2;
  t->a = std::move(a);
  return t;
}
TermPtr eta(Grade l, TermPtr a) {
  auto t = make(term_kind::eta);
  t->g1 = l;
  t->a = std::move(a);
  return t;
}
TermPtr bind(Grade l, std::string hint, TermPtr bound, TermPtr body) {
  auto t = make(term_kind::bind);
  t->g1 = l;
  t->hint = std::move(hint);
  t->a = std::move(bound);
  t->b = std::move(body);
  return t;
}
TermPtr next(TermPtr a) {
  auto t = make(term_kind::next);
  t->a = std::move(a);
  return t;
}
TermPtr prev(TermPtr a) {
  auto t = make(term_kind::prev);
  t->a = std::move(a);
  return t;
}
TermPtr split(Grade m, TermPtr a) {
  auto t = make(term_kind::split);
  t->g1 = m;
  t->a = std::move(a);
  return t;
}
TermPtr merge(Grade m, TermPtr a) {
  auto t = make(term_kind::merge);
  t->g1 = m;
  t->a = std::move(a);
  return t;
}

}  // namespace mk

namespace {

bool alpha_eq(const TermPtr& a, const TermPtr& b, bool with_annot) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->index != b->index) return false;
  if (a->g1 != b->g1 || a->g2 != b->g2) return false;
  if (with_annot && a->kind == term_kind::lam) {
    if (a->annot.has_value() != b->annot.has_value()) return false;
    if (a->annot && !type_equal(*a->annot, *b->annot)) return false;
  }
  return alpha_eq(a->a, b->a, with_annot) && alpha_eq(a->b, b->b, with_annot) &&
         alpha_eq(a->c, b->c, with_annot);
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) { return alpha_eq(a, b, true); }
bool alpha_equal_mod_annot(const TermPtr& a, const TermPtr& b) { return alpha_eq(a, b, false); }

namespace {

// How many binders does each child sit under?
int binders_for_child(const Term& t, int which) {
  if (t.kind == term_kind::lam && which == 0) return 1;
  if (t.kind == term_kind::bind && which == 1) return 1;
  return 0;
}

template <typename F>
TermPtr map_children(const TermPtr& t, F&& f) {
  TermPtr na = t->a ? f(t->a, binders_for_child(*t, 0)) : nullptr;
  TermPtr nb = t->b ? f(t->b, binders_for_child(*t, 1)) : nullptr;
  TermPtr nc = t->c ? f(t->c, binders_for_child(*t, 2)) : nullptr;
  if (na == t->a && nb == t->b && nc == t->c) return t;
  auto n = std::make_shared<Term>(*t);
  n->a = std::move(na);
  n->b = std::move(nb);
  n->c = std::move(nc);
  return n;
}

}  // namespace

TermPtr shift(const TermPtr& t, int by, int cutoff) {
  if (!t) return t;
  if (t->kind == term_kind::var) {
    if (t->index < cutoff) return t;
    return mk::var(t->index + by, t->hint);
  }
  return map_children(t, [&](const TermPtr& c, int binders) { return shift(c, by, cutoff + binders); });
}

TermPtr subst(const TermPtr& t, int j, const TermPtr& s) {
  if (!t) return t;
  if (t->kind == term_kind::var) {
    if (t->index == j) return s;
    if (t->index > j) return mk::var(t->index - 1, t->hint);
    return t;
  }
  return map_children(t, [&](const TermPtr& c, int binders) {
    return binders == 0 ? subst(c, j, s) : subst(c, j + binders, shift(s, binders));
  });
}

bool has_free_var(const TermPtr& t, int index) {
  if (!t) return false;
  if (t->kind == term_kind::var) return t->index == index;
  bool found = false;
  if (t->a) found = found || has_free_var(t->a, index + binders_for_child(*t, 0));
  if (t->b) found = found || has_free_var(t->b, index + binders_for_child(*t, 1));
  if (t->c) found = found || has_free_var(t->c, index + binders_for_child(*t, 2));
  return found;
}

namespace {
bool closed_below(const TermPtr& t, int depth) {
  if (!t) return true;
  if (t->kind == term_kind::var) return t->index < depth;
  return closed_below(t->a, depth + binders_for_child(*t, 0)) &&
         closed_below(t->b, depth + binders_for_child(*t, 1)) &&
         closed_below(t->c, depth + binders_for_child(*t, 2));
}
}  // namespace

bool is_closed(const TermPtr& t) { return closed_below(t, 0); }

std::size_t term_size(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_size(t->a) + term_size(t->b) + term_size(t->c);
}

TermPtr erase(const TermPtr& t) {
  if (!t) return t;
  switch (t->kind) {
    case term_kind::var:
    case term_kind::unit:
      return t;
    case term_kind::lam: {
      auto body = erase(t->a);
      // annotations are dropped so erased terms compare as bare lambda terms
      if (!t->annot && body == t->a) return t;
      return mk::lam(t->hint, std::nullopt, body);
    }
    case term_kind::app:
      return mk::app(erase(t->a), erase(t->b));
    case term_kind::pair:
      return mk::pair(erase(t->a), erase(t->b));
    case term_kind::proj:
      return mk::proj(t->index, erase(t->a));
    case term_kind::inj:
      return mk::inj(t->index, erase(t->a));
    case term_kind::case_:
      return mk::case_(erase(t->a), erase(t->b), erase(t->c));
    case term_kind::abort:
      return mk::abort(erase(t->a));
    case term_kind::lift:
      return erase(t->a);
    case term_kind::ret:
    case term_kind::extr:
    case term_kind::join:
    case term_kind::fork:
    case term_kind::up:
    case term_kind::eta:
    case term_kind::next:
    case term_kind::prev:
    case term_kind::split:
    case term_kind::merge:
      return erase(t->a);
    case term_kind::bind:
      // |bind x = a in b| = |b|{|a|/x}
      return subst(erase(t->b), 0, erase(t->a));
  }
  return t;
}

bool is_erased_fragment(const TermPtr& t) {
  if (!t) return true;
  switch (t->kind) {
    case term_kind::var:
    case term_kind::unit:
      return true;
    case term_kind::lam:
      return !t->annot && is_erased_fragment(t->a);
    case term_kind::app:
    case term_kind::pair:
    case term_kind::case_:
      return is_erased_fragment(t->a) && is_erased_fragment(t->b) && is_erased_fragment(t->c);
    case term_kind::proj:
    case term_kind::inj:
    case term_kind::abort:
      return is_erased_fragment(t->a);
    default:
      return false;
  }
}

const char* calculus_name(calculus c) {
  switch (c) {
    case calculus::gmc: return "gmc";
    case calculus::gcc: return "gcc";
    case calculus::gmcc: return "gmcc";
    case calculus::dcc: return "dcc";
    case calculus::dcce: return "dcce";
    case calculus::lcirc: return "lcirc";
    case calculus::gmcce: return "gmcce";
  }
  return "?";
}

std::optional<calculus> calculus_by_name(const std::string& name) {
  for (calculus c : {calculus::gmc, calculus::gcc, calculus::gmcc, calculus::dcc,
                     calculus::dcce, calculus::lcirc, calculus::gmcce})
    if (name == calculus_name(c)) return c;
  return std::nullopt;
}

bool calculus_graded(calculus c) { return c == calculus::lcirc || c == calculus::gmcce; }

}  // namespace depcalc
