#include "depcalc/gen.hpp"

#include "depcalc/staged.hpp"

namespace depcalc {

int TermGen::pick(int n) {
  if (n <= 1) return 0;
  return static_cast<int>(rng_() % static_cast<std::uint64_t>(n));
}

Grade TermGen::random_grade() {
  if (alg_.kind() == algebra_kind::naturals) return Grade{static_cast<std::uint32_t>(pick(3))};
  return Grade{static_cast<std::uint32_t>(pick(static_cast<int>(alg_.size())))};
}

Grade TermGen::random_time() { return Grade{static_cast<std::uint32_t>(pick(3))}; }

TypePtr TermGen::random_type(int depth) {
  int roll = pick(depth <= 1 ? 2 : 6);
  switch (roll) {
    case 0: return t_unit();
    case 1: return t_bool();
    case 2: return t_modal(random_grade(), random_type(depth - 1));
    case 3: return t_prod(random_type(depth - 1), random_type(depth - 1));
    case 4: return t_fun(random_type(depth - 1), random_type(depth - 1));
    default: return t_modal(random_grade(), random_type(depth - 1));
  }
}

TypePtr TermGen::menu_type() { return random_type(2); }

TermPtr TermGen::closed_inhabitant(calculus calc, const TypePtr& type) {
  switch (type->kind) {
    case type_kind::unit:
      return mk::unit();
    case type_kind::sum:
      return mk::inj(1, closed_inhabitant(calc, type->left));
    case type_kind::prod:
      return mk::pair(closed_inhabitant(calc, type->left), closed_inhabitant(calc, type->right));
    case type_kind::fun:
      return mk::lam("x", type->left, shift(closed_inhabitant(calc, type->right), 1));
    case type_kind::modal: {
      TermPtr body = closed_inhabitant(calc, type->right);
      switch (calc) {
        case calculus::dcc:
        case calculus::dcce:
          return mk::eta(type->grade, body);
        case calculus::lcirc:
          // the circle: value available one stage later
          return mk::next(body);
        case calculus::gmcce:
          return mk::split(type->grade, body);
        case calculus::gmc:
        case calculus::gmcc:
          if (type->grade == alg_.unit()) return mk::ret(body);
          if (alg_.is_semilattice())
            return mk::up(alg_.bottom(), type->grade, mk::ret(body));
          fail(errc::precondition_failure, "no closed inhabitant at this grade");
        default:
          fail(errc::precondition_failure, "no modal introduction in this calculus");
      }
    }
    default:
      fail(errc::precondition_failure, "type has no canonical inhabitant");
  }
}

std::vector<GenItem> TermGen::pool(calculus calc, const Context& ctx, int steps) {
  const bool graded = calculus_graded(calc);
  std::vector<GenItem> pool;

  auto push = [&](TermPtr t, TypePtr ty, std::optional<Grade> g) {
    if (pool.size() > 256) return;
    pool.push_back({std::move(t), std::move(ty), g});
  };
  auto any = [&]() -> const GenItem& { return pool[static_cast<std::size_t>(pick(static_cast<int>(pool.size())))]; };

  // seeds
  if (graded) {
    if (calc == calculus::lcirc) {
      for (int n = 0; n < 3; n++) push(mk::unit(), t_unit(), Grade{static_cast<std::uint32_t>(n)});
      for (int n = 0; n < 3; n++) {
        push(mk::tru(), t_bool(), Grade{static_cast<std::uint32_t>(n)});
        push(mk::fls(), t_bool(), Grade{static_cast<std::uint32_t>(n)});
      }
    } else {
      for (Grade g : alg_.elements()) {
        push(mk::unit(), t_unit(), g);
        push(mk::tru(), t_bool(), g);
      }
    }
  } else {
    push(mk::unit(), t_unit(), std::nullopt);
    push(mk::tru(), t_bool(), std::nullopt);
    push(mk::fls(), t_bool(), std::nullopt);
  }
  for (std::size_t i = 0; i < ctx.size(); i++) {
    const CtxEntry* e = ctx.lookup(static_cast<int>(i));
    push(mk::var(static_cast<int>(i), e->name), e->type, e->grade);
  }

  auto same_judgement = [&](const GenItem& a, const GenItem& b) {
    return (!graded && !a.grade && !b.grade) || (a.grade && b.grade && *a.grade == *b.grade);
  };

  for (int step = 0; step < steps; step++) {
    int production = pick(12);
    const GenItem& x = any();
    switch (production) {
      case 0: {  // pair
        if (calc == calculus::lcirc) break;
        const GenItem& y = any();
        if (!same_judgement(x, y)) break;
        push(mk::pair(x.term, y.term), t_prod(x.type, y.type), x.grade);
        break;
      }
      case 1: {  // proj
        if (calc == calculus::lcirc) break;
        if (x.type->kind != type_kind::prod) break;
        int i = 1 + pick(2);
        push(mk::proj(i, x.term), i == 1 ? x.type->left : x.type->right, x.grade);
        break;
      }
      case 2: {  // inj; only Bool-shaped sums synthesize, so stay within them
        if (x.type->kind != type_kind::unit) break;
        int i = 1 + pick(2);
        push(mk::inj(i, x.term), t_bool(), x.grade);
        break;
      }
      case 3: {  // app
        if (x.type->kind != type_kind::fun) break;
        for (int tries = 0; tries < 4; tries++) {
          const GenItem& y = any();
          if (same_judgement(x, y) && type_equal(x.type->left, y.type)) {
            push(mk::app(x.term, y.term), x.type->right, x.grade);
            break;
          }
        }
        break;
      }
      case 4: {  // lam: grow a small inner pool under a fresh binder
        TypePtr dom = menu_type();
        if (calc == calculus::lcirc) {
          // circle-only modal layers in this calculus
          std::function<TypePtr(const TypePtr&)> fix = [&](const TypePtr& t) -> TypePtr {
            switch (t->kind) {
              case type_kind::modal: return t_modal(Grade{1}, fix(t->right));
              case type_kind::prod: return t_sum(fix(t->left), fix(t->right));
              case type_kind::fun: return t_fun(fix(t->left), fix(t->right));
              case type_kind::sum: return t_sum(fix(t->left), fix(t->right));
              default: return t;
            }
          };
          dom = fix(dom);
        }
        std::optional<Grade> at = graded ? std::optional<Grade>(calc == calculus::lcirc
                                                                    ? random_time()
                                                                    : random_grade())
                                         : std::nullopt;
        Context inner = ctx;
        if (graded)
          inner.push("x", *at, dom);
        else
          inner.push("x", dom);
        auto sub = pool_inner(calc, inner, steps / 3);
        for (int tries = 0; tries < 6 && !sub.empty(); tries++) {
          const GenItem& b = sub[static_cast<std::size_t>(pick(static_cast<int>(sub.size())))];
          if (graded && !(b.grade && *b.grade == *at)) continue;
          push(mk::lam("x", dom, b.term), t_fun(dom, b.type), at);
          break;
        }
        break;
      }
      case 5: {  // case on a sum, with branch functions from the pool
        if (x.type->kind != type_kind::sum) break;
        TermPtr f1, f2;
        TypePtr res;
        for (int tries = 0; tries < 6; tries++) {
          const GenItem& y = any();
          if (!same_judgement(x, y) || y.type->kind != type_kind::fun) continue;
          if (!res && type_equal(y.type->left, x.type->left)) {
            f1 = y.term;
            res = y.type->right;
          } else if (res && !f2 && type_equal(y.type->left, x.type->right) &&
                     type_equal(y.type->right, res)) {
            f2 = y.term;
          }
        }
        if (f1 && f2) push(mk::case_(x.term, f1, f2), res, x.grade);
        break;
      }
      case 6: {  // modal intro
        if (calc == calculus::gmc || calc == calculus::gmcc) {
          push(mk::ret(x.term), t_modal(alg_.unit(), x.type), x.grade);
        } else if (calc == calculus::dcc || calc == calculus::dcce) {
          Grade l = random_grade();
          push(mk::eta(l, x.term), t_modal(l, x.type), x.grade);
        } else if (calc == calculus::lcirc) {
          if (x.grade && x.grade->v >= 1)
            push(mk::next(x.term), t_modal(Grade{1}, x.type), Grade{x.grade->v - 1});
        } else if (calc == calculus::gmcce) {
          // split at a random factorization of the item's grade
          std::vector<std::pair<Grade, Grade>> facts;
          for (Grade m1 : alg_.elements())
            for (Grade m2 : alg_.elements())
              if (alg_.op(m1, m2) == *x.grade) facts.push_back({m1, m2});
          if (!facts.empty()) {
            auto [m1, m2] = facts[static_cast<std::size_t>(pick(static_cast<int>(facts.size())))];
            push(mk::split(m2, x.term), t_modal(m2, x.type), m1);
          }
        }
        break;
      }
      case 7: {  // modal elim
        if (x.type->kind != type_kind::modal) break;
        if ((calc == calculus::gcc || calc == calculus::gmcc) && x.type->grade == alg_.unit()) {
          push(mk::extr(x.term), x.type->right, x.grade);
        } else if (calc == calculus::lcirc) {
          if (x.type->grade == Grade{1})
            push(mk::prev(x.term), x.type->right, Grade{x.grade->v + 1});
        } else if (calc == calculus::gmcce) {
          push(mk::merge(x.type->grade, x.term), x.type->right,
               alg_.op(*x.grade, x.type->grade));
        }
        break;
      }
      case 8: {  // lift
        if (calc == calculus::dcc || calc == calculus::dcce || graded) break;
        if (x.type->kind != type_kind::fun) break;
        Grade m = random_grade();
        push(mk::lift(m, x.term),
             t_fun(t_modal(m, x.type->left), t_modal(m, x.type->right)), x.grade);
        break;
      }
      case 9: {  // join / bind
        if (calc == calculus::gmc || calc == calculus::gmcc) {
          if (x.type->kind == type_kind::modal && x.type->right->kind == type_kind::modal)
            push(mk::join(x.type->grade, x.type->right->grade, x.term),
                 t_modal(alg_.op(x.type->grade, x.type->right->grade), x.type->right->right),
                 x.grade);
        } else if (calc == calculus::dcc || calc == calculus::dcce) {
          if (x.type->kind != type_kind::modal) break;
          Grade l = x.type->grade;
          Context inner = ctx;
          inner.push("y", x.type->right);
          auto sub = pool_inner(calc, inner, steps / 3);
          protection_mode mode = calc == calculus::dcc ? protection_mode::plain_dcc
                                                       : protection_mode::extended_dcce;
          for (int tries = 0; tries < 8 && !sub.empty(); tries++) {
            const GenItem& b = sub[static_cast<std::size_t>(pick(static_cast<int>(sub.size())))];
            if (protected_at(alg_, mode, l, b.type)) {
              push(mk::bind(l, "y", x.term, b.term), b.type, x.grade);
              break;
            }
          }
        }
        break;
      }
      case 10: {  // fork
        if (calc != calculus::gcc && calc != calculus::gmcc) break;
        if (x.type->kind != type_kind::modal) break;
        std::vector<std::pair<Grade, Grade>> facts;
        for (Grade m1 : alg_.elements())
          for (Grade m2 : alg_.elements())
            if (alg_.op(m1, m2) == x.type->grade) facts.push_back({m1, m2});
        if (facts.empty()) break;
        auto [m1, m2] = facts[static_cast<std::size_t>(pick(static_cast<int>(facts.size())))];
        push(mk::fork(m1, m2, x.term), t_modal(m1, t_modal(m2, x.type->right)), x.grade);
        break;
      }
      case 11: {  // up
        if (calc == calculus::dcc || calc == calculus::dcce || calc == calculus::lcirc) break;
        if (calc == calculus::gmcce) {
          // judgement-level coercion
          for (Grade g2 : alg_.elements())
            if (alg_.leq(*x.grade, g2) && !(g2 == *x.grade)) {
              push(mk::up(*x.grade, g2, x.term), x.type, g2);
              break;
            }
          break;
        }
        if (x.type->kind != type_kind::modal) break;
        std::vector<Grade> ups;
        for (Grade g2 : alg_.elements())
          if (alg_.leq(x.type->grade, g2)) ups.push_back(g2);
        if (ups.empty()) break;
        Grade g2 = ups[static_cast<std::size_t>(pick(static_cast<int>(ups.size())))];
        push(mk::up(x.type->grade, g2, x.term), t_modal(g2, x.type->right), x.grade);
        break;
      }
      default:
        break;
    }
  }
  return pool;
}

// Bounded-depth helper so lambda bodies and bind bodies do not recurse
// without end.
std::vector<GenItem> TermGen::pool_inner(calculus calc, const Context& ctx, int steps) {
  if (steps <= 0) steps = 1;
  if (inner_depth_ >= 2) steps = 1;
  inner_depth_++;
  auto out = pool(calc, ctx, steps);
  inner_depth_--;
  return out;
}

GenItem TermGen::random_term(calculus calc, const Context& ctx, int steps) {
  auto p = pool(calc, ctx, steps);
  // prefer the later (larger) entries
  std::size_t lo = p.size() > 8 ? p.size() / 2 : 0;
  return p[lo + static_cast<std::size_t>(pick(static_cast<int>(p.size() - lo)))];
}

TermPtr TermGen::term_of_type(calculus calc, const Context& ctx, const TypePtr& type, int steps,
                              std::optional<Grade> grade) {
  auto p = pool(calc, ctx, steps);
  std::vector<const GenItem*> hits;
  for (const auto& item : p) {
    if (!type_equal(item.type, type)) continue;
    if (grade && !(item.grade && *item.grade == *grade)) continue;
    hits.push_back(&item);
  }
  if (!hits.empty()) return hits[static_cast<std::size_t>(pick(static_cast<int>(hits.size())))]->term;
  return closed_inhabitant(calc, type);
}

TermGen::NiDcceTriple TermGen::ni_dcce_triple(bool modal_result) {
  if (!alg_.is_semilattice())
    fail(errc::requires_semilattice, "noninterference trials need a semilattice");
  // a level that is not bottom, and for the modal variant a result level it
  // does not flow into
  std::vector<Grade> ls;
  for (Grade g : alg_.elements())
    if (!alg_.leq(g, alg_.bottom())) ls.push_back(g);
  Grade l = ls[static_cast<std::size_t>(pick(static_cast<int>(ls.size())))];

  Grade result_level = alg_.bottom();
  if (modal_result) {
    std::vector<Grade> rs;
    for (Grade g : alg_.elements())
      if (!alg_.leq(l, g)) rs.push_back(g);
    if (rs.empty()) return ni_dcce_triple(false);
    result_level = rs[static_cast<std::size_t>(pick(static_cast<int>(rs.size())))];
  }

  // a protected argument type: a few tries at random, else the sure thing
  TypePtr arg;
  for (int tries = 0; tries < 16 && !arg; tries++) {
    TypePtr cand = t_modal(l, random_type(2));
    if (protected_at(alg_, protection_mode::extended_dcce, l, cand)) arg = cand;
  }
  if (!arg) arg = t_modal(l, t_bool());

  TypePtr result = modal_result ? t_modal(result_level, t_bool()) : t_bool();
  Context inner;
  inner.push("x", arg);
  TermPtr body = term_of_type(calculus::dcce, inner, result, 24);
  TermPtr f = mk::lam("x", arg, body);

  Context empty;
  TermPtr a1 = term_of_type(calculus::dcce, empty, arg, 12);
  TermPtr a2 = term_of_type(calculus::dcce, empty, arg, 12);
  return {f, a1, a2, l, arg};
}

TermGen::NiLcircTriple TermGen::ni_lcirc_triple() {
  TypePtr inner_ty;
  switch (pick(3)) {
    case 0: inner_ty = t_bool(); break;
    case 1: inner_ty = t_unit(); break;
    default: inner_ty = t_fun(t_bool(), t_bool()); break;
  }
  TypePtr arg = t_modal(Grade{1}, inner_ty);
  Context inner;
  inner.push("x", Grade{0}, arg);
  TermPtr body = term_of_type(calculus::lcirc, inner, t_bool(), 24, Grade{0});
  TermPtr f = mk::lam("x", arg, body);

  Context stage1;
  TermPtr b1 = mk::next(term_of_type(calculus::lcirc, stage1, inner_ty, 10, Grade{1}));
  TermPtr b2 = mk::next(term_of_type(calculus::lcirc, stage1, inner_ty, 10, Grade{1}));
  return {f, b1, b2, arg};
}

namespace {

// all positions in t, as paths of child selectors
void collect_paths(const TermPtr& t, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  int which = 0;
  for (TermPtr Term::*child : {&Term::a, &Term::b, &Term::c}) {
    const TermPtr& c = (*t).*child;
    if (c) {
      cur.push_back(which);
      collect_paths(c, cur, out);
      cur.pop_back();
    }
    which++;
  }
}

TermPtr get_at(const TermPtr& t, const std::vector<int>& path, std::size_t i = 0) {
  if (i == path.size()) return t;
  const TermPtr& c = path[i] == 0 ? t->a : (path[i] == 1 ? t->b : t->c);
  return get_at(c, path, i + 1);
}

TermPtr replace_at(const TermPtr& t, const std::vector<int>& path, const TermPtr& repl,
                   std::size_t i = 0) {
  if (i == path.size()) return repl;
  auto n = std::make_shared<Term>(*t);
  TermPtr Term::*child = path[i] == 0 ? &Term::a : (path[i] == 1 ? &Term::b : &Term::c);
  (*n).*child = replace_at((*t).*child, path, repl, i + 1);
  return n;
}

}  // namespace

TermPtr shrink_term(const TermPtr& t, const std::function<bool(const TermPtr&)>& still_failing) {
  TermPtr cur = t;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    std::vector<std::vector<int>> paths;
    std::vector<int> scratch;
    collect_paths(cur, scratch, paths);
    for (const auto& path : paths) {
      if (path.empty()) continue;
      TermPtr sub = get_at(cur, path);
      for (const TermPtr& repl : {mk::unit(), mk::tru(), mk::fls(), sub->a, sub->b}) {
        if (!repl || repl == sub) continue;
        if (term_size(repl) >= term_size(sub)) continue;
        TermPtr cand = replace_at(cur, path, repl);
        bool fails = false;
        try {
          fails = still_failing(cand);
        } catch (const error&) {
          fails = false;  // replacement broke typing; not a valid shrink
        }
        if (fails) {
          cur = cand;
          progressed = true;
          break;
        }
      }
      if (progressed) break;
    }
  }
  return cur;
}

}  // namespace depcalc
