#include "depcalc/oracle.hpp"

#include <unordered_map>

namespace depcalc {

namespace {

struct ProtectionSearch {
  const GradeAlgebra& alg;
  protection_mode mode;
  // per type: one small cache cell per (level, depth); -1 unknown
  std::unordered_map<const Type*, std::vector<signed char>> memo;
  std::size_t levels;
  int max_depth;

  ProtectionSearch(const GradeAlgebra& a, protection_mode m, int d)
      : alg(a), mode(m), levels(a.size()), max_depth(d) {}

  bool search(Grade l, const TypePtr& a, int depth) {
    if (depth <= 0) return false;
    auto& cell = memo[a.get()];
    if (cell.empty()) cell.assign(levels * static_cast<std::size_t>(max_depth + 1), -1);
    std::size_t key = l.v * static_cast<std::size_t>(max_depth + 1) + static_cast<std::size_t>(depth);
    if (cell[key] >= 0) return cell[key] != 0;
    bool r = derive(l, a, depth);
    cell[key] = r ? 1 : 0;
    return r;
  }

  bool derive(Grade l, const TypePtr& a, int depth) {
    if (mode == protection_mode::extended_dcce && l == alg.bottom()) return true;  // bottom protects everything
    switch (a->kind) {
      case type_kind::prod:  // both components
        if (search(l, a->left, depth - 1) && search(l, a->right, depth - 1)) return true;
        break;
      case type_kind::fun:  // the codomain
        if (search(l, a->right, depth - 1)) return true;
        break;
      case type_kind::modal:
        if (alg.leq(l, a->grade)) return true;            // the layer dominates
        if (search(l, a->right, depth - 1)) return true;  // the body is already protected
        break;
      default:
        break;
    }
    if (mode == protection_mode::extended_dcce) {  // combine two protecting levels
      for (Grade l1 : alg.elements())
        for (Grade l2 : alg.elements()) {
          if (!alg.leq(l, alg.op(l1, l2))) continue;
          if (search(l1, a, depth - 1) && search(l2, a, depth - 1)) return true;
        }
    }
    return false;
  }
};

using TypeSet = std::vector<TypePtr>;

void add_type(TypeSet& s, const TypePtr& t) {
  for (const auto& u : s)
    if (type_equal(u, t)) return;
  s.push_back(t);
}

struct CoreTypingSearch {
  const GradeAlgebra& alg;
  calculus calc;
  const TypeSet& pool;

  TypeSet derive(Context& ctx, const TermPtr& t, int depth) {
    TypeSet out;
    if (depth <= 0) return out;
    switch (t->kind) {
      case term_kind::var: {
        const CtxEntry* e = ctx.lookup(t->index);
        if (e) add_type(out, e->type);
        break;
      }
      case term_kind::unit:
        add_type(out, t_unit());
        break;
      case term_kind::lam: {
        if (!t->annot) break;
        ctx.push(t->hint, *t->annot);
        for (const auto& b : derive(ctx, t->a, depth - 1)) add_type(out, t_fun(*t->annot, b));
        ctx.pop();
        break;
      }
      case term_kind::app: {
        TypeSet fs = derive(ctx, t->a, depth - 1);
        TypeSet as = derive(ctx, t->b, depth - 1);
        for (const auto& f : fs) {
          if (f->kind != type_kind::fun) continue;
          for (const auto& a : as)
            if (type_equal(f->left, a)) add_type(out, f->right);
        }
        break;
      }
      case term_kind::pair: {
        for (const auto& a : derive(ctx, t->a, depth - 1))
          for (const auto& b : derive(ctx, t->b, depth - 1)) add_type(out, t_prod(a, b));
        break;
      }
      case term_kind::proj: {
        for (const auto& p : derive(ctx, t->a, depth - 1))
          if (p->kind == type_kind::prod) add_type(out, t->index == 1 ? p->left : p->right);
        break;
      }
      case term_kind::inj: {
        for (const auto& a : derive(ctx, t->a, depth - 1))
          for (const auto& other : pool)
            add_type(out, t->index == 1 ? t_sum(a, other) : t_sum(other, a));
        break;
      }
      case term_kind::abort: {
        for (const auto& a : derive(ctx, t->a, depth - 1))
          if (a->kind == type_kind::void_)
            for (const auto& target : pool) add_type(out, target);
        break;
      }
      case term_kind::case_: {
        TypeSet ss = derive(ctx, t->a, depth - 1);
        TypeSet b1 = derive(ctx, t->b, depth - 1);
        TypeSet b2 = derive(ctx, t->c, depth - 1);
        for (const auto& s : ss) {
          if (s->kind != type_kind::sum) continue;
          for (const auto& f1 : b1) {
            if (f1->kind != type_kind::fun || !type_equal(f1->left, s->left)) continue;
            for (const auto& f2 : b2)
              if (f2->kind == type_kind::fun && type_equal(f2->left, s->right) &&
                  type_equal(f2->right, f1->right))
                add_type(out, f1->right);
          }
        }
        break;
      }
      case term_kind::ret:
        if (calc == calculus::gmc || calc == calculus::gmcc)
          for (const auto& a : derive(ctx, t->a, depth - 1)) add_type(out, t_modal(alg.unit(), a));
        break;
      case term_kind::extr:
        if (calc == calculus::gcc || calc == calculus::gmcc)
          for (const auto& a : derive(ctx, t->a, depth - 1))
            if (a->kind == type_kind::modal && a->grade == alg.unit()) add_type(out, a->right);
        break;
      case term_kind::lift:
        if (calc != calculus::dcc && calc != calculus::dcce)
          for (const auto& f : derive(ctx, t->a, depth - 1))
            if (f->kind == type_kind::fun)
              add_type(out, t_fun(t_modal(t->g1, f->left), t_modal(t->g1, f->right)));
        break;
      case term_kind::join:
        if (calc == calculus::gmc || calc == calculus::gmcc)
          for (const auto& a : derive(ctx, t->a, depth - 1))
            if (a->kind == type_kind::modal && a->right->kind == type_kind::modal &&
                a->grade == t->g1 && a->right->grade == t->g2)
              add_type(out, t_modal(alg.op(t->g1, t->g2), a->right->right));
        break;
      case term_kind::fork:
        if (calc == calculus::gcc || calc == calculus::gmcc)
          for (const auto& a : derive(ctx, t->a, depth - 1))
            if (a->kind == type_kind::modal && a->grade == alg.op(t->g1, t->g2))
              add_type(out, t_modal(t->g1, t_modal(t->g2, a->right)));
        break;
      case term_kind::up:
        if (calc != calculus::dcc && calc != calculus::dcce && alg.leq(t->g1, t->g2))
          for (const auto& a : derive(ctx, t->a, depth - 1))
            if (a->kind == type_kind::modal && a->grade == t->g1)
              add_type(out, t_modal(t->g2, a->right));
        break;
      default:
        break;
    }
    return out;
  }
};

using GradedSet = std::vector<std::pair<Grade, TypePtr>>;

void add_graded(GradedSet& s, Grade g, const TypePtr& t) {
  for (const auto& [h, u] : s)
    if (h == g && type_equal(u, t)) return;
  s.push_back({g, t});
}

struct GmcceTypingSearch {
  const GradeAlgebra& alg;
  const TypeSet& pool;

  // declarative subsumption: anything derivable at m is derivable above m
  void close_up(GradedSet& s) const {
    for (std::size_t i = 0; i < s.size(); i++)
      for (Grade m : alg.elements())
        if (alg.leq(s[i].first, m)) add_graded(s, m, s[i].second);
  }

  GradedSet derive(Context& ctx, const TermPtr& t, int depth) {
    GradedSet out;
    if (depth <= 0) return out;
    switch (t->kind) {
      case term_kind::var: {
        const CtxEntry* e = ctx.lookup(t->index);
        if (e && e->grade) add_graded(out, *e->grade, e->type);
        break;
      }
      case term_kind::unit:
        for (Grade m : alg.elements()) add_graded(out, m, t_unit());
        break;
      case term_kind::lam: {
        if (!t->annot) break;
        for (Grade m : alg.elements()) {
          ctx.push(t->hint, m, *t->annot);
          for (const auto& [mb, b] : derive(ctx, t->a, depth - 1))
            if (mb == m) add_graded(out, m, t_fun(*t->annot, b));
          ctx.pop();
        }
        break;
      }
      case term_kind::app: {
        GradedSet fs = derive(ctx, t->a, depth - 1);
        GradedSet as = derive(ctx, t->b, depth - 1);
        for (const auto& [mf, f] : fs) {
          if (f->kind != type_kind::fun) continue;
          for (const auto& [ma, a] : as)
            if (ma == mf && type_equal(f->left, a)) add_graded(out, mf, f->right);
        }
        break;
      }
      case term_kind::pair: {
        for (const auto& [ma, a] : derive(ctx, t->a, depth - 1))
          for (const auto& [mb, b] : derive(ctx, t->b, depth - 1))
            if (ma == mb) add_graded(out, ma, t_prod(a, b));
        break;
      }
      case term_kind::proj: {
        for (const auto& [m, p] : derive(ctx, t->a, depth - 1))
          if (p->kind == type_kind::prod) add_graded(out, m, t->index == 1 ? p->left : p->right);
        break;
      }
      case term_kind::inj: {
        for (const auto& [m, a] : derive(ctx, t->a, depth - 1))
          for (const auto& other : pool)
            add_graded(out, m, t->index == 1 ? t_sum(a, other) : t_sum(other, a));
        break;
      }
      case term_kind::case_: {
        GradedSet ss = derive(ctx, t->a, depth - 1);
        GradedSet b1 = derive(ctx, t->b, depth - 1);
        GradedSet b2 = derive(ctx, t->c, depth - 1);
        for (const auto& [ms, s] : ss) {
          if (s->kind != type_kind::sum) continue;
          for (const auto& [m1, f1] : b1) {
            if (m1 != ms || f1->kind != type_kind::fun || !type_equal(f1->left, s->left)) continue;
            for (const auto& [m2, f2] : b2)
              if (m2 == ms && f2->kind == type_kind::fun && type_equal(f2->left, s->right) &&
                  type_equal(f2->right, f1->right))
                add_graded(out, ms, f1->right);
          }
        }
        break;
      }
      case term_kind::split: {
        for (const auto& [mi, a] : derive(ctx, t->a, depth - 1))
          for (Grade m1 : alg.elements())
            if (alg.op(m1, t->g1) == mi) add_graded(out, m1, t_modal(t->g1, a));
        break;
      }
      case term_kind::merge: {
        for (const auto& [m1, a] : derive(ctx, t->a, depth - 1))
          if (a->kind == type_kind::modal && a->grade == t->g1)
            add_graded(out, alg.op(m1, t->g1), a->right);
        break;
      }
      case term_kind::up: {
        if (!alg.leq(t->g1, t->g2)) break;
        for (const auto& [m, a] : derive(ctx, t->a, depth - 1))
          if (m == t->g1) add_graded(out, t->g2, a);
        break;
      }
      default:
        break;
    }
    close_up(out);
    return out;
  }
};

}  // namespace

bool protection_search(const GradeAlgebra& alg, protection_mode mode, Grade l, const TypePtr& a,
                       int depth) {
  if (alg.kind() == algebra_kind::naturals)
    fail(errc::infinite_carrier, "the protection oracle needs a finite algebra");
  if (!alg.is_semilattice())
    fail(errc::requires_semilattice, "the protection oracle needs a join-semilattice");
  ProtectionSearch s(alg, mode, depth);
  return s.search(l, a, depth);
}

struct ProtectionOracle::Impl {
  ProtectionSearch search;
  Impl(const GradeAlgebra& alg, protection_mode mode, int depth) : search(alg, mode, depth) {}
};

ProtectionOracle::ProtectionOracle(const GradeAlgebra& alg, protection_mode mode, int max_depth)
    : impl_(std::make_unique<Impl>(alg, mode, max_depth)) {
  if (alg.kind() == algebra_kind::naturals)
    fail(errc::infinite_carrier, "the protection oracle needs a finite algebra");
  if (!alg.is_semilattice())
    fail(errc::requires_semilattice, "the protection oracle needs a join-semilattice");
}

ProtectionOracle::~ProtectionOracle() = default;

bool ProtectionOracle::search(Grade l, const TypePtr& a, int depth) {
  return impl_->search.search(l, a, depth);
}

std::vector<TypePtr> typing_search(const GradeAlgebra& alg, calculus calc, const Context& ctx,
                                   const TermPtr& t, int depth, const std::vector<TypePtr>& pool) {
  TypeSet p = pool;
  if (p.empty()) p.push_back(t_unit());
  Context c = ctx;
  CoreTypingSearch s{alg, calc, p};
  return s.derive(c, t, depth);
}

std::vector<std::pair<Grade, TypePtr>> typing_search_gmcce(const GradeAlgebra& alg,
                                                           const Context& ctx, const TermPtr& t,
                                                           int depth,
                                                           const std::vector<TypePtr>& pool) {
  if (alg.kind() == algebra_kind::naturals)
    fail(errc::infinite_carrier, "the graded typing oracle needs a finite algebra");
  TypeSet p = pool;
  if (p.empty()) p.push_back(t_unit());
  Context c = ctx;
  GmcceTypingSearch s{alg, p};
  return s.derive(c, t, depth);
}

std::vector<TypePtr> enumerate_types(const GradeAlgebra& alg, int depth) {
  std::vector<std::vector<TypePtr>> exact(static_cast<std::size_t>(depth) + 1);
  if (depth >= 1) exact[1].push_back(t_unit());
  for (int d = 2; d <= depth; d++) {
    auto& out = exact[static_cast<std::size_t>(d)];
    // binary nodes where the deeper child has depth exactly d-1
    for (int i = 1; i <= d - 1; i++)
      for (int j = 1; j <= d - 1; j++) {
        if (std::max(i, j) != d - 1) continue;
        for (const auto& a : exact[static_cast<std::size_t>(i)])
          for (const auto& b : exact[static_cast<std::size_t>(j)]) {
            out.push_back(t_prod(a, b));
            out.push_back(t_fun(a, b));
          }
      }
    for (Grade g : alg.elements())
      for (const auto& a : exact[static_cast<std::size_t>(d - 1)]) out.push_back(t_modal(g, a));
  }
  std::vector<TypePtr> all;
  for (auto& bucket : exact)
    for (auto& t : bucket) all.push_back(std::move(t));
  return all;
}

}  // namespace depcalc
