#ifndef DEPCALC_AST_HPP
#define DEPCALC_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "depcalc/algebra.hpp"

namespace depcalc {

// ---------------------------------------------------------------------------
// Types. One graded modal constructor serves all calculi; the checker in use
// decides how it is read (T_m, D_m, S_m, the DCC T_l, or the circle of the
// staging calculus, which is Modal at grade 1 over the naturals).
// ---------------------------------------------------------------------------

enum class type_kind { unit, void_, base, prod, sum, fun, modal };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  type_kind kind;
  std::string base_name;  // base
  Grade grade{};          // modal
  TypePtr left, right;    // prod/sum/fun; modal body lives in `right`
};

TypePtr t_unit();
TypePtr t_void();
TypePtr t_base(std::string name);
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_sum(TypePtr a, TypePtr b);
TypePtr t_fun(TypePtr a, TypePtr b);
TypePtr t_modal(Grade g, TypePtr body);
TypePtr t_bool();  // Sum(Unit, Unit)

bool type_equal(const TypePtr& a, const TypePtr& b);
bool is_bool(const TypePtr& t);
std::size_t type_depth(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms. Nameless (de Bruijn) binding internally; surface names survive only
// as printing hints. Each calculus admits a subset of the constructors; the
// checkers enforce admission, the tree does not.
// ---------------------------------------------------------------------------

enum class term_kind {
  var,    // index
  lam,    // hint, annot?, a = body
  app,    // a b
  pair,   // a b
  proj,   // index in {1,2}, a
  inj,    // index in {1,2}, a
  case_,  // a = scrutinee, b c = branch functions
  abort,  // a
  unit,
  ret,    // a                    (graded monad unit, at the monoid unit)
  extr,   // a                    (graded comonad counit)
  lift,   // g1, a = function     (functorial action)
  join,   // g1 g2, a
  fork,   // g1 g2, a
  up,     // g1 g2, a
  eta,    // g1, a                (DCC intro)
  bind,   // g1, hint, a = bound, b = body
  next,   // a                    (staging)
  prev,   // a
  split,  // g1, a                (graded judgement intro)
  merge,  // g1, a
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  term_kind kind;
  int index = 0;                  // var: de Bruijn index; proj/inj: 1 or 2
  std::string hint;               // lam/bind binder name, var print hint
  std::optional<TypePtr> annot;   // lam only
  Grade g1{}, g2{};
  TermPtr a, b, c;
  int line = 0, col = 0;
};

namespace mk {
TermPtr var(int index, std::string hint = {});
TermPtr lam(std::string hint, std::optional<TypePtr> annot, TermPtr body);
TermPtr app(TermPtr f, TermPtr arg);
TermPtr pair(TermPtr a, TermPtr b);
TermPtr proj(int i, TermPtr a);
TermPtr inj(int i, TermPtr a);
TermPtr case_(TermPtr scrut, TermPtr b1, TermPtr b2);
TermPtr abort(TermPtr a);
TermPtr unit();
TermPtr tru();   // inj1 unit
TermPtr fls();   // inj2 unit
TermPtr ret(TermPtr a);
TermPtr extr(TermPtr a);
TermPtr lift(Grade m, TermPtr f);
TermPtr join(Grade m1, Grade m2, TermPtr a);
TermPtr fork(Grade m1, Grade m2, TermPtr a);
TermPtr up(Grade m1, Grade m2, TermPtr a);
TermPtr eta(Grade l, TermPtr a);
TermPtr bind(Grade l, std::string hint, TermPtr bound, TermPtr body);
TermPtr next(TermPtr a);
TermPtr prev(TermPtr a);
TermPtr split(Grade m, TermPtr a);
TermPtr merge(Grade m, TermPtr a);
}  // namespace mk

// Identical as nameless terms: indices, constructor kinds and grades must
// match; binder hints and positions are ignored. Lambda annotations must
// agree (present on both and equal, or absent on both).
bool alpha_equal(const TermPtr& a, const TermPtr& b);
// Same, but lambda annotations are disregarded. Used when comparing rewrite
// results, where one side may carry annotations the other lost.
bool alpha_equal_mod_annot(const TermPtr& a, const TermPtr& b);

// de Bruijn plumbing.
TermPtr shift(const TermPtr& t, int by, int cutoff = 0);
// Capture-avoiding substitution of `s` for index `j` (binders adjust both).
TermPtr subst(const TermPtr& t, int j, const TermPtr& s);
bool has_free_var(const TermPtr& t, int index);
bool is_closed(const TermPtr& t);
std::size_t term_size(const TermPtr& t);

// The erasure map to the plain lambda fragment: modal constructors vanish,
// bind substitutes its erased bound term into its erased body, and lambda
// annotations are dropped.
TermPtr erase(const TermPtr& t);
bool is_erased_fragment(const TermPtr& t);

// ---------------------------------------------------------------------------
// Typing contexts. Entries may carry a grade (graded contexts of the staging
// calculi); index 0 of a Var counts from the innermost end.
// ---------------------------------------------------------------------------

struct CtxEntry {
  std::string name;
  TypePtr type;
  std::optional<Grade> grade;
};

class Context {
public:
  Context() = default;
  void push(std::string name, TypePtr type) { entries_.push_back({std::move(name), std::move(type), std::nullopt}); }
  void push(std::string name, Grade g, TypePtr type) { entries_.push_back({std::move(name), std::move(type), g}); }
  void pop() { entries_.pop_back(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // nullptr when the index is out of range
  const CtxEntry* lookup(int index) const {
    if (index < 0 || static_cast<std::size_t>(index) >= entries_.size()) return nullptr;
    return &entries_[entries_.size() - 1 - static_cast<std::size_t>(index)];
  }
  const std::vector<CtxEntry>& entries() const { return entries_; }
  std::optional<int> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); i++) {
      std::size_t j = entries_.size() - 1 - i;
      if (entries_[j].name == name) return static_cast<int>(i);
    }
    return std::nullopt;
  }

private:
  std::vector<CtxEntry> entries_;
};

enum class calculus { gmc, gcc, gmcc, dcc, dcce, lcirc, gmcce };

const char* calculus_name(calculus c);
std::optional<calculus> calculus_by_name(const std::string& name);
// Graded judgements (ctx entries carry grades, judgement carries a grade)?
bool calculus_graded(calculus c);

}  // namespace depcalc

#endif
