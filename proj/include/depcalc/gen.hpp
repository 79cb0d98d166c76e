#ifndef DEPCALC_GEN_HPP
#define DEPCALC_GEN_HPP

#include <functional>
#include <random>

#include "depcalc/dcc.hpp"

namespace depcalc {

// Random well-typed terms, built bottom-up so generation never fails. Each
// item records the judgement it was built at (grade present for the graded
// calculi, where it is a time instant over the naturals).
struct GenItem {
  TermPtr term;
  TypePtr type;
  std::optional<Grade> grade;
};

class TermGen {
public:
  TermGen(const GradeAlgebra& alg, std::uint64_t seed) : alg_(alg), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  // A random inhabited type (no Void); modal layers use random grades.
  TypePtr random_type(int depth);

  // A pool of well-typed terms over `ctx` grown by `steps` random
  // constructor applications. All items type-check in `calc` at their
  // recorded judgement.
  std::vector<GenItem> pool(calculus calc, const Context& ctx, int steps);

  // One random pool item (never empty: unit is always derivable).
  GenItem random_term(calculus calc, const Context& ctx, int steps);

  // A term of the requested type: a pool hit when one exists, otherwise the
  // canonical introduction-form inhabitant. For graded calculi the judgement
  // grade must be given.
  TermPtr term_of_type(calculus calc, const Context& ctx, const TypePtr& type, int steps,
                       std::optional<Grade> grade = std::nullopt);

  // Introduction-form inhabitant of an inhabited type (dependency calculus
  // uses eta for modal layers, the staging calculus uses next).
  TermPtr closed_inhabitant(calculus calc, const TypePtr& type);

  // Noninterference trial inputs. f : A -> Bool (or A -> S[l'] Bool with
  // not leq(l, l')), l protects A, and a1, a2 : A closed.
  struct NiDcceTriple {
    TermPtr f, a1, a2;
    Grade l;
    TypePtr arg_type;
  };
  NiDcceTriple ni_dcce_triple(bool modal_result);

  // f :^0 O A -> Bool with b1, b2 :^0 O A closed.
  struct NiLcircTriple {
    TermPtr f, b1, b2;
    TypePtr arg_type;
  };
  NiLcircTriple ni_lcirc_triple();

private:
  int pick(int n);  // uniform 0..n-1
  Grade random_grade();
  Grade random_time();
  TypePtr menu_type();
  std::vector<GenItem> pool_inner(calculus calc, const Context& ctx, int steps);

  const GradeAlgebra& alg_;
  std::mt19937_64 rng_;
  int inner_depth_ = 0;
};

// Greedy structural shrinking: repeatedly replaces subterms of `t` with
// smaller closed stand-ins while `still_failing` holds for the result.
TermPtr shrink_term(const TermPtr& t, const std::function<bool(const TermPtr&)>& still_failing);

}  // namespace depcalc

#endif
