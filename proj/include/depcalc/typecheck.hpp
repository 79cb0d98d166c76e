#ifndef DEPCALC_TYPECHECK_HPP
#define DEPCALC_TYPECHECK_HPP

#include "depcalc/ast.hpp"

namespace depcalc {

// A checked judgement, as reported by the front end.
struct Judgement {
  calculus calc;
  Context ctx;
  TermPtr term;
  std::optional<Grade> grade;  // lcirc / gmcce only
  TypePtr type;
};

// Type inference for the ungraded modal calculi (the graded-monadic one, the
// graded-comonadic one, and their union). Synthesis is syntax-directed;
// injections, aborts and unannotated lambdas cannot synthesize and report
// MissingAnnotation. check_core pushes an expected type inward, so those
// forms are fine anywhere the type is forced.
TypePtr infer_core(const GradeAlgebra& alg, calculus calc, const Context& ctx, const TermPtr& t);
void check_core(const GradeAlgebra& alg, calculus calc, const Context& ctx, const TermPtr& t,
                const TypePtr& expected);

}  // namespace depcalc

#endif
