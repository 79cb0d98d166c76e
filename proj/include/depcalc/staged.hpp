#ifndef DEPCALC_STAGED_HPP
#define DEPCALC_STAGED_HPP

#include "depcalc/typecheck.hpp"

namespace depcalc {

// Checker for the staging calculus over the naturals. Judgements carry a
// time instant; context entries carry the time their variable becomes
// available. Lambda annotations are mandatory. The circle type is the modal
// constructor at grade 1.
TypePtr infer_lcirc(const Context& ctx, const TermPtr& t, Grade time);
void check_lcirc(const Context& ctx, const TermPtr& t, Grade time, const TypePtr& expected);

// Checker for the graded-judgement calculus: lambda core plus split and
// merge, with graded contexts. Subsumption is applied only at variable and
// unit leaves; an explicit `up[m1,m2] e` re-checks e at m1 and yields m2.
// merge[m2] at target grade g searches the (finite) carrier for a factor m1
// with m1*m2 = g; over the naturals the factor is unique.
TypePtr infer_gmcce(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t, Grade grade);
void check_gmcce(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t, Grade grade,
                 const TypePtr& expected);

}  // namespace depcalc

#endif
