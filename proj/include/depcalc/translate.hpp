#ifndef DEPCALC_TRANSLATE_HPP
#define DEPCALC_TRANSLATE_HPP

#include "depcalc/dcc.hpp"

namespace depcalc {

// The four calculus translations. Sources must type-check; the translations
// run over the typing derivation, so NotWellTyped surfaces as the underlying
// checker error. Types are preserved on the nose: the modal constructor is
// shared between the calculi.

// Union calculus (monadic+comonadic) into the dependency calculus:
//   ret a        -> eta[bot] a
//   extr a       -> bind[bot] x = a in x
//   lift[l] f    -> \x. bind[l] y = x in eta[l] (f y)
//   join[l1,l2]  -> bind[l1] x = a in bind[l2] y = x in eta[l1 v l2] y
//   fork[l1,l2]  -> bind[l1 v l2] x = a in eta[l1] (eta[l2] x)
//   up[l1,l2] a  -> bind[l1] x = a in eta[l2] x
TermPtr overline(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t);

// Dependency calculus back into the union calculus:
//   eta[l] a          -> up[bot,l] (ret a)
//   bind[l] x=a in b  -> j ((lift[l] (\x. b)) a), j from the protection
//                        derivation of the bind's result type
TermPtr underline(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t);

// Union calculus into the graded-judgement calculus (target judgement at
// bottom, context graded at bottom):
//   ret a        -> split[bot] a          extr a -> merge[bot] a
//   join[l1,l2]  -> split[l1 v l2] (merge[l2] (merge[l1] a))
//   fork[l1,l2]  -> split[l1] (split[l2] (merge[l1 v l2] a))
//   lift[l] f    -> \x. split[l] (f (merge[l] x))
//   up[l1,l2] a  -> split[l2] (merge[l1] a)
TermPtr tilde(const GradeAlgebra& alg, const Context& ctx, const TermPtr& t);

// Staging calculus into the graded-judgement calculus over the naturals:
//   next a -> split[1] a      prev a -> merge[1] a
TermPtr hat(const Context& ctx, const TermPtr& t, Grade time);

// Context at a uniform grade (for the tilde target judgement).
Context grade_context(const Context& ctx, Grade g);

}  // namespace depcalc

#endif
